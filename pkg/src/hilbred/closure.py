"""Ratliff-Rush closure and integral closure verdicts.

Integral closure is computed exactly only for monomial ideals (Newton
polyhedron).  For other ideals we return verdicts backed by certificates:
an element of the Ratliff-Rush closure outside I, or an element g with I a
reduction of I + (g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .ideal import (
    Ideal,
    colon_poly,
    contains_poly,
    ideal_equals,
    ideal_intersect,
    ideal_power,
    monomials_of_degree,
)
from .reduction import NotAReduction, reduction_index
from .ring import Polynomial


class ClosureCapExceeded(RuntimeError):
    def __init__(self, message: str, chain: list[Ideal]):
        super().__init__(message)
        self.chain = chain


def colon_by_ideal_power(A: Ideal, I: Ideal, k: int) -> Ideal:
    """(A : I^k) as k successive colons by I."""
    out = A
    gens = list(I.minimal_gens()) if len(I.gens) > len(I.minimal_gens()) else list(I.gens)
    for _ in range(k):
        step = None
        for g in gens:
            c = colon_poly(out, g)
            step = c if step is None else ideal_intersect(step, c)
            if step.is_unit():
                break
        out = step
        if out.is_unit():
            break
    return out


def ratliff_rush_chain(I: Ideal, cap: int = 20) -> list[Ideal]:
    """(I^(n+1) : I^n) for n = 1, 2, ... until two consecutive terms agree."""
    chain: list[Ideal] = []
    for n in range(1, cap + 1):
        term = colon_by_ideal_power(ideal_power(I, n + 1), I, n)
        chain.append(term)
        if len(chain) >= 2 and ideal_equals(chain[-1], chain[-2]):
            return chain
    raise ClosureCapExceeded(f"Ratliff-Rush chain did not stabilize by n = {cap}", chain)


def ratliff_rush(I: Ideal, cap: int = 20) -> Ideal:
    return ratliff_rush_chain(I, cap)[-1]


# -- monomial integral closure ---------------------------------------------------


def _exponents(I: Ideal) -> list[tuple[int, ...]]:
    out = []
    for g in I.gens:
        if not g.is_monomial():
            raise ValueError("monomial_integral_closure needs monomial generators")
        out.append(next(iter(g.terms)))
    return out


def _det(rows: list[list[Fraction]]) -> Fraction:
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _normal(directions: list[tuple[int, ...]], n: int) -> tuple[int, ...]:
    # generalized cross product of n-1 vectors in Z^n
    comps = []
    for i in range(n):
        minor = [[Fraction(v[j]) for j in range(n) if j != i] for v in directions]
        comps.append((-1) ** i * _det(minor) if minor else Fraction(1))
    return tuple(int(c) for c in comps)


def newton_facets(points: Sequence[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Facet inequalities c.a >= b (c >= 0) of conv(points) + orthant."""
    pts = sorted(set(points))
    n = len(pts[0])
    if n == 1:
        return [((1,), min(p[0] for p in pts))]
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    facets = set()
    for base in pts:
        dirs = [tuple(a - b for a, b in zip(q, base)) for q in pts if q != base] + rays
        for combo in combinations(dirs, n - 1):
            c = _normal(list(combo), n)
            if not any(c):
                continue
            if any(x < 0 for x in c):
                if all(x <= 0 for x in c):
                    c = tuple(-x for x in c)
                else:
                    continue
            b = sum(x * y for x, y in zip(c, base))
            if all(sum(x * y for x, y in zip(c, q)) >= b for q in pts):
                from math import gcd

                g = 0
                for x in c + (b,):
                    g = gcd(g, abs(x))
                g = g or 1
                facets.add((tuple(x // g for x in c), b // g))
    return sorted(facets)


def in_newton_polyhedron(a: tuple[int, ...], facets) -> bool:
    return all(sum(x * y for x, y in zip(c, a)) >= b for c, b in facets)


def monomial_integral_closure(I: Ideal) -> Ideal:
    """Integral closure of a monomial ideal: monomials in the Newton polyhedron."""
    if not I.is_monomial():
        raise ValueError("monomial_integral_closure needs monomial generators")
    exps = _exponents(I)
    if not exps:
        return I
    facets = newton_facets(exps)
    n = I.ring.nvars
    box = [max(e[i] for e in exps) for i in range(n)]
    inside = [a for a in product(*(range(b + 1) for b in box)) if in_newton_polyhedron(a, facets)]
    minimal: list[tuple[int, ...]] = []
    for a in sorted(inside, key=sum):
        if not any(all(x <= y for x, y in zip(m, a)) for m in minimal):
            minimal.append(a)
    return Ideal(I.ring, [I.ring.monomial(a) for a in minimal])


# -- verdicts ----------------------------------------------------------------------


def _monomial_hull_facets(I: Ideal):
    exps = [m for g in I.gens for m in g.terms]
    return newton_facets(exps)


def integrality_witness_search(I: Ideal, deg_bound: int, r_max: int = 4):
    """First monomial g (by degree, then degrevlex) with g not in I and I a
    reduction of I + (g); returns ``(g, r)`` or ``None``.

    Monomials outside the Newton polyhedron of all exponents occurring in the
    generators are skipped: they are not integral over the monomial ideal
    containing I, hence not over I.
    """
    ring = I.ring
    if ring.relations:
        raise ValueError("witness search works in the polynomial ring only")
    facets = _monomial_hull_facets(I)
    order_I = min(g.min_degree() for g in I.gens)
    for deg in range(max(order_I, 1), deg_bound + 1):
        monos = sorted(monomials_of_degree(ring.nvars, deg),
                       key=lambda m: (sum(m),) + tuple(-e for e in reversed(m)), reverse=True)
        for m in monos:
            if not in_newton_polyhedron(m, facets):
                continue
            g = ring.monomial(m)
            if contains_poly(I, g):
                continue
            K = Ideal(ring, list(I.gens) + [g])
            try:
                red = reduction_index(K, I, r_max)
            except NotAReduction:
                continue
            return g, red.r
    return None


@dataclass
class ClosureReport:
    input: Ideal
    rr_closure: Ideal | None
    integrally_closed: str  # "closed", "not-closed", "unknown"
    method: str  # "monomial-exact", "rr-proxy", "witness-search"
    witness: Polynomial | None = None
    certificate: str = ""

    @property
    def closed(self) -> bool | None:
        return {"closed": True, "not-closed": False}.get(self.integrally_closed)


def is_integrally_closed(I: Ideal, deg_bound: int = 8, r_max: int = 4,
                         rr_cap: int = 20) -> ClosureReport:
    if I.is_monomial():
        closure = monomial_integral_closure(I)
        rr = None
        if ideal_equals(closure, I):
            return ClosureReport(I, rr, "closed", "monomial-exact",
                                 certificate="Newton polyhedron lattice points all lie in I")
        for g in closure.gens:
            if not contains_poly(I, g):
                K = Ideal(I.ring, list(I.gens) + [g])
                red = reduction_index(K, I, r_max=30)
                return ClosureReport(I, rr, "not-closed", "monomial-exact", g,
                                     f"(I + (g))^{red.r + 1} = I (I + (g))^{red.r}")
        raise AssertionError("closure differs from I but no generator outside I")
    rr = ratliff_rush(I, rr_cap)
    if not ideal_equals(rr, I):
        for g in rr.minimal_gens():
            if not contains_poly(I, g):
                return ClosureReport(I, rr, "not-closed", "rr-proxy", g,
                                     "g lies in the Ratliff-Rush closure but not in I")
    hit = integrality_witness_search(I, deg_bound, r_max)
    if hit is not None:
        g, r = hit
        return ClosureReport(I, rr, "not-closed", "witness-search", g,
                             f"(I + (g))^{r + 1} = I (I + (g))^{r}")
    return ClosureReport(I, rr, "unknown", "witness-search",
                         certificate=f"no witness up to degree {deg_bound} with r_max {r_max}")


def rr_power_witness(I: Ideal, kmax: int, rr_cap: int = 20) -> int | None:
    """Least k <= kmax whose power I^k is not Ratliff-Rush closed."""
    for k in range(1, kmax + 1):
        Ik = ideal_power(I, k)
        term = colon_by_ideal_power(ideal_power(I, k + 1), I, 1)
        # (I^(k+1) : I) is inside the Ratliff-Rush closure of I^k
        if not ideal_equals(term, Ik):
            return k
        rr = _rr_of_power(I, k, rr_cap)
        if not ideal_equals(rr, Ik):
            return k
    return None


def _rr_of_power(I: Ideal, k: int, cap: int) -> Ideal:
    # RR closure of I^k = union over n of (I^(k+n) : I^n), an increasing chain
    prev = None
    for n in range(1, cap + 1):
        term = colon_by_ideal_power(ideal_power(I, k + n), I, n)
        if prev is not None and ideal_equals(term, prev):
            return term
        prev = term
    raise ClosureCapExceeded(f"Ratliff-Rush chain for I^{k} did not stabilize", [])
