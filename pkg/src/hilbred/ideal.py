"""Ideal calculus: sums, products, powers, intersections, colons, membership.

An :class:`Ideal` is a generator list in an :class:`AmbientRing`; when the
ring carries relations they are implicitly part of every ideal.  The reduced
degrevlex Groebner basis is computed at most once per ideal.

All lengths are lengths in the local ring at the origin.  For ideals whose
zero set is just the origin these agree with the global vector-space
dimensions; :func:`localize` replaces other ideals by one with the same
localization that has this property.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .groebner import (
    GroebnerBasis,
    buchberger,
    count_standard_monomials,
    normal_form,
)
from .ring import DEGREVLEX, AmbientRing, Polynomial, elimination


class NotMPrimary(ValueError):
    pass


class Ideal:
    """Ideal of ``ring`` generated by ``gens`` (plus the ring's relations)."""

    def __init__(self, ring: AmbientRing, gens: Iterable[Polynomial] = (), *, name: str | None = None):
        self.ring = ring
        self.gens: tuple[Polynomial, ...] = tuple(g.rehome(ring) for g in gens if g.terms)
        self.name = name

    @classmethod
    def from_strings(cls, ring: AmbientRing, texts: Sequence[str], name: str | None = None) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts], name=name)

    # basis -----------------------------------------------------------------
    @cached_property
    def basis(self) -> GroebnerBasis:
        gens = list(self.gens) + [r.rehome(self.ring) for r in self.ring.relations]
        return buchberger(gens, DEGREVLEX, ring=self.ring)

    def is_unit(self) -> bool:
        return self.basis.is_unit()

    def is_zero(self) -> bool:
        return not self.gens and not self.ring.relations

    def is_monomial(self) -> bool:
        return not self.ring.relations and all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens) and all(
            r.is_homogeneous() for r in self.ring.relations
        )

    def in_maximal_ideal(self) -> bool:
        return all(g.constant_term() == 0 for g in self.gens)

    def minimal_gens(self) -> tuple[Polynomial, ...]:
        """The reduced basis elements (a canonical generator list)."""
        return tuple(self.basis.elements)

    def __contains__(self, f: Polynomial) -> bool:
        return contains_poly(self, f)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equals(self, other)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(str(g) for g in self.basis.elements))))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def __repr__(self):
        body = ", ".join(str(g) for g in self.gens) or "0"
        label = f"{self.name} = " if self.name else ""
        return f"Ideal({label}({body}) in {self.ring!r})"


def unit_ideal(ring: AmbientRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def zero_ideal(ring: AmbientRing) -> Ideal:
    return Ideal(ring, [])


def monomials_of_degree(nvars: int, k: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), k):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def maximal_ideal_power(ring: AmbientRing, k: int) -> Ideal:
    if k <= 0:
        return unit_ideal(ring)
    return Ideal(ring, [ring.monomial(e) for e in monomials_of_degree(ring.nvars, k)])


def _same_ring(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring!r} vs {b.ring!r}")


def interreduce(ring: AmbientRing, gens: Iterable[Polynomial]) -> list[Polynomial]:
    """Cheap interreduction: minimal monomial generators, other generators
    stripped of terms lying in the monomial part, duplicates removed."""
    gens = [g for g in gens if g.terms]
    monos = sorted({next(iter(g.terms)) for g in gens if g.is_monomial()}, key=sum)
    minimal: list[tuple] = []
    for m in monos:
        if not any(all(a <= b for a, b in zip(h, m)) for h in minimal):
            minimal.append(m)
    out = [ring.monomial(m) for m in minimal]
    seen = set()
    for g in gens:
        if g.is_monomial():
            continue
        kept = {m: c for m, c in g.terms.items() if not any(all(a <= b for a, b in zip(h, m)) for h in minimal)}
        if not kept:
            continue
        h = Polynomial(ring, kept, clean=False).monic()
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    return Ideal(a.ring, interreduce(a.ring, a.gens + b.gens))


def _compact_gens(a: Ideal) -> tuple[Polynomial, ...]:
    if len(a.gens) <= 8:
        return a.gens
    if not a.ring.relations:
        return a.minimal_gens()
    # minimalize upstairs: reducing modulo the relations would make the generators dense
    base = a.ring.base
    return tuple(g.rehome(a.ring) for g in Ideal(base, [g.rehome(base) for g in a.gens]).minimal_gens())


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _same_ring(a, b)
    ga, gb = _compact_gens(a), _compact_gens(b)
    prods = [f * g for f in ga for g in gb]
    return Ideal(a.ring, interreduce(a.ring, prods))


_POWERS: dict[int, tuple[Ideal, list[Ideal]]] = {}


def ideal_power(a: Ideal, n: int) -> Ideal:
    """``a**n``; ``a**0`` is the unit ideal.  Powers of one ideal are built once."""
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return unit_ideal(a.ring)
    hit = _POWERS.get(id(a))
    if hit is None or hit[0] is not a:
        if len(_POWERS) > 256:
            _POWERS.clear()
        hit = (a, [a])
        _POWERS[id(a)] = hit
    ladder = hit[1]
    while len(ladder) < n:
        ladder.append(ideal_product(ladder[-1], a))
    return ladder[n - 1]


def ideal_equals(a: Ideal, b: Ideal) -> bool:
    _same_ring(a, b)
    return a.basis.elements == b.basis.elements


def contains_poly(a: Ideal, f: Polynomial) -> bool:
    return not normal_form(f.rehome(a.ring), a.basis).terms


def ideal_contains(a: Ideal, b: Ideal) -> bool:
    """``b`` is a subset of ``a``."""
    _same_ring(a, b)
    return all(contains_poly(a, g) for g in b.gens)


def _lift_with_t(f: Polynomial, ring: AmbientRing, t_coeff: dict) -> Polynomial:
    # f * (sum of c * t^k) in ring with t as variable 0
    terms = {}
    p = ring.characteristic
    for k, c in t_coeff.items():
        for m, v in f.terms.items():
            key = (k,) + m
            terms[key] = (terms.get(key, 0) + c * v) % p
    return Polynomial(ring, terms)


def ideal_intersect(a: Ideal, b: Ideal) -> Ideal:
    """``a ∩ b`` by eliminating t from t*a + (1-t)*b."""
    _same_ring(a, b)
    ring = a.ring
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    base = ring.base
    names = set(base.variables)
    t = "t"
    while t in names:
        t += "_"
    big = AmbientRing((t,) + base.variables, base.characteristic)
    rels = [r.rehome(base) for r in ring.relations]
    ga = [g.rehome(base) for g in a.basis.elements]
    gb = [g.rehome(base) for g in b.basis.elements]
    gens = [_lift_with_t(g, big, {1: 1}) for g in ga]
    gens += [_lift_with_t(g, big, {0: 1, 1: -1}) for g in gb]
    G = buchberger(gens, elimination(1), ring=big)
    out = []
    for g in G.elements:
        if all(m[0] == 0 for m in g.terms):
            out.append(Polynomial(base, {m[1:]: c for m, c in g.terms.items()}, clean=False))
    out += rels
    return Ideal(ring, out)


def colon_poly(a: Ideal, f: Polynomial) -> Ideal:
    """``(a : f)``, computed as ``(a ∩ (f)) / f``."""
    f = f.rehome(a.ring)
    if not f.terms:
        raise ValueError("colon by the zero polynomial")
    if contains_poly(a, f):
        return unit_ideal(a.ring)
    if f.total_degree() == 0:
        return a
    # in R/L: (a : f) is the image of ((a + L) : f), computed upstairs
    base = a.ring.base
    fb = f.rehome(base)
    upstairs = Ideal(base, [g.rehome(base) for g in a.basis.elements])
    inter = ideal_intersect(upstairs, Ideal(base, [fb]))
    quots = [g.divide_by(fb) for g in inter.gens if g.terms]
    return Ideal(a.ring, [q.rehome(a.ring) for q in quots])


def colon_ideal(a: Ideal, b: Ideal) -> Ideal:
    """``(a : b)`` as the intersection of ``(a : g)`` over generators ``g`` of ``b``."""
    _same_ring(a, b)
    gens = [g for g in b.basis.elements]
    if not gens:
        raise ValueError("colon by the zero ideal")
    if b.is_unit():
        return a
    result = None
    for g in gens:
        c = colon_poly(a, g)
        result = c if result is None else ideal_intersect(result, c)
        if result.is_unit():
            continue
    return result


def _pure_power_bounds(a: Ideal) -> list[int] | None:
    lms = a.basis.leading_monomials
    n = a.ring.nvars
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] > 0 and all(m[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    return bounds


def _origin_supported(a: Ideal, count: int) -> bool:
    if a.is_homogeneous():
        return True
    G = a.basis
    for i in range(a.ring.nvars):
        x = a.ring.gen(i)
        r = normal_form(x, G)
        steps = 1
        while r.terms:
            if steps > count:
                return False
            r = normal_form(r * x, G)
            steps += 1
    return True


def is_m_primary(a: Ideal) -> bool:
    """Finite colength with all of the zero set at the origin."""
    if a.is_unit():
        raise ValueError("the unit ideal is not proper")
    if not a.in_maximal_ideal():
        return False
    if _pure_power_bounds(a) is None:
        return False
    count = count_standard_monomials(a.basis)
    return _origin_supported(a, count)


def colength(a: Ideal) -> int:
    """Length of R/a (number of standard monomials)."""
    if a.is_unit():
        return 0
    count = count_standard_monomials(a.basis)
    if count is None:
        raise NotMPrimary("not m-primary: infinite colength")
    return count


def m_exponent(a: Ideal) -> int:
    """Least s with m^s contained in ``a`` (``a`` origin supported)."""
    if a.is_unit():
        return 0
    from .groebner import standard_monomials

    std = standard_monomials(a.basis)
    if std == "infinite":
        raise NotMPrimary("not m-primary")
    s = max(sum(m) for m in std) + 1
    while not all(contains_poly(a, a.ring.monomial(e)) for e in monomials_of_degree(a.ring.nvars, s)):
        s += 1
    return s


def localize(a: Ideal, start: int = 1, cap: int = 400) -> tuple[Ideal, int]:
    """Ideal with the same localization at the origin and no other zeros.

    Returns ``(a + m^N, N)`` for an ``N`` with m^N inside the localization of
    ``a`` (``N = 0`` when ``a`` is already origin supported).  The test is
    Nakayama's lemma: m^N inside a + m^(N+1) forces m^N inside a locally.
    """
    if _pure_power_bounds(a) is not None and _origin_supported(a, count_standard_monomials(a.basis)):
        return a, 0
    ring = a.ring
    N = max(start, 1)
    while N <= cap:
        trial = ideal_sum(a, maximal_ideal_power(ring, N + 1))
        if all(contains_poly(trial, ring.monomial(e)) for e in monomials_of_degree(ring.nvars, N)):
            return ideal_sum(a, maximal_ideal_power(ring, N)), N
        N += 1
    raise NotMPrimary(f"not m-primary in the local ring (no m^N with N <= {cap})")


def quotient_push(a: Ideal, relations: Sequence[Polynomial]) -> Ideal:
    """Image of ``a`` in R/(relations)."""
    if not relations:
        return a
    ring = a.ring.quotient(relations)
    return Ideal(ring, a.gens, name=a.name)
