"""Minimal reductions, reduction numbers and superficial elements."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .ideal import (
    Ideal,
    colength,
    colon_poly,
    contains_poly,
    ideal_contains,
    ideal_equals,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_m_primary,
    m_exponent,
    maximal_ideal_power,
    quotient_push,
)
from .ring import Polynomial

R_MAX = 30


class NotAReduction(RuntimeError):
    """J is not a reduction of I up to the requested r_max."""


class NotAdmissible(ValueError):
    pass


class SuperficialSearchFailed(RuntimeError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass
class ReductionData:
    I: Ideal
    J: Ideal  # generated by exactly the elements below
    elements: tuple[Polynomial, ...]
    r: int
    length_table: list[int]  # length(I^n / J I^(n-1)) for n = 1..r+1
    coeff_matrix: tuple[tuple[int, ...], ...] | None = None
    local: bool = False  # J has zeros off the origin; products get truncated
    truncation: dict = field(default_factory=dict)  # k -> t with m^t I^(k+1) inside J I^k locally
    r_max: int = R_MAX
    label: str = ""
    _products: dict = field(default_factory=dict, repr=False)

    @cached_property
    def m_exp(self) -> int:
        return m_exponent(self.I)

    def j_local(self) -> Ideal:
        return self.j_times_power(0)

    def j_times_power(self, k: int) -> Ideal:
        """An origin supported ideal with the same localization as J I^k."""
        hit = self._products.get(k)
        if hit is None:
            hit = self._products[k] = _local_product(self, k)
        return hit

    @property
    def local_exponent(self) -> int | None:
        """t with m^t I inside J locally; None when J needs no truncation."""
        if not self.local:
            return None
        self.j_local()
        return self.truncation[0]

    @property
    def lambda_sum(self) -> int:
        return sum(self.length_table)

    @property
    def weighted_lambda_sum(self) -> int:
        return sum((n - 1) * v for n, v in enumerate(self.length_table, start=1))

    def colength_j(self) -> int:
        return colength(self.j_local())


def _local_product(red: ReductionData, k: int) -> Ideal:
    prod = red.J if k == 0 else ideal_product(red.J, ideal_power(red.I, k))
    if not red.local:
        return prod
    # Nakayama: J I^k + m^t I^(k+1) == J I^k + m^(t+1) I^(k+1) puts m^t I^(k+1)
    # inside J I^k locally.  Any t valid for k-1 is valid for k.
    nxt = ideal_power(red.I, k + 1)
    known = [t for j, t in red.truncation.items() if j < k]
    bound = min(known) if known else red.m_exp * (red.r_max + 1)
    t, cur = 0, colength(ideal_sum(prod, nxt))
    while t < bound:
        trial = ideal_sum(prod, ideal_product(maximal_ideal_power(red.I.ring, t + 1), nxt))
        c = colength(trial)
        if c == cur:
            break
        t, cur = t + 1, c
    else:
        if not known:
            raise NotAReduction(f"not a reduction up to r_max = {red.r_max} (J is not m-primary)")
    red.truncation[k] = t
    trunc = nxt if t == 0 else ideal_product(maximal_ideal_power(red.I.ring, t), nxt)
    return ideal_sum(prod, trunc)


def random_coefficients(I: Ideal, seed: int, d: int | None = None) -> tuple[tuple[int, ...], ...]:
    d = I.ring.dim if d is None else d
    rng = random.Random(seed)
    p = I.ring.characteristic
    s = len(I.gens)
    return tuple(tuple(rng.randrange(1, p) for _ in range(s)) for _ in range(d))


def _combine(I: Ideal, row: Sequence[int]) -> Polynomial:
    out = I.ring.zero()
    for c, g in zip(row, I.gens):
        out = out + g.scale(c)
    return out


def random_candidate_reduction(I: Ideal, seed: int) -> Ideal:
    """d random F_p-combinations of the generators of I, deterministic in ``seed``."""
    if I.ring.dim < 1:
        raise ValueError("dimension must be at least 1")
    rows = random_coefficients(I, seed)
    return Ideal(I.ring, [_combine(I, row) for row in rows], name=f"J[seed={seed}]")


def reduction_index(I: Ideal, J: Ideal, r_max: int = R_MAX, *, coeff_matrix=None,
                    label: str = "") -> ReductionData:
    """Least r <= r_max with I^(r+1) = J I^r (in the local ring), with the length table."""
    if not ideal_contains(I, J):
        raise ValueError("J is not contained in I")
    red = ReductionData(I=I, J=J, elements=tuple(J.gens), r=-1, length_table=[],
                        coeff_matrix=coeff_matrix, local=not is_m_primary(J),
                        r_max=r_max, label=label or (J.name or ""))
    table = []
    for r in range(r_max + 1):
        In = ideal_power(I, r + 1)
        JIr = red.j_times_power(r)
        table.append(colength(JIr) - colength(In))
        if ideal_equals(In, JIr):
            red.r = r
            red.length_table = table
            return red
    raise NotAReduction(f"not a reduction up to r_max = {r_max}")


def reduction_from_seed(I: Ideal, seed: int, r_max: int = R_MAX) -> ReductionData:
    J = random_candidate_reduction(I, seed)
    return reduction_index(I, J, r_max, coeff_matrix=random_coefficients(I, seed),
                           label=f"seed {seed}")


def is_superficial(x: Polynomial, I: Ideal, window: tuple[int, int] = (2, 5)) -> bool:
    """Bounded test with c = window[0]: (I^(n+1) : x) ∩ I^c = I^n for every n in the window."""
    x = x.rehome(I.ring)
    if not contains_poly(I, x):
        raise NotAdmissible("element is not in I")
    if contains_poly(ideal_power(I, 2), x):
        raise NotAdmissible("not admissible: element lies in I^2")
    lo, hi = window
    lo = max(lo, 1)
    Ic = ideal_power(I, lo)
    for n in range(lo, hi + 1):
        colon = colon_poly(ideal_power(I, n + 1), x)
        if n > lo:
            colon = ideal_intersect(colon, Ic)
        if not ideal_equals(colon, ideal_power(I, n)):
            return False
    return True


def superficial_sequence(I: Ideal, k: int, seed: int, window: tuple[int, int] = (2, 4),
                         retries: int = 8) -> list[Polynomial]:
    """x_1..x_k with x_i superficial for the image of I modulo x_1..x_(i-1)."""
    if k > I.ring.dim:
        raise ValueError("k exceeds the dimension")
    rng = random.Random(seed)
    p = I.ring.characteristic
    seq: list[Polynomial] = []
    current = I
    for i in range(k):
        for _ in range(retries):
            row = [rng.randrange(1, p) for _ in I.gens]
            x = _combine(I, row)
            try:
                ok = is_superficial(x, current, window)
            except NotAdmissible:
                ok = False
            if ok:
                break
        else:
            raise SuperficialSearchFailed(f"no superficial element found at index {i + 1}", i + 1)
        seq.append(x)
        current = quotient_push(I, seq)
    return seq


@dataclass
class IndependenceReport:
    trials: int
    observed: list[tuple[str, int]]  # (label, r_J) for sampled reductions
    named: list[tuple[str, int | None, str]]  # (label, r_J or None, failure message)
    verdict: str
    witness: tuple[tuple[str, int], tuple[str, int]] | None = None

    @property
    def r_values(self) -> list[int]:
        return [r for _, r in self.observed] + [r for _, r, _ in self.named if r is not None]

    @property
    def r_min(self) -> int | None:
        vals = self.r_values
        return min(vals) if vals else None


INDEPENDENT = "independent-up-to-sampling"
NOT_INDEPENDENT = "NOT-independent"


def independence_sample(I: Ideal, trials: int, seed: int, named: Sequence[Ideal] = (),
                        r_max: int = R_MAX, reductions: list | None = None) -> IndependenceReport:
    """Reduction numbers of ``trials`` random reductions and of the named ones.

    Verified reductions are appended to ``reductions`` when given.
    """
    observed = []
    for t in range(trials):
        red = reduction_from_seed(I, seed + t, r_max)
        observed.append((red.label, red.r))
        if reductions is not None:
            reductions.append(red)
    named_out = []
    for k, J in enumerate(named):
        label = J.name or f"named[{k}]"
        try:
            red = reduction_index(I, J, r_max, label=label)
        except (NotAReduction, ValueError) as exc:
            named_out.append((label, None, str(exc)))
            continue
        named_out.append((label, red.r, ""))
        if reductions is not None:
            reductions.append(red)
    pool = observed + [(lab, r) for lab, r, _ in named_out if r is not None]
    witness = None
    for a in pool:
        for b in pool:
            if a[1] < b[1]:
                witness = (a, b)
                break
        if witness:
            break
    verdict = NOT_INDEPENDENT if witness else INDEPENDENT
    return IndependenceReport(trials, observed, named_out, verdict, witness)
