"""Hilbert-Samuel function and coefficients of an m-primary ideal."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ideal import Ideal, NotMPrimary, colength, ideal_equals, ideal_power, is_m_primary


class PostulationNotDetected(RuntimeError):
    def __init__(self, message: str, table: list[int]):
        super().__init__(message)
        self.table = table


@dataclass
class HilbertData:
    table: list[int]  # H(n) = length(R/I^n), n = 0..len-1
    coefficients: tuple[int, ...]  # e_0..e_d
    postulation: int
    dim: int

    def polynomial(self, n: int) -> int:
        return hilbert_polynomial(self.coefficients, n)

    @property
    def e(self) -> tuple[int, ...]:
        return self.coefficients


def binom(n: int, k: int) -> int:
    """Binomial coefficient as a polynomial in ``n`` (so negative ``n`` is allowed)."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= n - i
    den = 1
    for i in range(1, k + 1):
        den *= i
    return num // den


def hilbert_polynomial(coeffs, n: int) -> int:
    d = len(coeffs) - 1
    return sum((-1) ** i * e * binom(n + d - i - 1, d - i) for i, e in enumerate(coeffs))


def hilbert_function(I: Ideal, n: int) -> int:
    """length(R/I^n), with I^0 = R."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    return colength(ideal_power(I, n))


def _solve_coefficients(points: list[tuple[int, int]], d: int) -> list[Fraction]:
    # rows: (-1)^i C(n+d-i-1, d-i) * e_i = H(n)
    A = [[Fraction((-1) ** i * binom(n + d - i - 1, d - i)) for i in range(d + 1)] + [Fraction(h)]
         for n, h in points]
    m = d + 1
    for col in range(m):
        piv = next(r for r in range(col, m) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [v / pv for v in A[col]]
        for r in range(m):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[i][m] for i in range(m)]


def _nth_difference(vals: list[int], d: int) -> list[int]:
    for _ in range(d):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals


def hilbert_coefficients(I: Ideal, cap: int = 50, check: bool = True,
                         e0: int | None = None) -> HilbertData:
    """Hilbert coefficients e_0..e_d, where d is the dimension of the ambient ring.

    H(n) is computed for growing n until its d-th difference is constant on a
    window of d+3 consecutive values and the interpolating polynomial matches
    the whole window.  A known multiplicity ``e0`` (the colength of a minimal
    reduction) rules out early plateaus at a wrong value.
    """
    if check and not is_m_primary(I):
        raise NotMPrimary("not m-primary")
    d = I.ring.dim
    if d < 1:
        raise ValueError("ambient dimension must be at least 1")
    window = d + 3
    table = [0]
    n = 0
    while True:
        n += 1
        if n > cap:
            raise PostulationNotDetected(f"postulation not detected up to n = {cap}", table)
        table.append(hilbert_function(I, n))
        if n < window:
            continue
        vals = table[n - window + 1 : n + 1]
        diffs = _nth_difference(vals, d)
        if len(set(diffs)) != 1 or (e0 is not None and diffs[0] != e0):
            continue
        pts = [(k, table[k]) for k in range(n - d, n + 1)]
        sol = _solve_coefficients(pts, d)
        if any(s.denominator != 1 for s in sol):
            continue
        coeffs = tuple(int(s) for s in sol)
        if all(hilbert_polynomial(coeffs, k) == table[k] for k in range(n - window + 1, n + 1)):
            break
    post = n - window + 1
    while post > 0 and hilbert_polynomial(coeffs, post - 1) == table[post - 1]:
        post -= 1
    return HilbertData(table=table, coefficients=coeffs, postulation=post, dim=d)


@dataclass
class NorthcottCheck:
    e0: int
    e1: int
    colength: int
    northcott_holds: bool
    boundary: bool
    i2_equals_ji: bool

    @property
    def defect(self) -> int:
        return self.e1 - self.e0 + self.colength


def northcott_huneke_check(I: Ideal, red, hd: HilbertData | None = None) -> NorthcottCheck:
    """Northcott's bound e_1 >= e_0 - length(R/I) and Huneke's equality case I^2 = JI."""
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    e0, e1 = hd.coefficients[0], hd.coefficients[1]
    lam = colength(I)
    holds = e1 >= e0 - lam
    boundary = e1 == e0 - lam
    i2_ji = ideal_equals(ideal_power(I, 2), red.j_times_power(1))
    if boundary != i2_ji:
        raise AssertionError(
            f"Huneke equivalence violated: boundary={boundary}, I^2 = JI is {i2_ji}"
        )
    return NorthcottCheck(e0, e1, lam, holds, boundary, i2_ji)
