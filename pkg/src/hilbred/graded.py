"""Depth of the associated graded ring: deficits, B_n sequences and certificates.

G(I) itself is never built.  Everything is reduced to colengths of ideals
in the local ring at the origin.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .closure import ClosureReport, ratliff_rush, rr_power_witness
from .hilbert import HilbertData, PostulationNotDetected, hilbert_coefficients
from .ideal import (
    Ideal,
    colength,
    colon_poly,
    ideal_equals,
    ideal_intersect,
    ideal_power,
    ideal_sum,
    quotient_push,
    unit_ideal,
)
from .reduction import (
    R_MAX,
    NotAdmissible,
    NotAReduction,
    ReductionData,
    is_superficial,
    reduction_from_seed,
    reduction_index,
    superficial_sequence,
)
from .ring import Polynomial


# power cap when checking that a quotient kept e_0 / e_1 (a bad element never plateaus at e_0)
REDUCE_CAP = 16


class DimensionMismatch(ValueError):
    pass


class DimensionReductionFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class DeficitReport:
    e1_deficit: int
    e2_deficit: int  # only meaningful for d >= 2
    label: str = ""


def _coeff(hd: HilbertData, i: int) -> int:
    return hd.coefficients[i] if i < len(hd.coefficients) else 0


def e1_deficit(I: Ideal, red: ReductionData, hd: HilbertData | None = None) -> int:
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    out = red.lambda_sum - _coeff(hd, 1)
    if out < 0:
        raise AssertionError(f"negative e1 deficit {out}")
    return out


def e2_deficit(I: Ideal, red: ReductionData, hd: HilbertData | None = None) -> int:
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    out = red.weighted_lambda_sum - _coeff(hd, 2)
    if out < 0:
        raise AssertionError(f"negative e2 deficit {out}")
    if out == 1:
        raise AssertionError("e2 deficit equals 1")
    return out


def deficits(I: Ideal, red: ReductionData, hd: HilbertData | None = None) -> DeficitReport:
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    return DeficitReport(e1_deficit(I, red, hd), e2_deficit(I, red, hd), red.label)


def vv_check(I: Ideal, red: ReductionData) -> bool:
    """I^n ∩ J = J I^(n-1) for 2 <= n <= r (locally)."""
    Jloc = red.j_local()
    for n in range(2, red.r + 1):
        if not ideal_equals(ideal_intersect(ideal_power(I, n), Jloc), red.j_times_power(n - 1)):
            return False
    return True


# -- B_n and Guerrieri sums ---------------------------------------------------


@dataclass
class BSequence:
    values: list[int]  # lambda(B_n) for n = 2 .. 2 + len - 1
    h_prime: list[int]  # lambda((I^n : x1) / I^(n-1)) for n = 1 ..
    J_split: tuple  # (x_1, x_2) in the (possibly reduced) ring
    reduced_by: int = 0  # number of elements factored out first
    e1_deficit: int = 0
    e2_deficit: int = 0

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def weighted_total(self) -> int:
        return sum((n - 1) * v for n, v in enumerate(self.values, start=2))

    @property
    def h_prime_total(self) -> int:
        return sum(self.h_prime)

    @property
    def stated_identity(self) -> bool:
        """sum (n-1) lambda(B_n) == e2 deficit, without the h'_1 correction."""
        return self.weighted_total == self.e2_deficit

    @property
    def corrected_identity(self) -> bool:
        return self.weighted_total + self.h_prime_total == self.e2_deficit


def _colon_or_unit(A: Ideal, x) -> Ideal:
    return colon_poly(A, x)


def _power_or_unit(I: Ideal, n: int) -> Ideal:
    return unit_ideal(I.ring) if n == 0 else ideal_power(I, n)


def _b_terms(I: Ideal, red: ReductionData, tail: int = 2) -> tuple[list[int], list[int]]:
    x1, x2 = red.elements[-2:]
    B, hp = [], []
    colons = {0: unit_ideal(I.ring)}

    def colon(n):
        if n not in colons:
            colons[n] = _colon_or_unit(ideal_power(I, n), x1)
        return colons[n]

    n = 1
    zeros = 0
    while True:
        prev = _power_or_unit(I, n - 1)
        hp.append(colength(prev) - colength(colon(n)))
        if n >= 2:
            den = ideal_sum(prev, Ideal(I.ring, [x2 * g for g in colon(n - 1).gens]))
            B.append(colength(den) - colength(colon(n)))
        zeros = zeros + 1 if (hp[-1] == 0 and (n < 2 or B[-1] == 0)) else 0
        if n >= red.r + 2 and zeros >= tail:
            break
        if n > red.r + R_MAX:
            raise AssertionError("B_n sequence did not vanish")
        n += 1
    while B and B[-1] == 0 and len(B) > red.r:
        B.pop()
    while hp and hp[-1] == 0:
        hp.pop()
    return B, hp


def b_sequence(I: Ideal, red: ReductionData, hd: HilbertData | None = None) -> BSequence:
    """lambda(B_n) through the translation x1 (A : x1) = A ∩ (x1); needs d = 2.

    Asserts sum lambda(B_n) = e1 deficit and
    sum (n-1) lambda(B_n) + sum lambda((I^n : x1)/I^(n-1)) = e2 deficit.
    """
    if I.ring.dim != 2:
        raise DimensionMismatch("B_n sequence needs a two-dimensional ring; reduce first")
    if len(red.elements) != 2:
        raise DimensionMismatch("reduction must have exactly two generators")
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    B, hp = _b_terms(I, red)
    seq = BSequence(B, hp, tuple(red.elements), 0,
                    e1_deficit(I, red, hd), e2_deficit(I, red, hd))
    if any(v < 0 for v in B):
        raise AssertionError(f"negative length in B sequence {B}")
    if seq.total != seq.e1_deficit:
        raise AssertionError(f"sum of B_n is {seq.total}, e1 deficit {seq.e1_deficit}")
    if not seq.corrected_identity:
        raise AssertionError(
            f"weighted B sum {seq.weighted_total} + h'_1 {seq.h_prime_total} "
            f"!= e2 deficit {seq.e2_deficit}")
    return seq


def guerrieri_sum(I: Ideal, red: ReductionData, via: str = "auto") -> int:
    """sum_n lambda((I^(n+1) ∩ J_(d-1)) / (J I^n ∩ J_(d-1))).

    For d = 2 through colons by x1; for d > 2 as
    colength(J I^n) - colength((I^(n+1) ∩ J_(d-1)) + J I^n).
    """
    d = I.ring.dim
    if d < 2:
        raise DimensionMismatch("needs d >= 2")
    if via not in ("auto", "colon", "intersection"):
        raise ValueError(f"unknown method {via!r}")
    if via == "colon" and d != 2:
        raise DimensionMismatch("the colon form needs d = 2")
    total = 0
    if d == 2 and via != "intersection":
        x1 = red.elements[0]
        for n in range(1, red.r + 1):
            total += colength(colon_poly(red.j_times_power(n), x1)) - \
                colength(colon_poly(ideal_power(I, n + 1), x1))
        return total
    Jd1 = Ideal(I.ring, list(red.elements[: d - 1]))
    for n in range(1, red.r + 1):
        JIn = red.j_times_power(n)
        # modular law (J I^n inside I^(n+1)) keeps everything origin supported
        top = ideal_intersect(ideal_power(I, n + 1), ideal_sum(Jd1, JIn))
        total += colength(JIn) - colength(top)
    return total


# -- dimension reduction --------------------------------------------------------


def dimension_reduce(I: Ideal, k: int, seed: int, hd: HilbertData | None = None,
                     attempts: int = 4) -> Ideal:
    """Image of I modulo k superficial elements; e_0 and e_1 must survive."""
    d = I.ring.dim
    if k < 0 or k > d - 1:
        raise ValueError("need 0 <= k <= d-1")
    if k == 0:
        return I
    hd = hd or hilbert_coefficients(I)
    for a in range(attempts):
        seq = superficial_sequence(I, k, seed + 1000 * a)
        image = quotient_push(I, seq)
        try:
            hi = hilbert_coefficients(image, cap=REDUCE_CAP, e0=hd.coefficients[0])
        except PostulationNotDetected:
            continue
        if hi.coefficients[:2] == hd.coefficients[:2]:
            return image
    raise DimensionReductionFailed("e_0, e_1 not preserved on any attempt")


def _sparse_element(I: Ideal, rng: random.Random, width: int) -> Polynomial:
    """Random combination of ``width`` lowest-degree minimal generators."""
    gens = sorted(I.minimal_gens(), key=lambda g: (g.total_degree(), len(g.terms), str(g)))
    pool = [g for g in gens if g.total_degree() == gens[0].total_degree()]
    picks = rng.sample(pool, min(width, len(pool)))
    p = I.ring.characteristic
    out = I.ring.zero()
    for g in picks:
        out = out + g.scale(rng.randrange(1, p))
    return out


def reduce_pair(I: Ideal, red: ReductionData, hd: HilbertData | None = None,
                r_max: int = R_MAX, seed: int = 0, attempts: int = 8) -> tuple[Ideal, ReductionData]:
    """Image of I modulo d-2 sparse elements of I that keep e_0 and e_1, with a reduction.

    Sparse relations keep Groebner bases in the quotient cheap; a dense generic
    relation can cost a hundred times more.  For the same reason the reduction
    of the image is a sparse one rather than the image of J.
    """
    d = I.ring.dim
    if d <= 2:
        return I, red
    hd = hd or hilbert_coefficients(I, e0=red.colength_j())
    rng = random.Random(seed)
    for a in range(attempts):
        width = d + a // 2
        head = [_sparse_element(I, rng, width) for _ in range(d - 2)]
        image = quotient_push(I, head)
        if image.ring.dim != 2 or image.is_unit():
            continue
        try:
            hi = hilbert_coefficients(image, cap=REDUCE_CAP, e0=hd.coefficients[0])
        except PostulationNotDetected:
            continue
        if hi.coefficients[:2] == hd.coefficients[:2]:
            break
    else:
        raise DimensionReductionFailed(f"(e0, e1) = {hd.coefficients[:2]} not kept by any of "
                                       f"{attempts} sparse elements")
    # candidates with a much larger reduction number are discarded early
    return image, sparse_reduction(image, seed, min(r_max, red.r + 3),
                                   label=red.label + " (reduced)")


def sparse_reduction(I: Ideal, seed: int = 0, r_max: int = R_MAX, attempts: int = 12,
                     label: str = "") -> ReductionData:
    """A reduction (x1, x2) of I (d = 2) with x1 sparse and superficial.

    Every colon in the B_n sequence is by x1, and colons by a sparse element
    are cheap.  Superficiality uses the bounded colon test of superficial_sequence.
    """
    if I.ring.dim != 2:
        raise DimensionMismatch("needs d = 2")
    rng = random.Random(seed)
    p = I.ring.characteristic
    for a in range(attempts):
        x1 = _sparse_element(I, rng, 2 + a // 4)
        try:
            if not is_superficial(x1, I, (2, 4)):
                continue
        except NotAdmissible:
            continue
        # x2 only ever multiplies, so a dense generic element costs little
        x2 = I.ring.zero()
        for g in I.minimal_gens():
            x2 = x2 + g.scale(rng.randrange(1, p))
        try:
            return reduction_index(I, Ideal(I.ring, [x1, x2]), r_max,
                                   label=label or f"sparse seed {seed}")
        except NotAReduction:
            continue
    raise DimensionReductionFailed(f"no sparse reduction found in {attempts} attempts")


def b_sequence_any(I: Ideal, red: ReductionData, hd: HilbertData | None = None) -> BSequence:
    """b_sequence, first reducing to dimension two when d > 2."""
    d = I.ring.dim
    if d == 2:
        return b_sequence(I, red, hd)
    I2, red2 = reduce_pair(I, red, hd)
    seq = b_sequence(I2, red2)
    seq.reduced_by = d - 2
    return seq


# -- depth certificate ------------------------------------------------------------


VV, HM, CPR, WANG, GSUM, RRP, TRIVIAL = "VV", "HM-e1", "CPR-e2", "WANG", "G-SUM", "RR-POWERS", "TRIVIAL"


@dataclass
class DepthCertificate:
    d: int
    lower: int = 0
    lower_tag: str = TRIVIAL
    upper: int = 0
    upper_tag: str = TRIVIAL
    evidence: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def raise_lower(self, v: int, tag: str):
        if v > self.lower:
            self.lower, self.lower_tag = v, tag

    def cap_upper(self, v: int, tag: str):
        v = max(v, 0)
        if v < self.upper:
            self.upper, self.upper_tag = v, tag


def depth_bounds(I: Ideal, reds: Sequence[ReductionData], hd: HilbertData | None = None,
                 rr_bound: int = 6, deficit_list: Sequence[DeficitReport] | None = None,
                 gsum: int | None = None) -> DepthCertificate:
    """Combine the depth criteria over the given verified reductions."""
    d = I.ring.dim
    hd = hd or hilbert_coefficients(I, e0=reds[0].colength_j() if reds else None)
    cert = DepthCertificate(d=d, upper=d)
    if deficit_list is None:
        deficit_list = [deficits(I, r, hd) for r in reds]
    vv_ok = []
    for red, rep in zip(reds, deficit_list):
        if vv_check(I, red):
            vv_ok.append(red.label)
            cert.raise_lower(d, VV)
        if rep.e1_deficit == 0:
            cert.raise_lower(d - 1, HM)
        else:
            cert.cap_upper(d - 2, HM)
        if d >= 2 and rep.e2_deficit == 0:
            cert.raise_lower(d - 1, CPR)
        if rep.e1_deficit == 1:
            cert.raise_lower(d - 2, WANG)
    if reds and not vv_ok:
        cert.evidence.append(
            f"Valabrega-Valla fails for all {len(reds)} sampled reductions (suggests depth <= {d - 1})")
    if d >= 2 and reds:
        g = guerrieri_sum(I, reds[0]) if gsum is None else gsum
        if g == 0:
            cert.raise_lower(d - 1, GSUM)
        elif g == 1:
            cert.raise_lower(d - 2, GSUM)
    if cert.lower == 0 and cert.upper > 0:
        k = rr_power_witness(I, rr_bound)
        if k is not None:
            cert.cap_upper(0, RRP)
            cert.evidence.append(f"I^{k} is not Ratliff-Rush closed")
        else:
            cert.evidence.append(f"I^k Ratliff-Rush closed for k <= {rr_bound}")
    if cert.lower > cert.upper:
        raise AssertionError(f"inconsistent depth bounds {cert.lower} > {cert.upper}")
    return cert


# -- claims --------------------------------------------------------------------------


CLAIMS = ("THM-3.10", "THM-3.12", "PROP-3.6", "PROP-3.7", "PROP-3.8", "PROP-3.13",
          "LEM-3.15", "PROP-3.16", "COR-3.17", "REM-3.9-GAP")

UNVERIFIABLE = "hypotheses unverifiable"


@dataclass
class ClaimContext:
    I: Ideal
    hd: HilbertData
    reductions: list[ReductionData]
    deficit_list: list[DeficitReport]
    certificate: DepthCertificate | None = None
    gsum: int | None = None
    closure_fn: Callable[[], ClosureReport] | None = None
    _closure: ClosureReport | None = None
    _rr_closed: bool | None = None

    @property
    def d(self) -> int:
        return self.I.ring.dim

    @property
    def closure(self) -> ClosureReport | None:
        if self._closure is None and self.closure_fn is not None:
            self._closure = self.closure_fn()
        return self._closure

    @property
    def closed(self) -> bool | None:
        c = self.closure
        return None if c is None else c.closed

    @property
    def defect(self) -> int:
        e0, e1 = self.hd.coefficients[0], self.hd.coefficients[1]
        return e1 - e0 + colength(self.I)

    @property
    def rr_closed(self) -> bool:
        if self._rr_closed is None:
            self._rr_closed = ideal_equals(ratliff_rush(self.I), self.I)
        return self._rr_closed

    @property
    def r_values(self) -> list[int]:
        return [r.r for r in self.reductions]


@dataclass
class ClaimResult:
    claim: str
    hypotheses: list[tuple[str, bool | None]]
    applicable: bool | None  # None: hypotheses unverifiable
    conclusion_verified: bool | None  # None: vacuous
    detail: str = ""

    @property
    def violation(self) -> bool:
        return self.applicable is True and self.conclusion_verified is False

    @property
    def status(self) -> str:
        if self.applicable is None:
            return UNVERIFIABLE
        if not self.applicable:
            return "vacuous"
        return "verified" if self.conclusion_verified else "VIOLATED"


def _all_equal(vals) -> bool:
    return len(set(vals)) <= 1


def _closed_hyp(ctx: ClaimContext) -> bool | None:
    return ctx.closed


def _combine(parts: list[bool | None]) -> bool | None:
    # conjunction with unknowns
    if any(p is False for p in parts):
        return False
    if any(p is None for p in parts):
        return None
    return True


def _thm_310_hyp(ctx: ClaimContext, rep: DeficitReport) -> bool | None:
    if rep.e2_deficit == 2:
        return True
    if rep.e2_deficit in (3, 4):
        return _closed_hyp(ctx)
    return False


def verify_claim(claim: str, ctx: ClaimContext) -> ClaimResult:
    d = ctx.d
    cert = ctx.certificate
    if claim == "THM-3.10":
        hyps, applicable, ok = [], False, True
        for rep in ctx.deficit_list:
            h = _thm_310_hyp(ctx, rep)
            hyps.append((f"{rep.label}: e2 deficit {rep.e2_deficit}", h))
            if h:
                applicable = True
                ok = ok and rep.e1_deficit == 1
            elif h is None and applicable is False:
                applicable = None
        return ClaimResult(claim, hyps, applicable, ok if applicable else None,
                           f"e1 deficits {[r.e1_deficit for r in ctx.deficit_list]}")
    if claim == "THM-3.12":
        hs = [_thm_310_hyp(ctx, rep) for rep in ctx.deficit_list]
        applicable = True if any(hs) else (None if None in hs else False)
        return ClaimResult(claim, [("Thm 3.10 hypotheses for some J", applicable)], applicable,
                           _all_equal(ctx.r_values) if applicable else None,
                           f"r_J values {ctx.r_values}")
    if claim == "PROP-3.6":
        applicable = any(rep.e1_deficit == 1 for rep in ctx.deficit_list)
        ok = None
        if applicable:
            ok = cert.lower >= d - 2 and cert.upper >= d - 2
        return ClaimResult(claim, [("e1 deficit = 1", applicable)], applicable, ok,
                           f"depth in [{cert.lower}, {cert.upper}]")
    if claim in ("PROP-3.7", "PROP-3.8"):
        want = 0 if claim == "PROP-3.7" else 1
        g = ctx.gsum if ctx.gsum is not None else guerrieri_sum(ctx.I, ctx.reductions[0])
        applicable = g == want
        ok = None
        if applicable:
            # independent check: the Huckaba-Marley bound must not contradict it
            ok = cert.upper >= d - 1 - g and cert.lower >= d - 1 - g
            if want == 0:
                ok = ok and all(r.e1_deficit == 0 for r in ctx.deficit_list)
        return ClaimResult(claim, [(f"Guerrieri sum = {want}", applicable)], applicable, ok,
                           f"sum {g}, depth in [{cert.lower}, {cert.upper}]")
    if claim == "PROP-3.13":
        h_d = d == 3
        h_e2 = any(rep.e2_deficit == 3 for rep in ctx.deficit_list)
        h_rr = ctx.rr_closed if (h_d and h_e2) else None
        hyps = [("d = 3", h_d), ("e2 deficit = 3", h_e2), ("Ratliff-Rush closed", h_rr)]
        applicable = h_d and h_e2 and bool(h_rr)
        return ClaimResult(claim, hyps, applicable, (cert.upper >= 1) if applicable else None,
                           f"depth in [{cert.lower}, {cert.upper}]")
    if claim == "LEM-3.15":
        h_def = ctx.defect == 2
        h_cl = _closed_hyp(ctx) if h_def else None
        applicable = _combine([h_def, h_cl]) if h_def else False
        ok = None
        if applicable:
            ok = all(r.e1_deficit == 0 for r in ctx.deficit_list) and cert.upper >= d - 1
        return ClaimResult(claim, [("defect = 2", h_def), ("integrally closed", h_cl)],
                           applicable, ok, f"defect {ctx.defect}")
    if claim == "PROP-3.16":
        h_def = ctx.defect <= 3
        h_cl = _closed_hyp(ctx) if h_def else None
        applicable = _combine([h_def, h_cl]) if h_def else False
        return ClaimResult(claim, [("defect <= 3", h_def), ("integrally closed", h_cl)],
                           applicable, _all_equal(ctx.r_values) if applicable else None,
                           f"r_J values {ctx.r_values}")
    if claim == "COR-3.17":
        r_min = min(ctx.r_values)
        h_def = ctx.defect <= r_min - 1
        h_depth = cert.lower >= d - 2
        h_cl = _closed_hyp(ctx) if (h_def and h_depth) else None
        applicable = _combine([h_def, h_depth, h_cl]) if (h_def and h_depth) else False
        return ClaimResult(claim, [("defect <= r_J - 1", h_def), ("depth >= d-2", h_depth),
                                   ("integrally closed", h_cl)],
                           applicable, _all_equal(ctx.r_values) if applicable else None,
                           f"r_J values {ctx.r_values}")
    if claim == "REM-3.9-GAP":
        vals = [rep.e2_deficit for rep in ctx.deficit_list]
        ok = all(v != 1 for v in vals)
        if 2 in vals:
            closed = _closed_hyp(ctx)
            if closed:
                ok = False
        return ClaimResult(claim, [("always", True)], True, ok, f"e2 deficits {vals}")
    raise ValueError(f"unknown claim {claim!r}")


def sample_reductions(I: Ideal, trials: int, seed: int, r_max: int = R_MAX) -> list[ReductionData]:
    return [reduction_from_seed(I, seed + t, r_max) for t in range(trials)]
