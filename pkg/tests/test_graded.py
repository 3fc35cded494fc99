import pytest
from hypothesis import given, settings, strategies as st

from hilbred.graded import (
    CLAIMS,
    ClaimContext,
    DimensionMismatch,
    b_sequence,
    b_sequence_any,
    deficits,
    depth_bounds,
    dimension_reduce,
    guerrieri_sum,
    sample_reductions,
    verify_claim,
    vv_check,
)
from hilbred.closure import is_integrally_closed
from hilbred.hilbert import hilbert_coefficients
from hilbred.ideal import Ideal
from hilbred.reduction import reduction_index
from hilbred.ring import AmbientRing

R2 = AmbientRing(("x", "y"))
R3 = AmbientRing(("x", "y", "z"))

EX311 = ["x^6", "y^6", "x^5*y + x^2*y^4"]
EX313 = ["x^2 - y^2", "y^2 - z^2", "x*y", "y*z", "x*z"]
EX318 = ["x^6", "y^6", "x^5*y", "x^3*y^3", "x^2*y^4", "x*y^5"]


def I(*t, ring=R2):
    return Ideal.from_strings(ring, list(t))


def analysed(K, trials=1):
    hd = hilbert_coefficients(K)
    reds = sample_reductions(K, trials, 0)
    return hd, reds, [deficits(K, r, hd) for r in reds]


def test_parameter_ideal():
    J = I("x^3", "y^2")
    red = reduction_index(J, J)
    rep = deficits(J, red)
    assert (rep.e1_deficit, rep.e2_deficit) == (0, 0)
    assert vv_check(J, red)
    assert b_sequence(J, red).values == [] or set(b_sequence(J, red).values) == {0}
    assert guerrieri_sum(J, red) == 0
    cert = depth_bounds(J, [red])
    assert cert.exact and cert.lower == 2 and cert.lower_tag == "VV"


def test_m2_with_pure_powers():
    K = I("x^2", "x*y", "y^2")
    red = reduction_index(K, I("x^2", "y^2"))
    assert vv_check(K, red)
    assert set(b_sequence(K, red).values) <= {0}
    assert guerrieri_sum(K, red) == 0


def test_ex_3_11_deficits_and_b_sequence():
    K = I(*EX311)
    hd, reds, defs = analysed(K, 3)
    assert {(d.e1_deficit, d.e2_deficit) for d in defs} == {(1, 3)}
    bs = b_sequence(K, reds[0], hd)
    assert bs.total == 1
    # the h'_1 correction is what closes the weighted identity here
    assert bs.weighted_total == 2 and bs.h_prime_total == 1
    assert bs.corrected_identity and not bs.stated_identity
    assert guerrieri_sum(K, reds[0]) == 1
    cert = depth_bounds(K, reds, hd, deficit_list=defs)
    assert (cert.lower, cert.upper, cert.upper_tag) == (0, 0, "HM-e1")


def test_ex_3_18_vv_fails_on_five_seeds():
    K = I(*EX318)
    reds = sample_reductions(K, 5, 0)
    assert not any(vv_check(K, r) for r in reds)


@pytest.mark.parametrize("gens", [EX311, EX318, ["x^4", "x^3*y", "x*y^3", "y^4"],
                                  ["x^3", "y^3", "x*y"], ["x^5", "y^4", "x^2*y^2 + x^4*y"]])
def test_guerrieri_two_routes_agree(gens):
    K = I(*gens)
    red = sample_reductions(K, 1, 3)[0]
    assert guerrieri_sum(K, red, via="colon") == guerrieri_sum(K, red, via="intersection")


def test_b_sequence_needs_dimension_two():
    K = I(*EX313, ring=R3)
    red = sample_reductions(K, 1, 0)[0]
    with pytest.raises(DimensionMismatch):
        b_sequence(K, red)
    bs = b_sequence_any(K, red)
    assert bs.reduced_by == 1 and bs.corrected_identity


def test_ex_3_13():
    K = I(*EX313, ring=R3)
    hd, reds, defs = analysed(K, 2)
    assert hd.coefficients[:3] == (8, 4, 0)
    assert all(d.e2_deficit > 0 for d in defs)
    cert = depth_bounds(K, reds, hd, deficit_list=defs)
    assert cert.upper == 0 and cert.upper_tag == "RR-POWERS"
    img = dimension_reduce(K, 1, seed=0, hd=hd)
    assert img.ring.dim == 2
    assert hilbert_coefficients(img).coefficients[:2] == (8, 4)
    assert dimension_reduce(K, 0, 0) is K


seeds = st.integers(0, 10_000)


@settings(max_examples=20)
@given(st.integers(1, 5), st.integers(1, 5), st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(any), max_size=3), seeds)
def test_structural_identities(a, b, extra, seed):
    K = Ideal(R2, [R2.monomial((a, 0)), R2.monomial((0, b))] + [R2.monomial(e) for e in extra])
    hd = hilbert_coefficients(K)
    red = sample_reductions(K, 1, seed)[0]
    rep = deficits(K, red, hd)
    assert rep.e1_deficit >= 0 and rep.e2_deficit >= 0 and rep.e2_deficit != 1
    assert (rep.e1_deficit == 0) == (rep.e2_deficit == 0)
    bs = b_sequence(K, red, hd)
    assert bs.total == rep.e1_deficit and bs.corrected_identity
    g = guerrieri_sum(K, red)
    if vv_check(K, red):
        assert rep.e1_deficit == rep.e2_deficit == g == 0
    if g == 0:
        assert rep.e1_deficit == 0
    cert = depth_bounds(K, [red], hd, deficit_list=[rep], gsum=g)
    assert 0 <= cert.lower <= cert.upper <= 2
    assert cert.lower_tag and cert.upper_tag


def _ctx(K, trials=2, closure=True):
    hd, reds, defs = analysed(K, trials)
    cert = depth_bounds(K, reds, hd, deficit_list=defs)
    return ClaimContext(K, hd, reds, defs, cert, None,
                        (lambda: is_integrally_closed(K)) if closure else None)


def test_claims_on_ex_3_11():
    ctx = _ctx(I(*EX311))
    res = verify_claim("THM-3.10", ctx)
    assert res.applicable is False and res.status == "vacuous"
    assert verify_claim("REM-3.9-GAP", ctx).status == "verified"
    assert verify_claim("PROP-3.6", ctx).status == "verified"
    for cid in CLAIMS:
        assert not verify_claim(cid, ctx).violation


def test_claim_applicable_thm_3_10():
    ctx = _ctx(I(*EX318))
    res = verify_claim("THM-3.10", ctx)
    assert res.applicable and res.conclusion_verified


def test_unknown_closure_is_unverifiable():
    # m^3 plus a binomial: e2 deficit 0 so Thm 3.10 is vacuous; Lemma 3.15 needs closure
    K = I("x^3", "y^3", "x*y + y^2", "x^2*y")
    ctx = _ctx(K, closure=False)
    res = verify_claim("LEM-3.15", ctx)
    assert res.applicable in (False, None)
    if ctx.defect == 2:
        assert res.status == "hypotheses unverifiable"


def test_unknown_claim():
    ctx = _ctx(I("x^2", "y^2"))
    with pytest.raises(ValueError):
        verify_claim("THM-9.99", ctx)
