import pytest
from hypothesis import given, settings, strategies as st

from hilbred.hilbert import (
    PostulationNotDetected,
    binom,
    hilbert_coefficients,
    hilbert_polynomial,
    northcott_huneke_check,
)
from hilbred.ideal import Ideal, NotMPrimary, maximal_ideal_power
from hilbred.reduction import reduction_from_seed, reduction_index
from hilbred.ring import AmbientRing

R2 = AmbientRing(("x", "y"))
R3 = AmbientRing(("x", "y", "z"))


def test_binom_is_polynomial_in_n():
    assert binom(5, 2) == 10
    assert binom(-1, 2) == 1  # (-1)(-2)/2
    assert binom(3, -1) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_maximal_ideal_powers(k):
    # length(R/m^(kn)) = C(kn+1, 2): e0 = k^2, e1 = (k^2 - k)/2, e2 = 0
    hd = hilbert_coefficients(maximal_ideal_power(R2, k))
    assert hd.coefficients == (k * k, (k * k - k) // 2, 0)


@settings(max_examples=15)
@given(st.integers(1, 4), st.integers(1, 4))
def test_parameter_ideal_has_e0_product_and_zero_tail(a, b):
    hd = hilbert_coefficients(Ideal(R2, [R2.monomial((a, 0)), R2.monomial((0, b))]))
    assert hd.coefficients == (a * b, 0, 0)
    assert hd.postulation == 0


def test_polynomial_matches_table_past_postulation():
    I = Ideal.from_strings(R2, ["x^6", "y^6", "x^5*y + x^2*y^4"])
    hd = hilbert_coefficients(I)
    assert hd.coefficients == (36, 15, 11)
    for n in range(hd.postulation, len(hd.table)):
        assert hilbert_polynomial(hd.coefficients, n) == hd.table[n]
    if hd.postulation > 0:
        n = hd.postulation - 1
        assert hilbert_polynomial(hd.coefficients, n) != hd.table[n]


def test_three_variables():
    hd = hilbert_coefficients(maximal_ideal_power(R3, 1))
    assert hd.coefficients == (1, 0, 0, 0)


def test_errors():
    with pytest.raises(NotMPrimary):
        hilbert_coefficients(Ideal.from_strings(R2, ["x"]))
    with pytest.raises(PostulationNotDetected) as err:
        hilbert_coefficients(Ideal.from_strings(R2, ["x^6", "y^6", "x^5*y + x^2*y^4"]), cap=3)
    assert len(err.value.table) == 4


def test_northcott_equality_iff_i2_eq_ji():
    m2 = maximal_ideal_power(R2, 2)
    red = reduction_index(m2, Ideal.from_strings(R2, ["x^2", "y^2"]))
    chk = northcott_huneke_check(m2, red)
    assert chk.boundary and chk.i2_equals_ji
    I = Ideal.from_strings(R2, ["x^6", "y^6", "x^5*y + x^2*y^4"])
    chk = northcott_huneke_check(I, reduction_from_seed(I, 0))
    assert chk.northcott_holds and not chk.boundary and not chk.i2_equals_ji


def test_known_multiplicity_skips_early_plateau():
    # second differences of H run 35, 35, 35, then 36 forever
    R = AmbientRing(("x", "y"))
    I = Ideal.from_strings(R, ["x^6", "y^6", "10078*x^4*y^2 + x^3*y^3"])
    red = reduction_from_seed(I, 0)
    assert red.colength_j() == 36
    hd = hilbert_coefficients(I, e0=red.colength_j())
    assert hd.coefficients == (36, 15, 12)
    assert all(hd.polynomial(n) == hd.table[n] for n in range(hd.postulation, len(hd.table)))
