import pytest
from hypothesis import given, settings, strategies as st

from hilbred.closure import (
    ClosureCapExceeded,
    integrality_witness_search,
    is_integrally_closed,
    monomial_integral_closure,
    newton_facets,
    ratliff_rush,
    ratliff_rush_chain,
    rr_power_witness,
)
from hilbred.ideal import Ideal, contains_poly, ideal_contains, ideal_equals, maximal_ideal_power
from hilbred.ring import AmbientRing

import oracles

R2 = AmbientRing(("x", "y"))
R3 = AmbientRing(("x", "y", "z"))


def I(*t, ring=R2):
    return Ideal.from_strings(ring, list(t))


def exps(J):
    return oracles.minimalize([next(iter(g.terms)) for g in J.gens])


def test_ratliff_rush_classical_gap():
    K = I("x^4", "x^3*y", "x*y^3", "y^4")
    rr = ratliff_rush(K)
    assert contains_poly(rr, R2.parse("x^2*y^2"))
    assert not contains_poly(K, R2.parse("x^2*y^2"))
    # oracle: x^2y^2 * K inside K^2, by exponent arithmetic
    sq = oracles.product_(exps(K), exps(K))
    assert all(oracles.member(sq, tuple(a + b for a, b in zip((2, 2), g))) for g in exps(K))


@pytest.mark.parametrize("gens", [("x^2", "y^2"), ("x", "y")])
def test_ratliff_rush_fixed(gens):
    assert ideal_equals(ratliff_rush(I(*gens)), I(*gens))


def test_ratliff_rush_cap():
    with pytest.raises(ClosureCapExceeded) as err:
        ratliff_rush_chain(I("x^4", "x^3*y", "x*y^3", "y^4"), cap=1)
    assert len(err.value.chain) == 1


def test_monomial_closure_examples():
    assert exps(monomial_integral_closure(I("x^2", "y^2"))) == [(0, 2), (1, 1), (2, 0)]
    assert ideal_equals(monomial_integral_closure(I("x^6", "y^6")), maximal_ideal_power(R2, 6))
    assert ideal_equals(monomial_integral_closure(I("x", "y")), I("x", "y"))
    with pytest.raises(ValueError):
        monomial_integral_closure(I("x + y", "y^2"))


def test_newton_facets_of_a_simplex():
    assert newton_facets([(2, 0), (0, 2)]) == [((0, 1), 0), ((1, 0), 0), ((1, 1), 2)]


small = st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)).filter(any), min_size=1, max_size=4)


def _mp(extra):
    return [(5, 0), (0, 5)] + extra


@settings(max_examples=40)
@given(small)
def test_closure_matches_power_oracle(extra):
    gens = _mp(extra)
    K = Ideal(R2, [R2.monomial(e) for e in gens])
    bar = monomial_integral_closure(K)
    for a in [(i, j) for i in range(6) for j in range(6)]:
        assert contains_poly(bar, R2.monomial(a)) == oracles.integral_over(gens, a)


@settings(max_examples=25)
@given(small, small)
def test_closure_idempotent_monotone_and_above_rr(e1, e2):
    A = Ideal(R2, [R2.monomial(e) for e in _mp(e1)])
    B = Ideal(R2, [R2.monomial(e) for e in _mp(e1 + e2)])
    Abar = monomial_integral_closure(A)
    assert ideal_equals(monomial_integral_closure(Abar), Abar)
    assert ideal_contains(monomial_integral_closure(B), Abar)
    rr = ratliff_rush(A)
    assert ideal_contains(rr, A) and ideal_contains(Abar, rr)
    assert ideal_equals(ratliff_rush(rr), rr)


def test_three_variable_closure():
    K = I("x^2", "y^2", "z^2", ring=R3)
    bar = monomial_integral_closure(K)
    assert ideal_equals(bar, maximal_ideal_power(R3, 2))


def test_witness_search():
    g, r = integrality_witness_search(I("x^2", "y^2"), 2)
    assert str(g) == "x*y" and r == 1
    assert integrality_witness_search(maximal_ideal_power(R2, 3), 6) is None


def test_verdicts():
    rep = is_integrally_closed(maximal_ideal_power(R2, 5))
    assert (rep.integrally_closed, rep.method) == ("closed", "monomial-exact")
    rep = is_integrally_closed(I("x^6", "y^6", "x^5*y + x^2*y^4"))
    assert rep.integrally_closed == "not-closed" and rep.witness is not None
    assert not contains_poly(rep.input, rep.witness)
    rep = is_integrally_closed(I("x + y^2", "y^3"))
    assert rep.integrally_closed in ("unknown", "not-closed")  # never "closed" off monomials


def test_rr_powers():
    assert rr_power_witness(I("x^4", "x^3*y", "x*y^3", "y^4"), 3) == 1
    assert rr_power_witness(maximal_ideal_power(R2, 2), 3) is None
