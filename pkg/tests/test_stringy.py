from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adestringy.catalog import Divisor, SingularitySpec, StratifiedResolution, Stratum, build_resolution
from adestringy.exactalg import ONE, W, ZERO, Polynomial, RationalFunction, monomial, rf_make
from adestringy.stringy import (
    Verdict,
    assemble_global,
    contribution_from_strata,
    duality_check,
    hodge_numbers,
    make_report,
    stringy_euler_direct,
)

from conftest import GRID


def naive_contribution(res: StratifiedResolution) -> RationalFunction:
    # term by term through generic rational arithmetic, no cyclotomic bookkeeping
    disc = {dv.id: dv.discrepancy for dv in res.divisors}
    total = RationalFunction(0)
    for s in res.strata:
        term = RationalFunction(s.hodge)
        for i in s.divisor_ids:
            term = term * rf_make(W - 1, monomial(disc[i] + 1) - 1)
        total = total + term
    return total


def test_a1_m5():
    res = build_resolution(SingularitySpec("A", 1, 5))
    assert contribution_from_strata(res) == rf_make(monomial(4) - 1, monomial(3) - 1)
    assert stringy_euler_direct(res) == Fraction(4, 3)


def test_d4_m5():
    res = build_resolution(SingularitySpec("D", 4, 5))
    expected = 1 + rf_make((W - 1) * (W**3 + 2 * W**5 + W**7), monomial(7) - 1)
    assert contribution_from_strata(res) == expected
    assert stringy_euler_direct(res) == Fraction(11, 7)


def test_d4_m4():
    res = build_resolution(SingularitySpec("D", 4, 4))
    assert contribution_from_strata(res) == RationalFunction(2 * W + 1)
    assert stringy_euler_direct(res) == 3


def test_empty_resolution():
    empty = StratifiedResolution((), ())
    assert contribution_from_strata(empty) == RationalFunction(0)
    assert stringy_euler_direct(empty) == 0


@pytest.mark.parametrize("spec", [s for s in GRID if s.m in (3, 5, 6) and s.n <= 10], ids=str)
def test_matches_naive_summation(spec):
    res = build_resolution(spec)
    assert contribution_from_strata(res) == naive_contribution(res)


divisor_sets = st.lists(
    st.tuples(st.frozensets(st.integers(0, 3), min_size=1, max_size=3),
              st.lists(st.integers(-3, 3), max_size=4)),
    max_size=6, unique_by=lambda t: t[0])


@given(st.lists(st.integers(0, 8), min_size=4, max_size=4), divisor_sets)
def test_random_resolutions_match_naive_summation(discs, strata):
    res = StratifiedResolution(
        tuple(Divisor(i, f"D{i + 1}", a) for i, a in enumerate(discs)),
        tuple(Stratum(tuple(sorted(ids)), Polynomial(h))
              for ids, h in strata),
    )
    value = contribution_from_strata(res)
    assert value == naive_contribution(res)
    assert value.den.leading > 0


@pytest.mark.parametrize("spec", [s for s in GRID if s.m >= 4], ids=str)
def test_denominator_divides_the_largest_factor(spec):
    res = build_resolution(spec)
    value = contribution_from_strata(res)
    alpha = res.max_discrepancy()
    _, rem = (monomial(alpha + 1) - 1).divmod_exact(value.den)
    assert rem.is_zero()
    assert value(0) == 1


def test_assemble():
    smooth = W**3 + 5 * W**2 - W - 2
    E = assemble_global(smooth, [RationalFunction(2 * W + 1)] * 3)
    assert E == RationalFunction(W**3 + 5 * W**2 + 5 * W + 1)
    assert assemble_global(smooth, []) == RationalFunction(smooth)
    f = 1 + rf_make(W**2, W**3 - 1)
    assert assemble_global(ZERO, [f]) == f


def test_hodge_numbers_examples():
    h = hodge_numbers(W**3 + 5 * W**2 + 5 * W + 1, 3)
    assert (h.values, h.nonnegative, h.palindromic, h.ends_are_one) == ((1, 5, 5, 1), True, True, True)
    assert hodge_numbers(ONE, 0).values == (1,)
    bad = hodge_numbers(W**2 + 3 * W + 1, 3)
    assert bad.values == (1, 3, 1, 0)
    assert not bad.ends_are_one
    neg = hodge_numbers(W**2 - W + 1, 2)
    assert neg.negative == (1,)
    with pytest.raises(ValueError):
        hodge_numbers(W**5, 3)


@pytest.mark.parametrize("f, d, ok", [
    (RationalFunction(W**3 + 5 * W**2 + 5 * W + 1), 3, True),
    (RationalFunction(W + 2), 1, False),
    (RationalFunction(monomial(4)), 4, False),
    (RationalFunction(monomial(4) + 1), 4, True),
])
def test_duality_examples(f, d, ok):
    assert duality_check(f, d) is ok


def test_contributions_are_not_self_dual():
    f = contribution_from_strata(build_resolution(SingularitySpec("A", 1, 5)))
    assert not duality_check(f, 4)


def test_report():
    E = RationalFunction(W**3 + 5 * W**2 + 5 * W + 1)
    rep = make_report("x", E, dim=3, projective=True)
    assert rep.ok
    assert rep.hodge_numbers == (1, 5, 5, 1)
    assert rep.checks["duality"] is Verdict.PASS
    assert rep.to_json()["euler"] == "12/1"
    quasi = make_report("x", E)
    assert quasi.checks["duality"] is Verdict.NA


def test_report_flags_failures():
    rep = make_report("x", RationalFunction(W**2 - W + 1), dim=2, projective=True)
    assert rep.checks["nonnegative"] is Verdict.FAIL
    assert not rep.ok
    a1 = rf_make(monomial(4) - 1, monomial(3) - 1)
    rep = make_report("a1", a1, euler_direct=Fraction(4, 3))
    assert rep.hodge_numbers is None and not rep.is_polynomial
    assert rep.checks["nonnegative"] is Verdict.NA
    assert rep.checks["euler_consistent"] is Verdict.PASS
    assert make_report("a1", a1, euler_direct=Fraction(1)).checks["euler_consistent"] is Verdict.FAIL


def test_stratum_euler_values_are_integers():
    res = build_resolution(SingularitySpec.of("E8", m=7))
    for s in res.strata:
        assert isinstance(s.hodge(1), int)
