from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from avoidkit.rational import Polynomial, verify_outcome
from avoidkit.tsuff import (
    EXACT,
    GRID,
    RHS,
    build_system,
    check_at,
    dependence_identities,
    equation_rows,
    eulerian_identities,
    exact_region,
    format_sets,
    grid_sweep,
    maximal_sets,
)
from oracles import float_feasible, sym_coeffs, sym_eulerian, sym_term, tsuff_matrix_float

X = Polynomial([0, 1])
Y = 1 - X


def fs(*sets):
    return [frozenset(s) for s in sets]


# -- system construction -------------------------------------------------------------

def test_k4_s2_rows():
    sys_ = build_system(4, {2})
    assert sys_.indices == (0, 1, 3)
    zero = Polynomial()
    assert sys_.rows == (
        (zero, zero, X),
        (Y, X, zero),
        (zero, Y, zero),
    )


def test_k5_s2_rows():
    sys_ = build_system(5, {2})
    assert sys_.indices == (0, 1, 3, 4)
    zero = Polynomial()
    half = Fraction(1, 2)
    assert sys_.rows == (
        (zero, zero, X * Y, (X ** 2).scale(half)),
        ((Y ** 2).scale(half), X * Y, zero, zero),
        (zero, (Y ** 2).scale(half), (X ** 2).scale(half), zero),
    )


@pytest.mark.parametrize("k,S", [(4, {2}), (7, {3}), (9, {2, 4, 5}), (12, {1, 6})])
@pytest.mark.parametrize("x", [Fraction(1, 7), Fraction(1, 2), Fraction(5, 6)])
def test_matrix_matches_float_formula(k, S, x):
    ours = build_system(k, S).matrix_at(x)
    ref = tsuff_matrix_float(k, S, float(x))
    for r in range(3):
        assert [float(v) for v in ours[r]] == pytest.approx(ref[r], rel=1e-12, abs=1e-15)


def test_bad_inputs():
    with pytest.raises(ValueError):
        build_system(3, {0, 1, 2})
    with pytest.raises(ValueError):
        build_system(5, {5})
    with pytest.raises(ValueError):
        check_at(build_system(5, {2}), 1)


# -- point checks ----------------------------------------------------------------

def test_k4_at_quarter():
    out = check_at(build_system(4, {2}), Fraction(1, 4))
    assert out.solution == (Fraction(8, 9), Fraction(4, 3), Fraction(4))


def test_k4_at_two_thirds_infeasible():
    sys_ = build_system(4, {2})
    out = check_at(sys_, Fraction(2, 3))
    assert not out.feasible
    assert verify_outcome(sys_.matrix_at(Fraction(2, 3)), RHS, out)
    assert sum(out.certificate) < 0


def test_k5_at_half():
    sys_ = build_system(5, {2})
    out = check_at(sys_, Fraction(1, 2))
    assert out.feasible
    A = sys_.matrix_at(Fraction(1, 2))
    p = (0, 4, 4, 0)
    assert all(sum(a * v for a, v in zip(row, p)) == 1 for row in A)


@given(st.integers(3, 11).flatmap(lambda k: st.tuples(st.just(k), st.sets(st.integers(0, k - 1), max_size=k - 1))),
       st.fractions(min_value=0, max_value=1, max_denominator=50).filter(lambda x: 0 < x < 1))
def test_point_outcomes_verify_and_agree_with_float_lp(data, x):
    k, S = data
    sys_ = build_system(k, S)
    out = check_at(sys_, x)
    A = sys_.matrix_at(x)
    assert verify_outcome(A, RHS, out)
    if not out.feasible:
        # all-ones rhs, so the certificate has a negative coordinate sum
        assert sum(out.certificate) < 0
    assert out.feasible == float_feasible(A, RHS) or _marginal(k, S, x)


def _marginal(k, S, x):
    # float solver may disagree only at an exact region endpoint
    rep = exact_region(build_system(k, S))
    return any(seg.lo.is_rational and seg.lo.value == x or seg.hi.is_rational and seg.hi.value == x
               for seg in rep.segments)


# -- grid and exact regions ----------------------------------------------------------

def test_k4_grid_d8():
    rep = grid_sweep(build_system(4, {2}), 8)
    assert [(x, o.feasible) for x, o in rep.points] == [(Fraction(j, 8), j <= 4) for j in range(1, 8)]
    assert rep.witness == Fraction(5, 8)
    assert not rep.holds


def test_k5_grid_d200():
    rep = grid_sweep(build_system(5, {2}), 200)
    assert len(rep.points) == 199 and rep.holds


def test_k6_s23_has_a_witness():
    rep = grid_sweep(build_system(6, {2, 3}), 1000, stop_at_failure=True)
    assert rep.witness is not None
    out = check_at(build_system(6, {2, 3}), rep.witness)
    assert not out.feasible


def test_k4_exact_region():
    rep = exact_region(build_system(4, {2}))
    assert rep.feasible_region() == "(0, 1/2]"
    assert rep.verdict == "fails"


def test_k5_exact_region():
    rep = exact_region(build_system(5, {2}))
    assert rep.feasible_region() == "(0, 1)"
    assert rep.holds


def test_k6_s23_region_has_irrational_ends():
    rep = exact_region(build_system(6, {2, 3}))
    feas = [s for s in rep.segments if s.feasible]
    assert len(feas) == 2
    ends = [feas[0].hi, feas[1].lo]
    # (5 -+ sqrt 5)/10
    assert all(not e.is_rational for e in ends)
    assert ends[0].approx() == pytest.approx((5 - 5 ** 0.5) / 10)
    assert ends[1].approx() == pytest.approx((5 + 5 ** 0.5) / 10)


@pytest.mark.parametrize("k,S", [(5, {2}), (6, {3}), (7, {2, 4}), (8, {3, 5}), (9, {2, 4, 5}), (10, {2, 5, 6}), (6, {2, 3})])
def test_grid_agrees_with_exact_region(k, S):
    sys_ = build_system(k, S)
    rep = exact_region(sys_)
    grid = grid_sweep(sys_, 60)
    for x, o in grid.points:
        inside = any(_contains(seg, x) for seg in rep.segments if seg.feasible)
        assert inside == o.feasible, x


def _contains(seg, x):
    from avoidkit.rational import RealRoot

    r = RealRoot.rational(x)
    lo_ok = seg.lo < r or (seg.lo_closed and seg.lo == r)
    hi_ok = r < seg.hi or (seg.hi_closed and seg.hi == r)
    return lo_ok and hi_ok


def test_region_json_shape():
    data = exact_region(build_system(4, {2})).to_json()
    assert data["mode"] == EXACT and data["region"] == "(0, 1/2]"
    grid = grid_sweep(build_system(4, {2}), 8).to_json(include_points=False)
    assert grid["mode"] == GRID and len(grid["witnesses"]) == 3


# -- table rows ----------------------------------------------------------------

@pytest.mark.parametrize("k,expected", [
    (5, fs({2})),
    (6, fs({2}, {3})),
    (7, fs({3}, {2, 4})),
    (8, fs({2, 4}, {2, 5}, {3, 5})),
])
def test_small_rows(k, expected):
    assert sorted(maximal_sets(k), key=sorted) == sorted(expected, key=sorted)


def test_small_rows_exact_mode():
    assert maximal_sets(6, mode=EXACT) == fs({2}, {3})
    assert maximal_sets(7, mode=EXACT) == fs({3}, {2, 4})


def test_format_sets():
    assert format_sets(fs({3}, {2, 4})) == "{3} {2,4}"


@pytest.mark.parametrize("k,S,x", [
    (9, {2, 4, 5}, Fraction(3, 5)),
    (9, {3, 4, 6}, Fraction(2, 5)),
    (10, {2, 5, 6}, Fraction(5, 8)),
    (10, {3, 4, 7}, Fraction(3, 8)),
])
def test_disputed_sets_fail_at_certified_points(k, S, x):
    # independent float LP built from the written-out formulas agrees the point is infeasible
    sys_ = build_system(k, S)
    out = check_at(sys_, x)
    assert not out.feasible and verify_outcome(sys_.matrix_at(x), RHS, out)
    assert not float_feasible(tsuff_matrix_float(k, S, float(x)), [1, 1, 1])


# -- identities ----------------------------------------------------------------

@pytest.mark.parametrize("k", range(5, 22, 2))
def test_eulerian_identities(k):
    rep = eulerian_identities(k)
    assert rep.holds
    f1, f2, f3 = sym_eulerian(k)
    assert [Fraction(str(c)) for c in sym_coeffs(f1)] == list(rep.f1.coeffs)
    assert [Fraction(str(c)) for c in sym_coeffs(f3)] == list(rep.f3.coeffs)
    target = (1 - 2 * sympy.Symbol("x")) ** (k - 3) / sympy.factorial(k - 3)
    assert sympy.expand(f2 - f1 - target) == 0


def test_k5_identities_by_hand():
    rep = eulerian_identities(5)
    assert rep.f1 == rep.f3 == X * Y
    assert rep.f2 - rep.f1 == Polynomial([1, -4, 4]).scale(Fraction(1, 2))


def test_eulerian_identities_reject_even():
    with pytest.raises(ValueError):
        eulerian_identities(6)


@given(st.integers(3, 10), st.fractions(min_value=0, max_value=1, max_denominator=97).filter(lambda x: 0 < x < 1))
def test_dependence_relations(k, x):
    assert dependence_identities(k, x).holds


@pytest.mark.parametrize("k", [4, 6, 9])
def test_equation_rows_match_sympy(k):
    x = Fraction(2, 7)
    rows = equation_rows(k, x)
    sx = sympy.Rational(2, 7)
    xs = sympy.Symbol("x")
    assert rows["e4"][:k] == [Fraction(str(sym_term(i - 2, k - 1 - i).subs(xs, sx))) for i in range(k)]
    assert rows["e5"][:k] == [Fraction(str(sym_term(i, k - 3 - i).subs(xs, sx))) for i in range(k)]
    assert rows["e6"][:k] == [Fraction(str(sym_term(i - 1, k - 2 - i).subs(xs, sx))) for i in range(k)]
