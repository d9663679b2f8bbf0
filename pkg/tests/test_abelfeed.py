import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelhopf.abelfeed import (
    Realization,
    _symbolic_grades,
    abel_four_ways,
    abel_realization,
    abel_via_feedback,
    abel_via_group_inverse,
    check_grading_preservation,
    devlin,
    feedback_product,
    ferfera,
    ferfera_realization,
    generate_from_realization,
    realization_inverse,
    realization_series,
    toeplitz_inverse_entries,
    verify_fixed_point,
    verify_shuffle_identity,
)
from abelhopf.compose import DeltaPowers, group_inverse
from abelhopf.errors import ShapeMismatch
from abelhopf.polyring import UPoly
from abelhopf.series import NCSeries, graded_component, shuffle_power
from abelhopf.words import degree, enumerate_words
from strategies import small_fractions

z = UPoly.monomial


def brute_abel(m, cap):
    """Coefficients of c_{A,m} from the Picard iteration of z' = sum_i z^{i+1} u_i, z(0) = 1.

    Words are read as z = 1 + sum_i int u_i z^{i+1}; expanding z^{i+1} as a product of
    the current iterate gives the coefficients, one degree at a time.
    """
    c = NCSeries.one(m, cap)
    for _ in range(cap + 1):
        nxt = NCSeries.one(m, cap)
        for i in range(1, m + 1):
            nxt = nxt + shuffle_power(c, i + 1).left_letter(i)
        c = nxt
    return c


def test_ferfera_examples():
    assert ferfera(0) == NCSeries.one(1, 0)
    assert ferfera(5)[(1, 1, 1)] == 6
    for n in range(1, 6):
        assert graded_component(ferfera(5), n) == NCSeries(1, 5, {(1,) * (n - 1): math.factorial(n - 1)})


def test_devlin_examples():
    pieces, _ = devlin(3, 4)
    assert pieces[2] == NCSeries(3, 4, {(1, 1): 2, (2,): 1})
    assert pieces[4] == NCSeries(3, 4, {
        (1, 1, 1, 1): 24, (2, 1, 1): 12, (1, 2, 1): 8, (3, 1): 4, (1, 1, 2): 6, (2, 2): 3, (1, 3): 2,
    })
    assert devlin(2, 3)[0][1] == NCSeries.letter(2, 3, 1)
    with pytest.raises(ValueError):
        devlin(1, 3)


@pytest.mark.parametrize("m, cap", [(2, 6), (3, 6), (4, 5)])
def test_devlin_matches_picard_iteration(m, cap):
    assert devlin(m, cap)[1] == brute_abel(m, cap)


def test_group_inverse_route_examples():
    assert abel_via_group_inverse(3, 4) == devlin(3, 4)[1]
    assert abel_via_group_inverse(2, 4)[(2, 1)] == 3
    assert abel_via_group_inverse(4, 3).constant() == 1


def test_feedback_route_examples():
    assert abel_via_feedback(3, 4)[(3, 1)] == 4
    assert abel_via_feedback(3, 3)[(2, 1)] == 3
    for m, cap in [(2, 3), (3, 4)]:
        assert abel_via_feedback(m, cap)[(1,)] == 1


def test_feedback_product_zero_forward_path():
    zero = tuple(NCSeries.zero(3, 4) for _ in range(3))
    assert feedback_product(zero, DeltaPowers(3)) == zero


def test_feedback_product_rejects_other_feedback():
    c = tuple(NCSeries.zero(3, 4) for _ in range(3))
    with pytest.raises(TypeError):
        feedback_product(c, group_inverse)
    with pytest.raises(ShapeMismatch):
        feedback_product(c[:2], DeltaPowers(3))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_four_way_equality(m):
    routes = abel_four_ways(m, 6)
    ref = routes["devlin"]
    for name, s in routes.items():
        assert s == ref, name


@pytest.mark.parametrize("m", [2, 3, 4])
def test_abel_series_homogeneous_and_positive(m):
    pieces, total = devlin(m, 6)
    for n, piece in enumerate(pieces, 1):
        assert all(degree(w) == n - 1 for w in piece.support())
    assert all(q > 0 and q.denominator == 1 for _, q in total.items())
    # every word up to the cap appears
    assert len(total) == len(enumerate_words(m, 6))


def test_m2_is_specialization_of_m3():
    c2, c3 = devlin(2, 6)[1], devlin(3, 6)[1]
    for w, q in c2.items():
        assert c3[w] == q


@pytest.mark.parametrize("m, cap", [(2, 6), (3, 6)])
def test_fixed_point_passes(m, cap):
    assert verify_fixed_point(m, cap)


def test_fixed_point_detects_perturbation():
    y = devlin(3, 5)[1] + NCSeries.word(3, 5, (2, 1))
    rep = verify_fixed_point(3, 5, y)
    assert not rep and "x2.x1" in rep.detail


@pytest.mark.parametrize("m, cap", [(2, 6), (3, 5)])
def test_shuffle_identity_passes(m, cap):
    assert verify_shuffle_identity(m, cap)


def test_shuffle_identity_rejects_wrong_series():
    bad = devlin(3, 4)[1] + NCSeries.word(3, 4, (1, 1, 2))
    assert not verify_shuffle_identity(3, 4, bad)


def test_realization_examples():
    assert generate_from_realization(Realization([z(2)], 1, [z(1)]), 1, 6) == ferfera(6)
    assert generate_from_realization(abel_realization(3), 1, 6) == devlin(3, 6)[1]
    r = Realization([z(2), z(3)], 1, [UPoly()])
    assert generate_from_realization(r, 1, 5) == NCSeries.zero(2, 5)


def test_lie_derivative_identity_grade_by_grade():
    # each word's polynomial is <c, w> z^{deg w + 1}, so appending x_i multiplies the value at 1 by deg w + 1
    m, cap = 3, 6
    g = [z(i + 1) for i in range(1, m + 1)]
    grades = _symbolic_grades(g, z(1), cap)
    polys = {w: p for level in grades for w, p in level.items()}
    for w, p in polys.items():
        assert p == z(degree(w) + 1, p(1))
        for i in range(1, m + 1):
            if degree(w) + i <= cap:
                assert polys[w + (i,)](1) == (degree(w) + 1) * p(1)


def test_realization_inverse_example():
    inv = realization_inverse(ferfera_realization(3))
    assert inv.g == (z(2), z(3), z(4))
    assert inv.h == (z(1), z(2))
    assert str(inv) == "(z^2, z^3, z^4, 1, z, z^2)"


polys = st.lists(small_fractions, max_size=3).map(UPoly)


@given(polys, polys, polys, polys, polys)
def test_realization_inverse_formula_m3(g1, g2, g3, h1, h2):
    inv = realization_inverse(Realization([g1, g2, g3], 1, [h1, h2]))
    assert inv.h == (-h1, h1 * h1 - h2)
    assert inv.g[2] == g3 - g2 * h1 + g1 * (h1 * h1 - h2)


@given(polys, polys)
def test_realization_inverse_zero_h_is_identity(g1, g2):
    r = Realization([g1, g2], 1, [UPoly()])
    assert realization_inverse(r).g == r.g


@settings(max_examples=15)
@given(polys, polys, polys, polys, polys, small_fractions)
def test_realization_inverse_generates_group_inverse(g1, g2, g3, h1, h2, z0):
    r = Realization([g1, g2, g3], z0, [h1, h2])
    cap = 4
    assert realization_series(realization_inverse(r), cap) == group_inverse(realization_series(r, cap))
    twice = realization_inverse(realization_inverse(r))
    assert realization_series(twice, cap) == realization_series(r, cap)


def test_toeplitz_inverse_entries_multinomial():
    h = [UPoly.const(q) for q in (2, 3, 5)]
    # (1 + 2t + 3t^2 + 5t^3)^{-1} = 1 - 2t + t^2 - 1t^3 + ...
    series = [Fraction(1)]
    coeffs = [1, 2, 3, 5]
    for n in range(1, 4):
        series.append(-sum(coeffs[k] * series[n - k] for k in range(1, n + 1)))
    assert [p(0) for p in toeplitz_inverse_entries(h)] == series[1:]


def test_grading_preservation_cases():
    assert check_grading_preservation(ferfera_realization(3))
    assert check_grading_preservation(abel_realization(4))
    zero_h = Realization([z(2), z(3)], 1, [UPoly()])
    assert check_grading_preservation(zero_h)
    violating = Realization([z(2), z(3), z(4)], 1, [UPoly.const(1), UPoly()])
    rep = check_grading_preservation(violating)
    assert not rep and "hypothesis fails" in rep.detail
