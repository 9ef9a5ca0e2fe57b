from fractions import Fraction

import pytest

from fsignature.errors import GapFormulaViolation
from fsignature.fsig import collinear, fsig_value, slope
from fsignature.poly import RingContext
from fsignature.syzygy import (GapSample, LinearFormProduct, evaluate_limit, gap_series,
                               limiting_polynomial, monsky_bound_holds, monsky_hypothesis,
                               syzygy_gap)

Fr = Fraction
FORMS = {2: ["x", "y"], 3: ["x", "y", "x+y"], 4: ["x", "y", "x+y", "x+2*y"]}


def lines(p, r):
    return LinearFormProduct.parse(RingContext.make(p), FORMS[r])


def test_construction_checks():
    R = RingContext.make(5)
    with pytest.raises(ValueError):
        LinearFormProduct.parse(R, ["x", "2*x"])
    with pytest.raises(ValueError):
        LinearFormProduct.parse(R, ["x", "x*y"])
    with pytest.raises(ValueError):
        LinearFormProduct.parse(R, ["x"])
    with pytest.raises(ValueError):
        LinearFormProduct.parse(RingContext.make(5, "x,y,z"), ["x", "y"])
    assert lines(5, 3).product == R.parse("x^2*y + x*y^2")


def test_from_polynomial():
    R = RingContext.make(7)
    F = LinearFormProduct.from_polynomial(R.parse("3*x*y*(x+y)*(x+2*y)"))
    assert F.r == 4 and F.product == R.parse("3*x*y*(x+y)*(x+2*y)")
    with pytest.raises(ValueError):
        LinearFormProduct.from_polynomial(R.parse("x^2*y"))
    with pytest.raises(ValueError):
        LinearFormProduct.from_polynomial(R.parse("x^2+y^2"))  # irreducible over F_7


def test_gap_examples():
    assert syzygy_gap(lines(3, 2), 1, 1) == GapSample(1, 1, 5, 0)
    assert syzygy_gap(lines(5, 3), 3, 1) == GapSample(1, 3, 25, 1)
    # f^0 = 1 generates the unit ideal: both syzygies of (x^q, y^q, 1) have degree q
    assert syzygy_gap(lines(5, 3), 0, 2) == GapSample(2, 0, 0, 0)


def test_gap_formula_needs_linear_factors():
    R = RingContext.make(5)
    # not a product of distinct linear forms; built by hand to bypass validation
    F = LinearFormProduct.__new__(LinearFormProduct)
    object.__setattr__(F, "ring", R)
    object.__setattr__(F, "forms", (R.parse("y^2-x^3"), R.parse("x")))
    with pytest.raises(GapFormulaViolation):
        for a in range(1, 6):
            syzygy_gap(F, a, 1)


def test_monsky_examples():
    F = lines(5, 3)
    assert monsky_bound_holds(F, 3, 1, 1) is True
    assert monsky_bound_holds(F, 3, 1, 2) is False
    assert monsky_bound_holds(F, 4, 1, 0) is None  # ra = 12 > 2q
    assert monsky_hypothesis(3, [1, 1, 3], 5) is False
    assert monsky_hypothesis(3, [2, 2, 3], 5) is True
    with pytest.raises(ValueError):
        monsky_hypothesis(3, [1, 1], 5)


@pytest.mark.parametrize("p", [5, 7])
@pytest.mark.parametrize("e", [1, 2])
@pytest.mark.parametrize("r", [2, 3, 4])
def test_monsky_bound_on_all_hypothesis_samples(p, e, r):
    F = lines(p, r)
    q = p**e
    for a in range(1, q + 1):
        if not monsky_hypothesis(r, a, q):
            continue
        gs = syzygy_gap(F, a, e)
        assert monsky_bound_holds(F, a, e, gs.delta) is True
        if r == 2:
            assert gs.delta == 0


def test_limiting_polynomial():
    assert limiting_polynomial(3) == (Fr(9, 4), -3, 1)
    assert limiting_polynomial(4) == (4, -4, 1)
    assert limiting_polynomial(2) == (1, -2, 1)
    assert all(evaluate_limit(2, Fr(k, 7)) == (1 - Fr(k, 7)) ** 2 for k in range(8))
    with pytest.raises(ValueError):
        limiting_polynomial(1)


def test_gap_series_three_lines():
    rows = gap_series(lines(5, 3), 1)
    assert [(r.a, r.gap, r.residual) for r in rows] == [
        (1, Fr(1, 5), Fr(1, 100)), (2, 0, 0), (3, Fr(1, 5), Fr(1, 100))]
    assert all(r.in_hypothesis for r in rows)


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (7, 1)])
def test_gap_series_normal_crossing_is_flat(p, e):
    assert all(r.residual == 0 and r.gap == 0 for r in gap_series(lines(p, 2), e))


@pytest.mark.parametrize("r", [3, 4])
@pytest.mark.parametrize("p", [5, 7])
def test_residual_identity_at_every_row(r, p):
    q = p**2
    for row in gap_series(lines(p, r), 2):
        s = fsig_value(lines(p, r).product, row.a, 2)
        assert s == evaluate_limit(r, row.t) - (row.gap / 2) ** 2
        assert row.t == Fr(row.a, q)


def test_uniform_convergence_trend():
    maxima = []
    for p in (5, 7, 11):
        rows = [row for row in gap_series(lines(p, 3), 1) if row.in_hypothesis]
        worst = max(row.residual for row in rows)
        assert worst <= Fr(1, p) ** 2 / 4
        maxima.append(worst)
    assert maxima == sorted(maxima, reverse=True)


@pytest.mark.parametrize("e", [2, 3])
def test_slope_near_threshold_is_minus_three_over_p(e):
    p = 5
    f = lines(p, 3).product
    c = Fr(3, 5)
    q = p**e
    left = c - Fr(1, 3 * p)
    points = [(Fr(a, q), fsig_value(f, a, e)) for a in range(q * 3 // 5 + 1)
              if left <= Fr(a, q) <= c]
    assert len(points) >= 2
    assert points[-1] == (c, 0)
    assert fsig_value(f, 14, 2) == Fr(3, 125)
    for P, Q in zip(points, points[1:]):
        assert slope(P, Q) == Fr(-3, p)
    if len(points) >= 3:
        assert collinear(points)
