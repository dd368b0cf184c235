import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from alexkit import PiecewiseLinear, Q, pl_compose, pl_eval, pl_invert, pl_slope_bounds, pl_sup_abs
from alexkit.errors import DomainError, NotIncreasing
from alexkit.numeric import first_difference
from alexkit.random_gen import random_increasing_pl, random_rational

W = PiecewiseLinear.from_points([(0, 0), (2, 1), (3, 2)])
seeds = st.integers(0, 2**32 - 1)


def random_pl(rng, lo, hi, pieces=5, vlo=-3, vhi=3):
    ts = sorted({lo + random_rational(rng) * (hi - lo) for _ in range(pieces - 1)})
    ts = [F(lo)] + ts + [F(hi)]
    return PiecewiseLinear(tuple(ts), tuple(F(rng.randint(vlo * 4, vhi * 4), 4) for _ in ts))


def test_rationals_are_canonical():
    assert Q("2/4") == F(1, 2) and Q("2/4").denominator == 2
    assert Q(3) == F(3)
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(TypeError):
        Q(True)


def test_eval_examples():
    assert pl_eval(PiecewiseLinear.identity(0, 1), F(1, 2)) == F(1, 2)
    assert pl_eval(W, 3) == 2
    assert pl_eval(W, F(5, 2)) == F(3, 2)
    with pytest.raises(DomainError):
        pl_eval(W, 4)


def test_construction_rejects_bad_breakpoints():
    with pytest.raises(DomainError):
        PiecewiseLinear((F(0),), (F(0),))
    with pytest.raises(DomainError):
        PiecewiseLinear((F(0), F(0)), (F(0), F(1)))
    with pytest.raises(DomainError):
        PiecewiseLinear((F(0), F(1)), (F(0),))


def test_compose_examples():
    inner = PiecewiseLinear.from_points([(0, 0), (1, F(1, 2))])
    outer = PiecewiseLinear.from_points([(0, 0), (1, 2)])
    assert pl_compose(outer, inner).same_function(PiecewiseLinear.identity(0, 1))
    g = random_pl(random.Random(1), 0, 1, vlo=0, vhi=1)
    g = PiecewiseLinear(g.breakpoints, tuple(min(max(v, F(0)), F(1)) for v in g.values))
    assert pl_compose(PiecewiseLinear.identity(0, 1), g).same_function(g)
    with pytest.raises(DomainError):
        pl_compose(PiecewiseLinear.identity(0, 1), W)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_compose_matches_pointwise(seed):
    rng = random.Random(seed)
    outer = random_pl(rng, -3, 3)
    inner = random_pl(rng, 0, 2)
    h = pl_compose(outer, inner)
    for _ in range(100):
        t = random_rational(rng, 0, 2)
        assert h(t) == outer(inner(t))


def test_invert_examples():
    ident = PiecewiseLinear.identity(0, 1)
    assert pl_invert(ident) == ident
    assert pl_invert(W) == PiecewiseLinear.from_points([(0, 0), (1, 2), (2, 3)])
    assert pl_slope_bounds(pl_invert(W)) == (1, 2)
    with pytest.raises(NotIncreasing):
        pl_invert(PiecewiseLinear.from_points([(0, 0), (1, 1), (2, 1)]))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_invert_round_trip(seed):
    rng = random.Random(seed)
    f = random_increasing_pl(rng, F(0), F(2), F(1), F(5))
    inv = pl_invert(f)
    lo, hi = pl_slope_bounds(f)
    assert pl_slope_bounds(inv) == (1 / hi, 1 / lo)
    assert pl_compose(f, inv).same_function(PiecewiseLinear.identity(1, 5))
    for _ in range(20):
        t = random_rational(rng, 0, 2)
        assert inv(f(t)) == t


def test_sup_abs_examples():
    assert pl_sup_abs(PiecewiseLinear.identity(0, 1)) == 1
    assert pl_sup_abs(PiecewiseLinear.from_points([(0, 0), (F(1, 2), F(1, 2)), (1, 0)])) == F(1, 2)
    assert pl_sup_abs(PiecewiseLinear.from_points([(0, 0), (1, -3), (2, 2)])) == 3


def test_slope_bounds_examples():
    assert pl_slope_bounds(PiecewiseLinear.identity(0, 1)) == (1, 1)
    assert pl_slope_bounds(W) == (F(1, 2), 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_sup_abs_ignores_refinement(seed):
    rng = random.Random(seed)
    f = random_pl(rng, 0, 1)
    g = f.refine(random_rational(rng) for _ in range(4))
    assert pl_sup_abs(g) == pl_sup_abs(f)
    assert g.normalize() == f.normalize()
    assert first_difference(f, g) is None


def test_first_difference_finds_witness():
    f = PiecewiseLinear.from_points([(0, 0), (1, 1), (2, 2)])
    g = PiecewiseLinear.from_points([(0, 0), (1, 2), (2, 2)])
    assert first_difference(f, g) == 1
    assert first_difference(f, PiecewiseLinear.identity(0, 3)) == 0


def test_algebra():
    f = PiecewiseLinear.from_points([(0, 0), (1, 2)])
    g = PiecewiseLinear.from_points([(0, 1), (F(1, 2), 0), (1, 1)])
    s = f + g
    assert s(F(1, 2)) == 1 and s(1) == 3
    assert (s - g).same_function(f)
    assert (-f)(1) == -2 and (3 * f)(1) == 6
    assert f.slope_at(1) == 2 and g.slope_at(F(1, 2)) == 2
