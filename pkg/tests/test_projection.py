import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from alexkit import (
    PiecewiseLinear,
    exceptional_set,
    extended_project,
    fiber,
    make_compact_set,
    phi_map,
    project,
    projection_table,
    psi_map,
    selector,
)
from alexkit.errors import DomainError, NotFiberConstant, NotInSet
from alexkit.projection import FunctionOnK, gap_levels, selector_jumps, selector_right_limit
from alexkit.random_gen import random_compact_set, random_rational

seeds = st.integers(0, 2**32 - 1)
S = lambda *c: make_compact_set(c)  # noqa: E731


def brute_measure_upto(K, x):
    """λ([min K, x] ∩ K) summed component by component."""
    return sum((min(b, x) - a for a, b in K.components if a <= x), F(0))


def brute_fiber(K, t):
    cands = set()
    for a, b in K.components:
        cands.update((a, b))
        y = a + (t - brute_measure_upto(K, a))
        if a <= y <= b:
            cands.add(y)
    return tuple(sorted(x for x in cands if brute_measure_upto(K, x) == t))


def test_project_examples():
    assert project(S((0, 1), (2, 2)), 2) == 1
    assert project(S((0, 1)), 0) == 0
    assert project(S((0, 1), (2, 3)), F(5, 2)) == F(3, 2)
    with pytest.raises(NotInSet):
        project(S((0, 1), (2, 3)), F(3, 2))


def test_extended_project_examples():
    K = S((0, 1), (2, 2))
    assert extended_project(K, F(3, 2)) == 1
    assert extended_project(K, 0) == 0
    with pytest.raises(DomainError):
        extended_project(K, 3)
    assert set(projection_table(S((0, 1), (2, 3), (5, 5))).as_pl.slopes()) <= {0, 1}


def test_selector_examples():
    assert selector(S((0, 1), (2, 2)), 1) == 1
    assert selector(S((3, 4), (5, 6)), 0) == 3
    assert selector(S((0, 1), (2, 3)), F(3, 2)) == F(5, 2)
    with pytest.raises(DomainError):
        selector(S((0, 1)), 2)


def test_fiber_examples():
    assert fiber(S((0, 1), (2, 2), (3, 3)), 1).points == (1, 2, 3)
    assert fiber(S((0, 1)), F(1, 3)).points == (F(1, 3),)
    assert fiber(S((0, 1), (2, 3)), 1).points == (1, 2)
    assert fiber(S((0, 1), (2, 3)), 1).nontrivial


def test_exceptional_set_examples():
    assert exceptional_set(S((0, 1))) == ()
    assert exceptional_set(S((0, F(1, 2)), (1, 1))) == (F(1, 2),)
    assert exceptional_set(S((0, 1), (2, 2), (3, 3))) == (1,)


def test_selector_jump_at_top_level_is_absent():
    # the top level |K| is exceptional when max K is isolated, yet there is no right side to jump to
    K = S((0, 1), (2, 2))
    assert exceptional_set(K) == (1,) == gap_levels(K)
    assert selector_jumps(K) == ()
    with pytest.raises(DomainError):
        selector_right_limit(K, 1)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_projection_matches_brute_force(seed):
    rng = random.Random(seed)
    K = random_compact_set(rng)
    for a, b in K.components:
        for x in (a, b, a + random_rational(rng) * (b - a)):
            assert project(K, x) == brute_measure_upto(K, x)
    for _ in range(20):
        t = random_rational(rng) * K.measure
        assert fiber(K, t).points == brute_fiber(K, t)
        assert selector(K, t) == brute_fiber(K, t)[0]
    for t in set(projection_table(K).cumulative):
        assert fiber(K, t).points == brute_fiber(K, t)
        assert (len(fiber(K, t).points) > 1) == (t in exceptional_set(K))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_selector_laws(seed):
    rng = random.Random(seed)
    K = random_compact_set(rng)
    levels = sorted({random_rational(rng) * K.measure for _ in range(30)} | {F(0), K.measure})
    sel = [selector(K, t) for t in levels]
    assert all(u < v for u, v in zip(sel, sel[1:]))
    for t, x in zip(levels, sel):
        assert project(K, x) == t
    for g in K.gaps():
        assert extended_project(K, g.left) == extended_project(K, (g.left + g.right) / 2) == extended_project(K, g.right)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_jumps_by_shrinking_steps(seed):
    K = random_compact_set(random.Random(seed))
    E = set(exceptional_set(K))
    levels = set(projection_table(K).cumulative) - {K.measure}
    for t in levels:
        steps = [selector(K, t + F(1, 10**k)) - selector(K, t) for k in range(3, 9)]
        # continuous: the step shrinks like delta; jump: it stays above a gap length
        jump = all(s > F(1, 10**k) * 2 for s, k in zip(steps, range(3, 9)))
        assert jump == (t in E), t
    assert set(selector_jumps(K)) == E - {K.measure}


def test_phi_psi_maps():
    K = S((0, 1), (2, 2), (3, 4))
    G = PiecewiseLinear.from_points([(0, 0), (1, 3), (2, -1)])
    F_ = phi_map(K, G)
    assert F_(2) == F_(1) == 3
    assert psi_map(K, F_) == G
    zero = phi_map(K, PiecewiseLinear.from_points([(0, 0), (2, 0)]))
    assert psi_map(K, zero).values == (0, 0)
    with pytest.raises(DomainError):
        phi_map(K, PiecewiseLinear.identity(0, 1))


def test_psi_map_on_samples():
    K = S((0, 1), (2, 2))
    good = lambda x: min(x, F(1))  # noqa: E731
    G = psi_map(K, good, levels=[F(0), F(1, 2), F(1)])
    assert G(F(1, 2)) == F(1, 2)
    with pytest.raises(NotFiberConstant):
        psi_map(K, lambda x: x, levels=[F(0), F(1)])


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_phi_psi_round_trip(seed):
    rng = random.Random(seed)
    K = random_compact_set(rng)
    ts = sorted({random_rational(rng) * K.measure for _ in range(3)} | {F(0), K.measure})
    G = PiecewiseLinear(tuple(ts), (F(0),) + tuple(F(rng.randint(-8, 8), 3) for _ in ts[1:]))
    Fk = phi_map(K, G)
    assert isinstance(Fk, FunctionOnK)
    assert psi_map(K, Fk) == G
    for a, b in K.components:
        x = a + random_rational(rng) * (b - a) if b > a else a
        assert Fk(x) == G(brute_measure_upto(K, x))
    for t in exceptional_set(K):
        assert len({Fk(x) for x in fiber(K, t).points}) == 1
