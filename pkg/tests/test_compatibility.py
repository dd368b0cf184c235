import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from alexkit import (
    PiecewiseLinear,
    check_fiber_compatibility,
    check_gap_compatibility,
    compatibility_growth_curve,
    gap_correspondence,
    generate_truncated_reciprocal,
    make_compact_set,
    pl_invert,
    project,
)
from alexkit.compatibility import E_SET_MISMATCH, FIBER_CARDINALITY, minimal_constant
from alexkit.errors import FiberIncompatible, InvalidPsi
from alexkit.random_gen import compatible_triple, random_increasing_pl

seeds = st.integers(0, 2**32 - 1)
K_W = make_compact_set([(0, 1), (2, 3)])
M_W = make_compact_set([(0, 2), (3, 4)])
PSI_W = PiecewiseLinear.from_points([(0, 0), (2, 1), (3, 2)])


def brute_ratios(K, M, psi):
    """Pair the gaps at each level by their order along the line."""
    ratios = []
    for s in sorted({project(M, g.left) for g in M.gaps()}):
        us = [g for g in M.gaps() if project(M, g.left) == s]
        vs = [g for g in K.gaps() if project(K, g.left) == psi(s)]
        assert len(us) == len(vs)
        ratios += [v.length / u.length for u, v in zip(us, vs)]
    return ratios


def test_e_set_mismatch_for_any_psi():
    K = make_compact_set([(0, 1)])
    M = make_compact_set([(0, F(1, 2)), (1, 1)])
    r = check_fiber_compatibility(K, M, PiecewiseLinear.linear(F(1, 2), 2))
    assert not r.compatible and r.reason == E_SET_MISMATCH and r.level == F(1, 2) and r.image == 1
    rng = random.Random(5)
    for _ in range(20):
        psi = random_increasing_pl(rng, F(0), F(1, 2), F(0), F(1))
        r = check_fiber_compatibility(K, M, psi)
        assert not r.compatible and r.reason == E_SET_MISMATCH


def test_e_set_mismatch_from_the_other_side():
    # E_K has a level that nothing maps onto
    r = check_fiber_compatibility(make_compact_set([(0, F(1, 2)), (1, 1)]), make_compact_set([(0, 1)]),
                                  PiecewiseLinear.linear(1, F(1, 2)))
    assert not r.compatible and r.reason == E_SET_MISMATCH and r.image == F(1, 2)


def test_fiber_cardinality_example():
    K = make_compact_set([(0, 1), (2, 2)])
    M = make_compact_set([(0, 1), (2, 2), (3, 3)])
    r = check_fiber_compatibility(K, M, PiecewiseLinear.identity(0, 1))
    assert not r.compatible and r.reason == FIBER_CARDINALITY
    assert (r.level, r.m_count, r.k_count) == (1, 3, 2)
    assert "3 points" in str(r)


def test_self_compatibility():
    K = make_compact_set([(0, 1), (2, 2), (3, 4)])
    m = check_fiber_compatibility(K, K, PiecewiseLinear.identity(0, 2))
    assert m.compatible
    assert all(y == x for s in m.isomorphisms for y, x in m.isomorphisms[s])
    ok, C, corr = check_gap_compatibility(K, K, PiecewiseLinear.identity(0, 2))
    assert ok and C == 1 and all(p.U == p.V for p in corr.pairs)


def test_invalid_psi():
    with pytest.raises(InvalidPsi):
        check_fiber_compatibility(K_W, M_W, PiecewiseLinear.identity(0, 2))
    with pytest.raises(InvalidPsi):
        check_fiber_compatibility(K_W, M_W, PiecewiseLinear.from_points([(0, 0), (1, 3), (3, 2)]))


def test_worked_pair_correspondence():
    m = check_fiber_compatibility(K_W, M_W, PSI_W)
    corr = gap_correspondence(K_W, M_W, m)
    assert len(corr.pairs) == 1
    p = corr.pairs[0]
    assert (p.U.left, p.U.right, p.V.left, p.V.right, p.ratio) == (2, 3, 1, 2, 1)
    assert check_gap_compatibility(K_W, M_W, PSI_W)[:2] == (True, 1)
    gapless = make_compact_set([(0, 1)])
    corr = gap_correspondence(gapless, gapless, check_fiber_compatibility(gapless, gapless, PiecewiseLinear.identity(0, 1)))
    assert corr.pairs == () and corr.constant == 1


def test_gap_check_propagates_incompatibility():
    K = make_compact_set([(0, 1), (2, 2)])
    M = make_compact_set([(0, 1), (2, 2), (3, 3)])
    with pytest.raises(FiberIncompatible) as exc:
        check_gap_compatibility(K, M, PiecewiseLinear.identity(0, 1))
    assert exc.value.report.reason == FIBER_CARDINALITY


def test_truncated_family_ratios():
    N = 6
    K = generate_truncated_reciprocal(1, N)
    M = generate_truncated_reciprocal(2, N)
    _, C, corr = check_gap_compatibility(K, M, PiecewiseLinear.identity(0, 1))
    ratios = {(p.U.left, p.U.right): p.ratio for p in corr.pairs}
    for n in range(1, N):
        assert ratios[(F(1, (n + 1) ** 2), F(1, n * n))] == F(n * (n + 1), 2 * n + 1)
    assert ratios[(0, F(1, N * N))] == N
    assert C == N


def test_growth_curve():
    assert compatibility_growth_curve((1, 2), [1, 3]) == [(1, 1), (3, 3)]
    curve = compatibility_growth_curve((1, 2), range(1, 21))
    assert all(C >= N for N, C in curve if N >= 2)
    assert all(c1 <= c2 for (_, c1), (_, c2) in zip(curve, curve[1:]))


def test_minimal_constant():
    assert minimal_constant([]) == 1
    assert minimal_constant([F(1, 3), F(2)]) == 3


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_compatible_triples(seed):
    K, M, psi = compatible_triple(random.Random(seed))
    m = check_fiber_compatibility(K, M, psi)
    assert m.compatible
    corr = gap_correspondence(K, M, m)
    assert len(corr.pairs) == len(M.gaps()) == len(K.gaps())
    for p in corr.pairs:
        assert project(K, p.V.left) == psi(project(M, p.U.left))
    ratios = brute_ratios(K, M, psi)
    assert sorted(ratios) == sorted(p.ratio for p in corr.pairs)
    C = corr.constant
    assert C == max([max(r, 1 / r) for r in ratios], default=F(1))
    if ratios:
        below = C - F(1, 1000)
        assert any(not (1 / below <= r <= below) for r in ratios)
    # swapping roles with the inverse map keeps compatibility and the constant
    m2 = check_fiber_compatibility(M, K, pl_invert(psi))
    assert m2.compatible and gap_correspondence(M, K, m2).constant == C
