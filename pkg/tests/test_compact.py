import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from alexkit import gaps, generate_fat_cantor, generate_truncated_reciprocal, make_compact_set, measure
from alexkit.errors import DegenerateParameters, EmptySet, MalformedInterval, ZeroMeasure
from alexkit.random_gen import random_compact_set

seeds = st.integers(0, 2**32 - 1)


def comps(K):
    return [(a, b) for a, b in K.components]


def test_make_compact_set_examples():
    K = make_compact_set([[0, 1], [2, 2]])
    assert comps(K) == [(0, 1), (2, 2)] and measure(K) == 1
    assert comps(make_compact_set([[0, 1], [1, 2]])) == [(0, 2)]
    assert comps(make_compact_set([[2, 3], [0, 1], ["1/2", 2]])) == [(0, 3)]
    with pytest.raises(ZeroMeasure):
        make_compact_set([[0, 0], [1, 1]])
    with pytest.raises(EmptySet):
        make_compact_set([])
    with pytest.raises(MalformedInterval):
        make_compact_set([[1, 0]])


def test_measure_examples():
    assert measure(make_compact_set([[0, 1], [2, 2]])) == 1
    assert measure(make_compact_set([[0, "1/2"], [1, 1]])) == F(1, 2)
    assert measure(make_compact_set([[0, 1], [2, 3]])) == 2


def test_gaps_examples():
    assert gaps(make_compact_set([[0, 1]])) == ()
    g = gaps(make_compact_set([[0, 1], [2, 2], [3, 3]]))
    assert [(x.left, x.right) for x in g] == [(1, 2), (2, 3)]
    g = gaps(make_compact_set([[0, 1], [2, 3]]))
    assert [(x.left, x.right, x.length) for x in g] == [(1, 2, 1)]


def test_membership():
    K = make_compact_set([[0, 1], [2, 2]])
    assert 0 in K and F(1, 2) in K and 2 in K
    assert F(3, 2) not in K and -1 not in K and 3 not in K
    assert K.isolated_points() == (2,)


def test_truncated_reciprocal():
    K = generate_truncated_reciprocal(1, 3)
    assert comps(K) == [(0, 0), (F(1, 3), F(1, 3)), (F(1, 2), F(1, 2)), (1, 2)]
    M = generate_truncated_reciprocal(2, 3)
    assert comps(M) == [(0, 0), (F(1, 9), F(1, 9)), (F(1, 4), F(1, 4)), (1, 2)]
    assert comps(generate_truncated_reciprocal(1, 1)) == [(0, 0), (1, 2)]


def test_fat_cantor():
    assert comps(generate_fat_cantor(0, [])) == [(0, 1)]
    K = generate_fat_cantor(1, [F(1, 4)])
    assert comps(K) == [(0, F(3, 8)), (F(5, 8), 1)] and measure(K) == F(3, 4)
    fr = [F(1, 3), F(1, 5), F(1, 2)]
    prev = None
    for d in range(4):
        K = generate_fat_cantor(d, fr)
        expected = F(1)
        for f in fr[:d]:
            expected *= 1 - f
        assert measure(K) == expected
        if prev is not None:
            # each new component sits inside an old one
            assert all(any(a <= c and d2 <= b for a, b in prev.components) for c, d2 in K.components)
        prev = K
    with pytest.raises(DegenerateParameters):
        generate_fat_cantor(1, [1])
    with pytest.raises(DegenerateParameters):
        generate_fat_cantor(2, [F(1, 2)])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_set_invariants(seed):
    K = random_compact_set(random.Random(seed))
    g = K.gaps()
    assert measure(K) + sum(x.length for x in g) == K.max - K.min
    for x in g:
        assert x.left in K and x.right in K
        assert (x.left + x.right) / 2 not in K
    assert all(a.right <= b.left for a, b in zip(g, g[1:]))
    assert make_compact_set(K.components) == K
