"""Finitely presented compact subsets of the line and their gaps."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Tuple

from .errors import DegenerateParameters, EmptySet, MalformedInterval, ZeroMeasure
from .numeric import Q, RationalLike

Interval = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Gap:
    left: Fraction
    right: Fraction

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    def __contains__(self, x) -> bool:
        return self.left < x < self.right


@dataclass(frozen=True)
class CompactSet:
    """Ordered, strictly separated closed intervals; singletons allowed.

    Build instances with :func:`make_compact_set`, which sorts and merges
    arbitrary input.  The constructor only checks the canonical invariants.
    """

    components: Tuple[Interval, ...]

    def __post_init__(self):
        comps = tuple((Q(a), Q(b)) for a, b in self.components)
        if not comps:
            raise EmptySet("a compact set needs at least one component")
        for a, b in comps:
            if a > b:
                raise MalformedInterval(f"[{a}, {b}] has a > b")
        for (_, b), (a, _) in zip(comps, comps[1:]):
            if not b < a:
                raise MalformedInterval("components must be sorted and strictly separated")
        if sum(b - a for a, b in comps) <= 0:
            raise ZeroMeasure("the set has Lebesgue measure zero")
        object.__setattr__(self, "components", comps)

    @property
    def min(self) -> Fraction:
        return self.components[0][0]

    @property
    def max(self) -> Fraction:
        return self.components[-1][1]

    @cached_property
    def measure(self) -> Fraction:
        return sum((b - a for a, b in self.components), Fraction(0))

    @cached_property
    def _lefts(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, _ in self.components)

    def component_index(self, x: RationalLike) -> int:
        """Index of the component containing ``x``, or -1."""
        x = Q(x)
        i = bisect_right(self._lefts, x) - 1
        if i >= 0 and x <= self.components[i][1]:
            return i
        return -1

    def __contains__(self, x) -> bool:
        return self.component_index(x) >= 0

    def gaps(self) -> Tuple[Gap, ...]:
        return gaps(self)

    def isolated_points(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, b in self.components if a == b)

    def __str__(self):
        parts = [f"{{{a}}}" if a == b else f"[{a}, {b}]" for a, b in self.components]
        return " ∪ ".join(parts)


def make_compact_set(intervals: Iterable[Sequence[RationalLike]]) -> CompactSet:
    """Sort, validate and merge touching or overlapping intervals."""
    raw = []
    for pair in intervals:
        if len(pair) != 2:
            raise MalformedInterval(f"expected an endpoint pair, got {pair!r}")
        a, b = Q(pair[0]), Q(pair[1])
        if a > b:
            raise MalformedInterval(f"[{a}, {b}] has a > b")
        raw.append((a, b))
    if not raw:
        raise EmptySet("no intervals given")
    raw.sort()
    merged = [list(raw[0])]
    for a, b in raw[1:]:
        if a <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    if sum(b - a for a, b in merged) == 0:
        raise ZeroMeasure("the intervals have total length zero")
    return CompactSet(tuple((a, b) for a, b in merged))


def measure(K: CompactSet) -> Fraction:
    return K.measure


def gaps(K: CompactSet) -> Tuple[Gap, ...]:
    comps = K.components
    return tuple(Gap(comps[i][1], comps[i + 1][0]) for i in range(len(comps) - 1))


def generate_truncated_reciprocal(exponent: int, N: int, tail=(1, 2)) -> CompactSet:
    """``{0} ∪ {1/n**exponent : n <= N} ∪ [tail]``.

    The truncation leaves an extra gap ``(0, 1/N**exponent)`` that the infinite
    set does not have.
    """
    if exponent < 1 or N < 1:
        raise DegenerateParameters("exponent and N must be positive")
    pts = [(Fraction(0), Fraction(0))]
    pts += [(Fraction(1, n**exponent),) * 2 for n in range(1, N + 1)]
    pts.append((Q(tail[0]), Q(tail[1])))
    return make_compact_set(pts)


def generate_fat_cantor(depth: int, gap_fractions: Sequence[RationalLike]) -> CompactSet:
    """Remove the open middle ``gap_fractions[d]`` of every interval at level ``d``."""
    fracs = [Q(f) for f in gap_fractions]
    if depth < 0 or depth > len(fracs):
        raise DegenerateParameters("depth must lie between 0 and len(gap_fractions)")
    for f in fracs[:depth]:
        if not 0 < f < 1:
            raise DegenerateParameters(f"gap fraction {f} not in (0, 1)")
    intervals = [(Fraction(0), Fraction(1))]
    for f in fracs[:depth]:
        nxt = []
        for a, b in intervals:
            keep = (b - a) * (1 - f) / 2
            nxt += [(a, a + keep), (b - keep, b)]
        intervals = nxt
    return make_compact_set(intervals)
