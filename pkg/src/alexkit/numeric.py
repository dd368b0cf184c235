"""Exact rational scalars and continuous piecewise-linear functions.

Every scalar in the library is a :class:`fractions.Fraction`.  A
:class:`PiecewiseLinear` is stored by its breakpoints and the values taken
there; between breakpoints it interpolates linearly.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from .errors import DomainError, NotIncreasing

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def Q(value: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and Fractions to a Fraction.

    Floats are refused: they would smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def fmt(q: Fraction) -> str:
    """Canonical ``"p/q"`` text (``"p"`` when the denominator is 1)."""
    return str(q)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous map on ``[breakpoints[0], breakpoints[-1]]``, linear between breakpoints."""

    breakpoints: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        ts = tuple(Q(t) for t in self.breakpoints)
        vs = tuple(Q(v) for v in self.values)
        if len(ts) < 2:
            raise DomainError("a piecewise-linear function needs at least two breakpoints")
        if len(ts) != len(vs):
            raise DomainError("breakpoints and values differ in length")
        for a, b in zip(ts, ts[1:]):
            if not a < b:
                raise DomainError(f"breakpoints not strictly increasing at {a}, {b}")
        object.__setattr__(self, "breakpoints", ts)
        object.__setattr__(self, "values", vs)

    @classmethod
    def from_points(cls, points: Iterable[Tuple[RationalLike, RationalLike]]) -> "PiecewiseLinear":
        pts = list(points)
        return cls(tuple(Q(t) for t, _ in pts), tuple(Q(v) for _, v in pts))

    @classmethod
    def identity(cls, lo: RationalLike, hi: RationalLike) -> "PiecewiseLinear":
        lo, hi = Q(lo), Q(hi)
        return cls((lo, hi), (lo, hi))

    @classmethod
    def linear(cls, hi: RationalLike, slope: RationalLike) -> "PiecewiseLinear":
        """``t -> slope * t`` on ``[0, hi]``."""
        hi, slope = Q(hi), Q(slope)
        return cls((Fraction(0), hi), (Fraction(0), slope * hi))

    @property
    def lo(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def hi(self) -> Fraction:
        return self.breakpoints[-1]

    @property
    def points(self):
        return list(zip(self.breakpoints, self.values))

    def slopes(self) -> Tuple[Fraction, ...]:
        ts, vs = self.breakpoints, self.values
        return tuple((vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]) for i in range(len(ts) - 1))

    def is_increasing(self) -> bool:
        return all(s > 0 for s in self.slopes())

    def piece_index(self, t: Fraction) -> int:
        """Index of the piece used for the right-hand slope at ``t`` (last piece at ``hi``)."""
        t = Q(t)
        if t < self.lo or t > self.hi:
            raise DomainError(f"{t} outside [{self.lo}, {self.hi}]")
        return min(bisect_right(self.breakpoints, t) - 1, len(self.breakpoints) - 2)

    def slope_at(self, t: RationalLike) -> Fraction:
        """Right-hand slope at ``t``; the left-hand slope at the right endpoint."""
        i = self.piece_index(Q(t))
        ts, vs = self.breakpoints, self.values
        return (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i])

    def __call__(self, t: RationalLike) -> Fraction:
        return pl_eval(self, t)

    def __neg__(self) -> "PiecewiseLinear":
        return PiecewiseLinear(self.breakpoints, tuple(-v for v in self.values))

    def __mul__(self, c: RationalLike) -> "PiecewiseLinear":
        c = Q(c)
        return PiecewiseLinear(self.breakpoints, tuple(c * v for v in self.values))

    __rmul__ = __mul__

    def __add__(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise DomainError("cannot add piecewise-linear maps with different domains")
        ts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return PiecewiseLinear(tuple(ts), tuple(pl_eval(self, t) + pl_eval(other, t) for t in ts))

    def __sub__(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        return self + (-other)

    def refine(self, extra: Iterable[RationalLike]) -> "PiecewiseLinear":
        """Same function with additional (redundant) breakpoints inside the domain."""
        ts = set(self.breakpoints)
        for t in extra:
            t = Q(t)
            if t < self.lo or t > self.hi:
                raise DomainError(f"refinement point {t} outside the domain")
            ts.add(t)
        ts = sorted(ts)
        return PiecewiseLinear(tuple(ts), tuple(pl_eval(self, t) for t in ts))

    def normalize(self) -> "PiecewiseLinear":
        """Drop interior breakpoints whose neighbouring slopes agree."""
        ts, vs = self.breakpoints, self.values
        slopes = self.slopes()
        keep_t, keep_v = [ts[0]], [vs[0]]
        for i in range(1, len(ts) - 1):
            if slopes[i - 1] != slopes[i]:
                keep_t.append(ts[i])
                keep_v.append(vs[i])
        keep_t.append(ts[-1])
        keep_v.append(vs[-1])
        return PiecewiseLinear(tuple(keep_t), tuple(keep_v))

    def same_function(self, other: "PiecewiseLinear") -> bool:
        return self.normalize() == other.normalize()


def pl_eval(f: PiecewiseLinear, t: RationalLike) -> Fraction:
    t = Q(t)
    ts, vs = f.breakpoints, f.values
    if t < ts[0] or t > ts[-1]:
        raise DomainError(f"{t} outside [{ts[0]}, {ts[-1]}]")
    i = bisect_right(ts, t) - 1
    if ts[i] == t:
        return vs[i]
    return vs[i] + (vs[i + 1] - vs[i]) * (t - ts[i]) / (ts[i + 1] - ts[i])


def pl_compose(outer: PiecewiseLinear, inner: PiecewiseLinear) -> PiecewiseLinear:
    """``outer ∘ inner`` as an exact piecewise-linear map on inner's domain."""
    if min(inner.values) < outer.lo or max(inner.values) > outer.hi:
        raise DomainError(
            f"inner range [{min(inner.values)}, {max(inner.values)}] "
            f"not inside outer domain [{outer.lo}, {outer.hi}]"
        )
    its, ivs = inner.breakpoints, inner.values
    inner_at = dict(zip(its, ivs))
    for i in range(len(its) - 1):
        v0, v1 = ivs[i], ivs[i + 1]
        if v0 == v1:
            continue
        lo, hi = min(v0, v1), max(v0, v1)
        # preimages of outer breakpoints strictly inside this monotone piece
        for b in outer.breakpoints:
            if lo < b < hi:
                inner_at[its[i] + (b - v0) * (its[i + 1] - its[i]) / (v1 - v0)] = b
    ts = sorted(inner_at)
    outer_at = dict(zip(outer.breakpoints, outer.values))
    vals = []
    for t in ts:
        u = inner_at[t]
        vals.append(outer_at[u] if u in outer_at else pl_eval(outer, u))
    return PiecewiseLinear(tuple(ts), tuple(vals))


def pl_invert(f: PiecewiseLinear) -> PiecewiseLinear:
    if not f.is_increasing():
        raise NotIncreasing("only increasing piecewise-linear maps can be inverted")
    return PiecewiseLinear(f.values, f.breakpoints)


def pl_sup_abs(f: PiecewiseLinear) -> Fraction:
    # a PL function attains its sup norm at a breakpoint
    return max(abs(v) for v in f.values)


def pl_slope_bounds(f: PiecewiseLinear) -> Tuple[Fraction, Fraction]:
    s = f.slopes()
    return min(s), max(s)


def first_difference(f: PiecewiseLinear, g: PiecewiseLinear) -> Optional[Fraction]:
    """First breakpoint of either map where the two disagree, or None if equal.

    Two PL maps on the same interval agree everywhere iff they agree on the
    union of their breakpoints.
    """
    if (f.lo, f.hi) != (g.lo, g.hi):
        return min(f.lo, g.lo)
    for t in sorted(set(f.breakpoints) | set(g.breakpoints)):
        if pl_eval(f, t) != pl_eval(g, t):
            return t
    return None

