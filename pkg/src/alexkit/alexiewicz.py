"""Step functions, their primitives and the Alexiewicz norm.

A step function on ``K`` is stored in the measure coordinate ``t`` as a
function ``g`` on ``[0, |K|]``; the function on ``K`` is ``g ∘ π_K``.  Any
step function written in the ``x`` coordinate equals such a representative
almost everywhere (see :meth:`StepFunction.from_x_breaks`).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .compact import CompactSet
from .errors import DomainError, DomainMismatch
from .numeric import PiecewiseLinear, Q, RationalLike, pl_eval, pl_sup_abs
from .projection import extended_project, project


@dataclass(frozen=True)
class StepFunction:
    domain: CompactSet
    t_breaks: Tuple[Fraction, ...]
    values: Tuple[Fraction, ...]

    def __post_init__(self):
        ts = [Q(t) for t in self.t_breaks]
        vs = [Q(v) for v in self.values]
        if len(ts) != len(vs) + 1 or not vs:
            raise DomainError("need one value per cell")
        if ts[0] != 0 or ts[-1] != self.domain.measure:
            raise DomainError(f"cells must tile [0, {self.domain.measure}]")
        if any(not a < b for a, b in zip(ts, ts[1:])):
            raise DomainError("t_breaks must be strictly increasing")
        # canonical form: merge equal neighbours
        keep_t, keep_v = [ts[0]], [vs[0]]
        for t, v in zip(ts[1:-1], vs[1:]):
            if v == keep_v[-1]:
                continue
            keep_t.append(t)
            keep_v.append(v)
        keep_t.append(ts[-1])
        object.__setattr__(self, "t_breaks", tuple(keep_t))
        object.__setattr__(self, "values", tuple(keep_v))

    @classmethod
    def constant(cls, K: CompactSet, c: RationalLike = 1) -> "StepFunction":
        return cls(K, (Fraction(0), K.measure), (Q(c),))

    @classmethod
    def from_x_breaks(
        cls, K: CompactSet, x_breaks: Sequence[RationalLike], values: Sequence[RationalLike]
    ) -> "StepFunction":
        """Convert a step function given on cells of ``[min K, max K]``.

        Cells are pushed through the extended projection; cells lying inside a
        gap collapse to zero length and are dropped.
        """
        xs = [Q(x) for x in x_breaks]
        if xs[0] != K.min or xs[-1] != K.max:
            raise DomainError(f"x cells must tile [{K.min}, {K.max}]")
        ts, vs = [Fraction(0)], []
        for x1, v in zip(xs[1:], values):
            t1 = extended_project(K, x1)
            if t1 > ts[-1]:
                ts.append(t1)
                vs.append(Q(v))
        return cls(K, tuple(ts), tuple(vs))

    def cells(self):
        ts = self.t_breaks
        return [(ts[j], ts[j + 1], v) for j, v in enumerate(self.values)]

    def value_at_level(self, t: RationalLike) -> Fraction:
        """Value of ``g`` at ``t``: the cell to the right of a break, the last cell at ``|K|``."""
        t = Q(t)
        if not 0 <= t <= self.domain.measure:
            raise DomainError(f"level {t} outside [0, {self.domain.measure}]")
        j = min(bisect_right(self.t_breaks, t) - 1, len(self.values) - 1)
        return self.values[j]

    def __call__(self, x: RationalLike) -> Fraction:
        return self.value_at_level(project(self.domain, x))

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values)

    def _combine(self, other: "StepFunction", op) -> "StepFunction":
        if other.domain != self.domain:
            raise DomainMismatch("step functions live on different sets")
        ts = sorted(set(self.t_breaks) | set(other.t_breaks))
        vs = []
        for a, b in zip(ts, ts[1:]):
            mid = (a + b) / 2
            vs.append(op(self.value_at_level(mid), other.value_at_level(mid)))
        return StepFunction(self.domain, tuple(ts), tuple(vs))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, lambda u, v: u + v)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, lambda u, v: u - v)

    def __neg__(self) -> "StepFunction":
        return StepFunction(self.domain, self.t_breaks, tuple(-v for v in self.values))

    def __mul__(self, c: RationalLike) -> "StepFunction":
        c = Q(c)
        return StepFunction(self.domain, self.t_breaks, tuple(c * v for v in self.values))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Primitive:
    domain: CompactSet
    as_pl_in_t: PiecewiseLinear

    def __call__(self, x: RationalLike) -> Fraction:
        return pl_eval(self.as_pl_in_t, project(self.domain, x))


def primitive(f: StepFunction) -> Primitive:
    acc = [Fraction(0)]
    for a, b, v in f.cells():
        acc.append(acc[-1] + v * (b - a))
    return Primitive(f.domain, PiecewiseLinear(f.t_breaks, tuple(acc)))


def primitive_at(f: StepFunction, x: RationalLike) -> Fraction:
    return primitive(f)(x)


def embed(f: StepFunction) -> PiecewiseLinear:
    return primitive(f).as_pl_in_t


def alexiewicz_norm(f: StepFunction) -> Fraction:
    # the projection is onto [0, |K|], so sup over K equals sup over the measure interval
    return pl_sup_abs(embed(f))


def unembed(K: CompactSet, G: PiecewiseLinear) -> StepFunction:
    """Inverse of :func:`embed`: the step function whose values are G's slopes."""
    if (G.lo, G.hi) != (0, K.measure):
        raise DomainError(f"G must be defined on [0, {K.measure}]")
    if G(0) != 0:
        raise DomainError("G must vanish at 0")
    return StepFunction(K, G.breakpoints, G.slopes())
