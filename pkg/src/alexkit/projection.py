"""Measure projection of a compact set onto its measure interval.

For ``x`` in ``K`` the projection is ``λ([min K, x] ∩ K)``.  Everything here
is read off a cumulative table of component lengths, so fibers and the
left-endpoint selector are found by table lookup rather than root finding.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Tuple, Union

from .compact import CompactSet
from .errors import DomainError, NotFiberConstant, NotInSet
from .numeric import PiecewiseLinear, Q, RationalLike, pl_eval


@dataclass(frozen=True)
class ProjectionTable:
    owner: CompactSet
    cumulative: Tuple[Fraction, ...]  # c[0] = 0, c[i] = measure up to the end of component i
    as_pl: PiecewiseLinear  # extended projection on [min K, max K]


@dataclass(frozen=True)
class Fiber:
    level: Fraction
    points: Tuple[Fraction, ...]

    @property
    def nontrivial(self) -> bool:
        return len(self.points) > 1


def projection_table(K: CompactSet) -> ProjectionTable:
    # built once per set and kept on the (immutable) instance
    table = K.__dict__.get("_projection_table")
    if table is None:
        table = _build_table(K)
        K.__dict__["_projection_table"] = table
    return table


def _build_table(K: CompactSet) -> ProjectionTable:
    cum = [Fraction(0)]
    xs, vs = [], []
    for a, b in K.components:
        if not xs or xs[-1] != a:
            xs.append(a)
            vs.append(cum[-1])
        cum.append(cum[-1] + (b - a))
        if b != a:
            xs.append(b)
            vs.append(cum[-1])
    return ProjectionTable(K, tuple(cum), PiecewiseLinear(tuple(xs), tuple(vs)))


def project(K: CompactSet, x: RationalLike) -> Fraction:
    x = Q(x)
    i = K.component_index(x)
    if i < 0:
        raise NotInSet(f"{x} is not in {K}")
    return projection_table(K).cumulative[i] + (x - K.components[i][0])


def extended_project(K: CompactSet, x: RationalLike) -> Fraction:
    x = Q(x)
    if not K.min <= x <= K.max:
        raise DomainError(f"{x} outside [{K.min}, {K.max}]")
    return pl_eval(projection_table(K).as_pl, x)


def _check_level(K: CompactSet, t: Fraction) -> None:
    if not 0 <= t <= K.measure:
        raise DomainError(f"level {t} outside [0, {K.measure}]")


def selector(K: CompactSet, t: RationalLike) -> Fraction:
    """Smallest point of ``K`` projecting to ``t``."""
    t = Q(t)
    _check_level(K, t)
    cum = projection_table(K).cumulative
    # first component i (1-based in cum) whose closing level reaches t
    i = bisect_left(cum, t, 1) - 1
    return K.components[i][0] + (t - cum[i])


def fiber(K: CompactSet, t: RationalLike) -> Fiber:
    t = Q(t)
    _check_level(K, t)
    cum = projection_table(K).cumulative
    first = bisect_left(cum, t, 1) - 1
    last = bisect_right(cum, t, 0, len(cum) - 1) - 1
    pts = tuple(K.components[i][0] + (t - cum[i]) for i in range(first, last + 1))
    return Fiber(t, pts)


def selector_right_limit(K: CompactSet, t: RationalLike) -> Fraction:
    """``lim σ_K(u)`` as ``u`` decreases to ``t``; defined for ``t < |K|``."""
    t = Q(t)
    if not 0 <= t < K.measure:
        raise DomainError(f"right limit needs a level in [0, {K.measure})")
    cum = projection_table(K).cumulative
    i = bisect_right(cum, t) - 1
    return K.components[i][0] + (t - cum[i])


def selector_jumps(K: CompactSet) -> Tuple[Fraction, ...]:
    """Levels where the selector is discontinuous.

    The selector is left-continuous and piecewise a translation, so it can
    only jump where a table level is crossed, and it jumps there iff the right
    limit differs from the value.  At ``|K|`` there is no right side.
    """
    cum = projection_table(K).cumulative
    levels = sorted(set(cum[:-1]) - {K.measure})
    return tuple(t for t in levels if selector_right_limit(K, t) != selector(K, t))


def exceptional_set(K: CompactSet) -> Tuple[Fraction, ...]:
    """Levels with more than one preimage: the levels of the gaps, sorted."""
    cum = projection_table(K).cumulative
    return tuple(sorted(set(cum[1:-1])))


def gap_levels(K: CompactSet) -> Tuple[Fraction, ...]:
    return tuple(sorted({project(K, g.left) for g in K.gaps()}))


@dataclass(frozen=True)
class FunctionOnK:
    """An element ``G ∘ π_K`` of the fiber-constant continuous functions on ``K``."""

    domain: CompactSet
    G: PiecewiseLinear

    def __call__(self, x: RationalLike) -> Fraction:
        return pl_eval(self.G, project(self.domain, x))


def phi_map(K: CompactSet, G: PiecewiseLinear) -> FunctionOnK:
    if (G.lo, G.hi) != (0, K.measure):
        raise DomainError(f"G must be defined on [0, {K.measure}]")
    return FunctionOnK(K, G)


def psi_map(
    K: CompactSet,
    F: Union[FunctionOnK, Callable[[Fraction], Fraction]],
    levels: Optional[Iterable[RationalLike]] = None,
) -> PiecewiseLinear:
    """``t -> F(σ_K(t))``.

    ``F`` is either a :class:`FunctionOnK` or a plain callable on ``K``.  For a
    callable, ``levels`` lists the breakpoints in ``[0, |K|]`` at which it is
    sampled; it must agree on every nontrivial fiber and vanish at ``min K``.
    """
    if isinstance(F, FunctionOnK):
        if F.domain != K:
            raise DomainError("function lives on a different set")
        G = F.G
        if G(0) != 0:
            raise DomainError("elements of X_K vanish at min K")
        return G
    if levels is None:
        raise DomainError("sampling levels are required for a plain callable")
    check_fiber_constant(K, F)
    ts = sorted({Q(t) for t in levels} | {Fraction(0), K.measure})
    vals = tuple(Q(F(selector(K, t))) for t in ts)
    if vals[0] != 0:
        raise DomainError("elements of X_K vanish at min K")
    return PiecewiseLinear(tuple(ts), vals)


def check_fiber_constant(K: CompactSet, F: Callable[[Fraction], Fraction]) -> None:
    for t in exceptional_set(K):
        pts = fiber(K, t).points
        vals = {Q(F(x)) for x in pts}
        if len(vals) > 1:
            raise NotFiberConstant(f"F takes values {sorted(vals)} on the fiber over {t}")
