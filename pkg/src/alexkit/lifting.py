"""Lifting a measure-interval map to an increasing bijection between the sets.

Given fiber compatible ``(K, M, psi)``, the lift ``phi : M -> K`` satisfies
``π_K ∘ phi = psi ∘ π_M``.  On each positive-length component of ``M`` it
transports measure through ``psi`` into a single component of ``K``; on the
finite nontrivial fibers it is the unique order isomorphism.

Lipschitz constants are exact maxima over finitely many slopes.  A difference
quotient of an increasing PL map across several pieces is a weighted mediant
of the piece slopes, ``(A1 + A2) / (B1 + B2) <= max(A1/B1, A2/B2)``, so the
maximum piece slope of the affine extension bounds every quotient.  Each
piece has both ends in ``M``, so that bound is attained.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from .compact import CompactSet
from .compatibility import check_fiber_compatibility, check_gap_compatibility, gap_correspondence
from .errors import BadOrder, FiberIncompatible, InternalInvariantViolation, NotInSet
from .numeric import PiecewiseLinear, Q, RationalLike, first_difference, pl_compose, pl_eval, pl_invert
from .projection import exceptional_set, fiber, project, projection_table, selector


@dataclass(frozen=True)
class LiftedMap:
    source: CompactSet  # M
    target: CompactSet  # K
    psi: PiecewiseLinear
    component_pieces: Tuple[PiecewiseLinear, ...]
    point_images: Dict[Fraction, Fraction] = field(hash=False)
    lip_forward: Fraction = Fraction(1)
    lip_inverse: Fraction = Fraction(1)

    def __call__(self, y: RationalLike) -> Fraction:
        y = Q(y)
        if y in self.point_images:
            return self.point_images[y]
        starts = [p.lo for p in self.component_pieces]
        i = bisect_right(starts, y) - 1
        if i >= 0 and y <= self.component_pieces[i].hi:
            return pl_eval(self.component_pieces[i], y)
        raise NotInSet(f"{y} is not in {self.source}")

    def skeleton(self) -> List[Fraction]:
        """Every breakpoint of a component piece and every isolated point, sorted."""
        pts = set(self.point_images)
        for p in self.component_pieces:
            pts.update(p.breakpoints)
        return sorted(pts)


@dataclass(frozen=True)
class AffineExtension:
    as_pl: PiecewiseLinear

    def __call__(self, y: RationalLike) -> Fraction:
        return pl_eval(self.as_pl, y)


class Check(NamedTuple):
    holds: bool
    witness: Optional[Fraction]


def _component_for_level(K: CompactSet, lo: Fraction, hi: Fraction) -> int:
    """Index of the positive-length component of ``K`` whose levels contain ``[lo, hi]``."""
    cum = projection_table(K).cumulative
    mid = (lo + hi) / 2
    i = bisect_right(cum, mid) - 1
    if not (cum[i] <= lo and hi <= cum[i + 1]):
        raise InternalInvariantViolation(f"levels [{lo}, {hi}] straddle a gap of K")
    return i


def lift(K: CompactSet, M: CompactSet, psi: PiecewiseLinear) -> LiftedMap:
    matching = check_fiber_compatibility(K, M, psi)
    if not matching.compatible:
        raise FiberIncompatible(matching)
    m_cum = projection_table(M).cumulative
    k_cum = projection_table(K).cumulative
    pieces = []
    for i, (a, b) in enumerate(M.components):
        if a == b:
            continue
        s0, s1 = m_cum[i], m_cum[i + 1]
        j = _component_for_level(K, psi(s0), psi(s1))
        # y -> s0 + (y - a), then psi, then back from level to the point of component j
        to_level = PiecewiseLinear((a, b), (s0, s1))
        through = pl_compose(psi, to_level)
        shift = K.components[j][0] - k_cum[j]
        pieces.append(PiecewiseLinear(through.breakpoints, tuple(v + shift for v in through.values)))
    isolated = set(M.isolated_points())
    images = {}
    for s in exceptional_set(M):
        for y, x in matching.isomorphisms[s]:
            if y in isolated:
                images[y] = x
    if set(images) != isolated:
        raise InternalInvariantViolation("an isolated point of M lies on no nontrivial fiber")
    corr = gap_correspondence(K, M, matching)
    slopes = [s for p in pieces for s in p.slopes()]
    ratios = [pair.ratio for pair in corr.pairs]
    lip_f = max(slopes + ratios)
    lip_i = max(1 / r for r in slopes + ratios)
    return LiftedMap(M, K, psi, tuple(pieces), images, lip_f, lip_i)


@dataclass(frozen=True)
class SelectorMap:
    """``y -> σ_K(psi(π_M(y)))``; defined for any valid psi, continuous or not."""

    target: CompactSet
    source: CompactSet
    psi: PiecewiseLinear

    def __call__(self, y: RationalLike) -> Fraction:
        return selector(self.target, self.psi(project(self.source, y)))


def selector_map_phi_sigma(K: CompactSet, M: CompactSet, psi: PiecewiseLinear) -> SelectorMap:
    return SelectorMap(K, M, psi)


def predicted_difference_set(M: CompactSet) -> Tuple[Fraction, ...]:
    """Union over nontrivial fibers of M of the fiber minus its minimum."""
    pts = []
    for s in exceptional_set(M):
        pts += fiber(M, s).points[1:]
    return tuple(sorted(pts))


def _probe_points(M: CompactSet, phi: LiftedMap) -> List[Fraction]:
    pts = set(phi.skeleton())
    for a, b in M.components:
        pts.update((a, b, (a + b) / 2))
    for s in exceptional_set(M):
        pts.update(fiber(M, s).points)
    sk = sorted(pts)
    for u, v in zip(sk, sk[1:]):
        mid = (u + v) / 2
        if mid in M:
            pts.add(mid)
    return sorted(pts)


def difference_set(phi: LiftedMap, K: CompactSet, M: CompactSet, psi: PiecewiseLinear) -> Tuple[Fraction, ...]:
    """Points of M where ``phi`` and the selector map disagree, found by scanning.

    The scan covers every fiber point, every breakpoint and a midpoint of
    every cell, and must reproduce :func:`predicted_difference_set`.
    """
    sel = selector_map_phi_sigma(K, M, psi)
    found = tuple(y for y in _probe_points(M, phi) if phi(y) != sel(y))
    if found != predicted_difference_set(M):
        raise InternalInvariantViolation(f"difference set {found} differs from the fiber prediction")
    return found


def verify_conjugacy(phi: LiftedMap, psi: Optional[PiecewiseLinear] = None) -> Check:
    """Check ``π_K ∘ phi = psi ∘ π_M`` on all of M; witness is the first failing point."""
    psi = phi.psi if psi is None else psi
    K, M = phi.target, phi.source
    m_cum = projection_table(M).cumulative
    k_pl = projection_table(K).as_pl
    failures = []
    comps = [(a, b, m_cum[i]) for i, (a, b) in enumerate(M.components) if a < b]
    for piece, (a, b, s0) in zip(phi.component_pieces, comps):
        if (piece.lo, piece.hi) != (a, b):
            failures.append(a)
            continue
        j = K.component_index(piece.values[0])
        if j < 0 or any(K.component_index(v) != j for v in piece.values):
            # the piece must stay inside one component of K
            failures.append(a)
            continue
        # on a component both sides are PL, so comparing on the joint breakpoints is exact
        lhs = pl_compose(k_pl, piece)
        rhs = pl_compose(psi, PiecewiseLinear((a, b), (s0, s0 + (b - a))))
        w = first_difference(lhs, rhs)
        if w is not None:
            failures.append(w)
    pts = set(phi.point_images)
    for s in exceptional_set(M):
        pts.update(fiber(M, s).points)
    for y in sorted(pts):
        x = phi(y)
        if x not in K or project(K, x) != psi(project(M, y)):
            failures.append(y)
    if failures:
        return Check(False, min(failures))
    return Check(True, None)


def verify_bijection(phi: LiftedMap) -> Check:
    """Strictly increasing on M and onto K, checked component by component."""
    K, M = phi.target, phi.source
    pts = phi.skeleton()
    vals = [phi(y) for y in pts]
    for y, u, v in zip(pts[1:], vals, vals[1:]):
        if not u < v:
            return Check(False, y)
    for p in phi.component_pieces:
        if not p.is_increasing():
            return Check(False, p.lo)
    ranges = sorted((p.values[0], p.values[-1]) for p in phi.component_pieces)
    k_pos = [(a, b) for a, b in K.components if a < b]
    if ranges != k_pos:
        return Check(False, M.min)
    if sorted(phi.point_images.values()) != list(K.isolated_points()):
        return Check(False, M.min)
    return Check(True, None)


def affine_extension(phi: LiftedMap) -> AffineExtension:
    """PL map on ``[min M, max M]`` equal to phi on M and affine on each gap."""
    pts = phi.skeleton()
    return AffineExtension(PiecewiseLinear(tuple(pts), tuple(phi(y) for y in pts)))


def interval_decomposition(K: CompactSet, a: RationalLike, b: RationalLike) -> Tuple[Fraction, List[Fraction]]:
    """``(π_K(b) - π_K(a), lengths of the gaps inside (a, b))``; their sum is ``b - a``."""
    a, b = Q(a), Q(b)
    if a not in K or b not in K:
        raise NotInSet(f"endpoints {a}, {b} must lie in {K}")
    if not a < b:
        raise BadOrder(f"need a < b, got {a}, {b}")
    inc = project(K, b) - project(K, a)
    lengths = [g.length for g in K.gaps() if a <= g.left and g.right <= b]
    if b - a != inc + sum(lengths):
        raise InternalInvariantViolation("interval decomposition does not add up")
    return inc, lengths


class LipschitzReport(NamedTuple):
    lip_forward: Fraction
    lip_inverse: Fraction
    bound_check: bool


def lipschitz_report(phi: LiftedMap, C: Optional[Fraction] = None) -> LipschitzReport:
    """Exact constants and the check against ``max|psi'| + C`` (and its inverse analogue)."""
    if C is None:
        _, C, _ = check_gap_compatibility(phi.target, phi.source, phi.psi)
    psi_max = max(phi.psi.slopes())
    inv_max = max(pl_invert(phi.psi).slopes())
    ok = phi.lip_forward <= psi_max + C and phi.lip_inverse <= inv_max + C
    return LipschitzReport(phi.lip_forward, phi.lip_inverse, ok)


def perturb_point(phi: LiftedMap, y: RationalLike, x: RationalLike) -> LiftedMap:
    """Copy of ``phi`` with one isolated point sent elsewhere (for negative controls)."""
    images = dict(phi.point_images)
    images[Q(y)] = Q(x)
    return replace(phi, point_images=images)
