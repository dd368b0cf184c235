"""Fiber and gap compatibility of two compact sets under a measure-interval map.

``psi : [0, |M|] -> [0, |K|]`` is fiber compatible with ``(K, M)`` when it maps
the exceptional levels of ``M`` onto those of ``K`` and every nontrivial fiber
of ``M`` is order-isomorphic to the fiber above its image.  For finite fibers
an order isomorphism exists iff the sizes agree, and it is then unique, so no
search is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .compact import CompactSet, Gap, generate_truncated_reciprocal
from .errors import FiberIncompatible, InternalInvariantViolation, InvalidPsi
from .numeric import PiecewiseLinear, pl_invert
from .projection import exceptional_set, fiber, project

E_SET_MISMATCH = "e-set-mismatch"
FIBER_CARDINALITY = "fiber-cardinality"


@dataclass(frozen=True)
class Incompatibility:
    """Why a pair fails fiber compatibility.

    ``level`` is in the measure interval of M, ``image`` in that of K.  For a
    cardinality failure the two fiber sizes are recorded as well.
    """

    reason: str
    level: Fraction
    image: Fraction
    m_count: Optional[int] = None
    k_count: Optional[int] = None

    compatible = False

    def __str__(self):
        if self.reason == FIBER_CARDINALITY:
            return (
                f"{self.reason}: fiber of M over {self.level} has {self.m_count} points, "
                f"fiber of K over {self.image} has {self.k_count}"
            )
        return f"{self.reason}: level {self.level} of M vs level {self.image} of K"


@dataclass(frozen=True)
class FiberMatching:
    level_pairs: Tuple[Tuple[Fraction, Fraction], ...]
    # level s of M -> ((y, h_s(y)), ...) in increasing order
    isomorphisms: Dict[Fraction, Tuple[Tuple[Fraction, Fraction], ...]] = field(hash=False)

    compatible = True

    def h(self, s: Fraction, y: Fraction) -> Fraction:
        return dict(self.isomorphisms[s])[y]


@dataclass(frozen=True)
class GapPair:
    U: Gap  # gap of M
    V: Gap  # corresponding gap of K
    ratio: Fraction  # λ(V) / λ(U)


@dataclass(frozen=True)
class GapCorrespondence:
    pairs: Tuple[GapPair, ...]
    constant: Fraction


def validate_psi(K: CompactSet, M: CompactSet, psi: PiecewiseLinear) -> None:
    if (psi.lo, psi.hi) != (0, M.measure):
        raise InvalidPsi(f"psi must be defined on [0, {M.measure}]")
    if psi.values[0] != 0 or psi.values[-1] != K.measure:
        raise InvalidPsi(f"psi must map onto [0, {K.measure}]")
    if not psi.is_increasing():
        raise InvalidPsi("psi must be strictly increasing")


def check_fiber_compatibility(K: CompactSet, M: CompactSet, psi: PiecewiseLinear):
    """Return a :class:`FiberMatching`, or an :class:`Incompatibility` naming the first failure."""
    validate_psi(K, M, psi)
    E_M = exceptional_set(M)
    E_K = set(exceptional_set(K))
    image = {s: psi(s) for s in E_M}
    for s in E_M:
        if image[s] not in E_K:
            return Incompatibility(E_SET_MISMATCH, s, image[s])
    hit = set(image.values())
    missing = sorted(E_K - hit)
    if missing:
        t = missing[0]
        return Incompatibility(E_SET_MISMATCH, pl_invert(psi)(t), t)
    isos = {}
    for s in E_M:
        ys = fiber(M, s).points
        xs = fiber(K, image[s]).points
        if len(ys) != len(xs):
            return Incompatibility(FIBER_CARDINALITY, s, image[s], len(ys), len(xs))
        isos[s] = tuple(zip(ys, xs))
    return FiberMatching(tuple((s, image[s]) for s in E_M), isos)


def gap_correspondence(K: CompactSet, M: CompactSet, matching: FiberMatching) -> GapCorrespondence:
    k_gaps = {(g.left, g.right): g for g in K.gaps()}
    pairs = []
    for U in M.gaps():
        s = project(M, U.left)
        h = dict(matching.isomorphisms[s])
        key = (h[U.left], h[U.right])
        V = k_gaps.get(key)
        if V is None:
            raise InternalInvariantViolation(f"images {key} of gap {U} do not bound a gap of K")
        pairs.append(GapPair(U, V, V.length / U.length))
    if len(pairs) != len(k_gaps) or len({p.V for p in pairs}) != len(pairs):
        raise InternalInvariantViolation("gap correspondence is not a bijection")
    return GapCorrespondence(tuple(pairs), minimal_constant(p.ratio for p in pairs))


def minimal_constant(ratios: Iterable[Fraction]) -> Fraction:
    """Smallest ``C >= 1`` with ``1/C <= r <= C`` for every ratio."""
    return max((max(r, 1 / r) for r in ratios), default=Fraction(1))


def check_gap_compatibility(K: CompactSet, M: CompactSet, psi: PiecewiseLinear):
    """``(compatible, C, correspondence)``.

    With finitely many gaps the constant is always finite, so a fiber
    compatible pair is always gap compatible; ``C`` carries the information.
    """
    matching = check_fiber_compatibility(K, M, psi)
    if not matching.compatible:
        raise FiberIncompatible(matching)
    corr = gap_correspondence(K, M, matching)
    return True, corr.constant, corr


def compatibility_growth_curve(
    exponent_pair: Tuple[int, int], N_range: Iterable[int]
) -> List[Tuple[int, Fraction]]:
    """``C(N)`` for the truncated reciprocal-power family, with ``psi`` the identity."""
    curve = []
    ek, em = exponent_pair
    for N in N_range:
        K = generate_truncated_reciprocal(ek, N)
        M = generate_truncated_reciprocal(em, N)
        psi = PiecewiseLinear.identity(0, M.measure)
        _, C, _ = check_gap_compatibility(K, M, psi)
        curve.append((N, C))
    return curve
