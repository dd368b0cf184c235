"""Surjective linear isometries between Alexiewicz spaces.

An isometry from the step functions on ``K`` to those on ``M`` is described by
a sign and an increasing piecewise-linear bijection ``psi`` of the measure
intervals, ``[0, |M|] -> [0, |K|]``.  In measure coordinates it acts as

    (Tf)(s) = sign * g(psi(s)) * psi'(s)          where f = g ∘ π_K,

and its primitive is ``sign * (primitive of f) ∘ psi``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .alexiewicz import StepFunction, embed
from .compact import CompactSet
from .errors import DomainError, DomainMismatch, InvalidDescriptor, NotAnIsometry
from .numeric import PiecewiseLinear, RationalLike, first_difference, pl_compose, pl_invert
from .projection import project, selector
from .random_gen import random_step_function

Transformer = Callable[[StepFunction], StepFunction]


@dataclass(frozen=True)
class IsometryDescriptor:
    sign: int
    psi: PiecewiseLinear
    source: CompactSet  # K
    target: CompactSet  # M

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidDescriptor(f"sign must be +1 or -1, got {self.sign!r}")
        psi = self.psi
        if (psi.lo, psi.hi) != (0, self.target.measure):
            raise InvalidDescriptor(f"psi must be defined on [0, {self.target.measure}]")
        if not psi.is_increasing():
            raise InvalidDescriptor("psi must be strictly increasing")
        if psi.values[0] != 0 or psi.values[-1] != self.source.measure:
            raise InvalidDescriptor(f"psi must map [0, {psi.hi}] onto [0, {self.source.measure}]")
        object.__setattr__(self, "psi", psi.normalize())

    def __call__(self, f: StepFunction) -> StepFunction:
        return apply_isometry(self, f)


class IdentityCheck(NamedTuple):
    holds: bool
    witness: Optional[Fraction]


def apply_isometry(D: IsometryDescriptor, f: StepFunction) -> StepFunction:
    if f.domain != D.source:
        raise DomainMismatch("step function does not live on the descriptor's source set")
    psi = D.psi
    inv = pl_invert(psi)
    # s -> psi(s) at every output break; psi(inv(t)) = t needs no evaluation
    level = dict(zip(psi.breakpoints, psi.values))
    for t in f.t_breaks:
        level[inv(t)] = t
    breaks = sorted(level)
    fb, values, j = f.t_breaks, [], 0
    for a, b in zip(breaks, breaks[1:]):
        t0, t1 = level[a], level[b]
        while fb[j + 1] <= t0:
            j += 1
        # psi is affine on [a, b] and [t0, t1] sits inside one cell of f
        values.append(D.sign * f.values[j] * (t1 - t0) / (b - a))
    return StepFunction(D.target, tuple(breaks), tuple(values))


def apply_pointwise(D: IsometryDescriptor, f: StepFunction, y: RationalLike) -> Fraction:
    """Evaluate ``sign * f(σ_K(ψ(π_M(y)))) * ψ'(π_M(y))`` literally at a point ``y`` of M."""
    s = project(D.target, y)
    x = selector(D.source, D.psi(s))
    return D.sign * f(x) * D.psi.slope_at(s)


def verify_J_identity(D: IsometryDescriptor, f: StepFunction) -> IdentityCheck:
    """Compare the primitive of ``Tf`` with ``sign * (primitive of f) ∘ psi``."""
    lhs = embed(apply_isometry(D, f))
    rhs = pl_compose(embed(f), D.psi) * D.sign
    w = first_difference(lhs, rhs)
    return IdentityCheck(w is None, w)


def _matches(T: Transformer, sign: int, psi: PiecewiseLinear, f: StepFunction) -> bool:
    # equal primitives (up to the bijection psi) already force equal norms
    out = T(f)
    if not isinstance(out, StepFunction):
        return False
    return first_difference(embed(out), pl_compose(embed(f), psi) * sign) is None


def recover_descriptor(
    K: CompactSet, M: CompactSet, T: Transformer, probes: int = 10, seed: int = 0
) -> IsometryDescriptor:
    """Read ``(sign, psi)`` off an opaque isometry.

    The constant function 1 on K has primitive ``t -> t``, so the primitive of
    its image is ``sign * psi``.  The candidate is then cross-checked on
    ``probes`` random step functions.
    """
    one = StepFunction.constant(K, 1)
    out = T(one)
    if not isinstance(out, StepFunction) or out.domain != M:
        raise NotAnIsometry("transformer does not produce step functions on M")
    G = embed(out)
    end = G.values[-1]
    if end == 0:
        raise NotAnIsometry("image of the constant 1 has zero primitive at |M|")
    sign = 1 if end > 0 else -1
    psi = G * sign
    try:
        D = IsometryDescriptor(sign, psi, K, M)
    except InvalidDescriptor as exc:
        raise NotAnIsometry(f"recovered psi is not an increasing bijection: {exc}") from exc
    rng = random.Random(seed)
    for _ in range(probes):
        f = random_step_function(rng, K)
        if not _matches(T, sign, D.psi, f):
            raise NotAnIsometry("transformer disagrees with the recovered descriptor on a probe")
    return D


def canonical_isometry(K: CompactSet, M: CompactSet) -> IsometryDescriptor:
    """Sign +1 and the linear rescaling of the measure intervals."""
    return IsometryDescriptor(1, PiecewiseLinear.linear(M.measure, K.measure / M.measure), K, M)


def invert_isometry(D: IsometryDescriptor) -> IsometryDescriptor:
    return IsometryDescriptor(D.sign, pl_invert(D.psi), D.target, D.source)


def compose_isometries(first: IsometryDescriptor, second: IsometryDescriptor) -> IsometryDescriptor:
    """Descriptor of ``second ∘ first`` (apply ``first``, then ``second``)."""
    if first.target != second.source:
        raise DomainError("descriptors do not chain")
    return IsometryDescriptor(
        first.sign * second.sign, pl_compose(first.psi, second.psi), first.source, second.target
    )

