"""Seeded generators for sets, step functions and measure-interval maps.

All generators take a :class:`random.Random` instance, so a fixed seed gives
the same objects on every platform.  Rationals are drawn as ``p/q`` with small
denominators to keep the exact arithmetic cheap.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Tuple

from .alexiewicz import StepFunction
from .compact import CompactSet, make_compact_set
from .numeric import PiecewiseLinear

DENOMS = (1, 2, 3, 4, 5, 6, 8, 10, 12)


def random_rational(rng: random.Random, lo: int = 0, hi: int = 1, denoms=DENOMS) -> Fraction:
    """Uniform-ish rational in the open interval ``(lo, hi)``."""
    q = rng.choice(denoms) + 1
    return Fraction(lo) + Fraction(rng.randint(1, q - 1), q) * (hi - lo)


def random_positive(rng: random.Random, hi: int = 3) -> Fraction:
    return random_rational(rng, 0, hi)


def random_compact_set(
    rng: random.Random, max_components: int = 5, singleton_prob: float = 0.3
) -> CompactSet:
    """A few components with random lengths and gaps; singletons appear with ``singleton_prob``."""
    n = rng.randint(1, max_components)
    x = Fraction(rng.randint(-3, 3), rng.choice(DENOMS))
    comps = []
    for i in range(n):
        if i > 0:
            x += random_positive(rng, 2)
        if rng.random() < singleton_prob:
            comps.append((x, x))
        else:
            length = random_positive(rng, 2)
            comps.append((x, x + length))
            x += length
    if all(a == b for a, b in comps):
        a, _ = comps[-1]
        comps[-1] = (a, a + random_positive(rng, 2))
    return make_compact_set(comps)


def random_step_function(rng: random.Random, K: CompactSet, max_cells: int = 6) -> StepFunction:
    total = K.measure
    k = rng.randint(1, max_cells)
    cuts = sorted({random_rational(rng, 0, 1) * total for _ in range(k - 1)})
    breaks = [Fraction(0)] + cuts + [total]
    values = [Fraction(rng.randint(-6, 6), rng.choice((1, 2, 3, 4))) for _ in range(len(breaks) - 1)]
    return StepFunction(K, tuple(breaks), tuple(values))


def random_increasing_pl(
    rng: random.Random, lo: Fraction, hi: Fraction, vlo: Fraction, vhi: Fraction, max_pieces: int = 4
) -> PiecewiseLinear:
    """Random strictly increasing PL bijection ``[lo, hi] -> [vlo, vhi]``."""
    k = rng.randint(1, max_pieces)
    cuts = sorted({lo + random_rational(rng, 0, 1) * (hi - lo) for _ in range(k - 1)})
    ts = [lo] + cuts + [hi]
    weights = [Fraction(rng.randint(1, 6)) for _ in range(len(ts) - 1)]
    scale = (vhi - vlo) / sum(weights)
    vs = [vlo]
    for w in weights:
        vs.append(vs[-1] + w * scale)
    vs[-1] = vhi
    return PiecewiseLinear(tuple(ts), tuple(vs))


def random_psi(rng: random.Random, M: CompactSet, K: CompactSet, max_pieces: int = 4) -> PiecewiseLinear:
    return random_increasing_pl(rng, Fraction(0), M.measure, Fraction(0), K.measure, max_pieces)


def random_sign(rng: random.Random) -> int:
    return rng.choice((1, -1))


def compatible_triple(
    rng: random.Random, max_components: int = 5
) -> Tuple[CompactSet, CompactSet, PiecewiseLinear]:
    """``(K, M, psi)`` that are fiber compatible by construction ("gap surgery").

    ``M`` copies the component/gap pattern of ``K``: every gap length and every
    positive component length is rescaled by its own random factor, and
    ``psi`` transports each component of ``M`` onto the matching component of
    ``K`` through a random increasing PL map.
    """
    K = random_compact_set(rng, max_components)
    y = Fraction(rng.randint(-3, 3), rng.choice(DENOMS))
    comps = []
    prev_b = None
    for a, b in K.components:
        if prev_b is not None:
            y += (a - prev_b) * random_positive(rng, 3)
        length = (b - a) * random_positive(rng, 3) if b > a else Fraction(0)
        comps.append((y, y + length))
        y += length
        prev_b = b
    M = make_compact_set(comps)
    ts, vs = [Fraction(0)], [Fraction(0)]
    s = t = Fraction(0)
    for (ma, mb), (ka, kb) in zip(M.components, K.components):
        if mb == ma:
            continue
        piece = random_increasing_pl(rng, s, s + (mb - ma), t, t + (kb - ka), 3)
        ts += piece.breakpoints[1:]
        vs += piece.values[1:]
        s, t = s + (mb - ma), t + (kb - ka)
    return K, M, PiecewiseLinear(tuple(ts), tuple(vs))
