"""Fixed-seed reproduction suite: worked examples plus randomized property checks.

Every item is exact (rational equality, no tolerance).  Each returns an
:class:`ItemResult` whose ``detail`` is deterministic for a given seed, so
the report can be compared byte for byte across runs.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from .alexiewicz import alexiewicz_norm, embed, unembed
from .compact import generate_truncated_reciprocal, make_compact_set
from .compatibility import (
    E_SET_MISMATCH,
    FIBER_CARDINALITY,
    check_fiber_compatibility,
    check_gap_compatibility,
    compatibility_growth_curve,
)
from .isometry import (
    IsometryDescriptor,
    apply_isometry,
    canonical_isometry,
    recover_descriptor,
    verify_J_identity,
)
from .lifting import (
    affine_extension,
    difference_set,
    interval_decomposition,
    lift,
    lipschitz_report,
    predicted_difference_set,
    verify_bijection,
    verify_conjugacy,
)
from .numeric import PiecewiseLinear, pl_sup_abs
from .projection import exceptional_set, gap_levels, project, projection_table, selector, selector_jumps
from .random_gen import (
    compatible_triple,
    random_compact_set,
    random_psi,
    random_rational,
    random_sign,
    random_step_function,
)


@dataclass(frozen=True)
class ItemResult:
    item: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float = 0.0

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget


def _fail(msg: str):
    return False, msg


def check_e_set_example(seed: int, n: Optional[int]):
    K = make_compact_set([(0, 1)])
    M = make_compact_set([(0, Fraction(1, 2)), (1, 1)])
    r = check_fiber_compatibility(K, M, PiecewiseLinear.linear(Fraction(1, 2), 2))
    if r.compatible or r.reason != E_SET_MISMATCH or r.level != Fraction(1, 2):
        return _fail(f"unexpected report {r}")
    return True, str(r)


def check_cardinality_example(seed: int, n: Optional[int]):
    K = make_compact_set([(0, 1), (2, 2)])
    M = make_compact_set([(0, 1), (2, 2), (3, 3)])
    r = check_fiber_compatibility(K, M, PiecewiseLinear.identity(0, 1))
    if r.compatible or r.reason != FIBER_CARDINALITY or (r.m_count, r.k_count) != (3, 2) or r.level != 1:
        return _fail(f"unexpected report {r}")
    return True, str(r)


def check_growth_example(seed: int, n: Optional[int]):
    n_max = 50 if n is None else n
    if n_max < 2:
        return _fail("need N >= 2")
    curve = compatibility_growth_curve((1, 2), range(2, n_max + 1))
    for N, C in curve:
        if C != N:
            return _fail(f"C({N}) = {C}, expected {N}")
    if any(not c1 < c2 for (_, c1), (_, c2) in zip(curve, curve[1:])):
        return _fail("C(N) is not strictly increasing")
    # per-pair ratios at the largest N
    K = generate_truncated_reciprocal(1, n_max)
    M = generate_truncated_reciprocal(2, n_max)
    _, _, corr = check_gap_compatibility(K, M, PiecewiseLinear.identity(0, 1))
    by_left = {p.U.left: p for p in corr.pairs}
    for k in range(1, n_max):
        p = by_left.get(Fraction(1, (k + 1) ** 2))
        if p is None or p.U.right != Fraction(1, k * k):
            return _fail(f"gap of pair {k} missing")
        if p.V.left != Fraction(1, k + 1) or p.ratio != Fraction(k * (k + 1), 2 * k + 1):
            return _fail(f"pair {k} has ratio {p.ratio}")
    return True, f"C(N) = N for N = 2..{n_max}; C({n_max}) = \"{curve[-1][1]}\""


def _isometry_cases(seed: int, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        K = random_compact_set(rng)
        M = random_compact_set(rng)
        D = IsometryDescriptor(random_sign(rng), random_psi(rng, M, K), K, M)
        yield D, random_step_function(rng, K)


def check_isometry_norm(seed: int, n: Optional[int]):
    count = 500 if n is None else n
    for i, (D, f) in enumerate(_isometry_cases(seed, count)):
        if alexiewicz_norm(apply_isometry(D, f)) != alexiewicz_norm(f):
            return _fail(f"case {i}: norms differ")
    return True, f"{count} cases, norms equal"


def check_representation(seed: int, n: Optional[int]):
    count = 500 if n is None else n
    for i, (D, f) in enumerate(_isometry_cases(seed, count)):
        chk = verify_J_identity(D, f)
        if not chk.holds:
            return _fail(f"case {i}: primitives differ at {chk.witness}")
    return True, f"{count} cases, primitive identity exact"


def check_recovery(seed: int, n: Optional[int]):
    count = 100 if n is None else n
    rng = random.Random(seed + 1)
    for i in range(count):
        K = random_compact_set(rng)
        M = random_compact_set(rng)
        D = IsometryDescriptor(random_sign(rng), random_psi(rng, M, K), K, M)
        got = recover_descriptor(K, M, D, seed=seed + i)
        if got != D:
            return _fail(f"case {i}: recovered descriptor differs")
    return True, f"{count} descriptors recovered exactly"


def check_embedding(seed: int, n: Optional[int]):
    count = 500 if n is None else n
    rng = random.Random(seed + 2)
    for i in range(count):
        K = random_compact_set(rng)
        f = random_step_function(rng, K)
        G = embed(f)
        # independent sup: running sums at the cell ends
        acc, best = Fraction(0), Fraction(0)
        for a, b, v in f.cells():
            acc += v * (b - a)
            best = max(best, abs(acc))
        if pl_sup_abs(G) != alexiewicz_norm(f) or best != alexiewicz_norm(f):
            return _fail(f"case {i}: sup of primitive differs from the norm")
        if unembed(K, G) != f:
            return _fail(f"case {i}: unembed(embed(f)) != f")
        for a, b, _ in f.cells():
            mid = (a + b) / 2
            if G.slope_at(mid) != f(selector(K, mid)):
                return _fail(f"case {i}: slope at level {mid} differs from f")
    return True, f"{count} step functions"


def _oracle_jumps(K) -> List[Fraction]:
    """Selector jumps found by stepping a little to the right of each level."""
    lengths = [b - a for a, b in K.components if b > a] + [g.length for g in K.gaps()]
    delta = min(lengths) / 4
    cum = projection_table(K).cumulative
    out = []
    for t in sorted(set(cum)):
        if t + delta <= K.measure and selector(K, t + delta) - selector(K, t) > delta:
            out.append(t)
    return out


def check_projection_laws(seed: int, n: Optional[int]):
    count = 100 if n is None else n
    rng = random.Random(seed + 3)
    for i in range(count):
        K = random_compact_set(rng)
        pts = {a for a, _ in K.components} | {b for _, b in K.components}
        for a, b in K.components:
            if b > a:
                pts.update(a + random_rational(rng) * (b - a) for _ in range(3))
        pts = sorted(pts)
        vals = [project(K, x) for x in pts]
        if vals[0] != 0 or vals[-1] != K.measure:
            return _fail(f"set {i}: projection does not span [0, |K|]")
        for x, y, u, v in zip(pts, pts[1:], vals, vals[1:]):
            if not 0 <= v - u <= y - x:
                return _fail(f"set {i}: projection not monotone 1-Lipschitz at {x}, {y}")
        for _ in range(100):
            t = random_rational(rng) * K.measure
            if project(K, selector(K, t)) != t:
                return _fail(f"set {i}: projection of selector differs at level {t}")
        E = exceptional_set(K)
        if tuple(gap_levels(K)) != E:
            return _fail(f"set {i}: exceptional set differs from gap levels")
        expected = tuple(t for t in E if t != K.measure)
        if selector_jumps(K) != expected or tuple(_oracle_jumps(K)) != expected:
            return _fail(f"set {i}: selector jumps differ from the exceptional set")
    return True, f"{count} sets"


def check_decomposition(seed: int, n: Optional[int]):
    count = 500 if n is None else n
    rng = random.Random(seed + 4)
    done = 0
    while done < count:
        K = random_compact_set(rng)
        if len(K.components) == 1 and K.min == K.max:
            continue
        pick = []
        for _ in range(2):
            a, b = rng.choice(K.components)
            pick.append(a + random_rational(rng) * (b - a) if b > a else a)
        a, b = sorted(pick)
        if a == b:
            continue
        inc, lengths = interval_decomposition(K, a, b)
        if b - a != inc + sum(lengths):
            return _fail(f"case {done}: {b} - {a} != {inc} + {sum(lengths)}")
        done += 1
    return True, f"{count} intervals"


def check_lifting(seed: int, n: Optional[int]):
    count = 100 if n is None else n
    rng = random.Random(seed + 5)
    for i in range(count):
        K, M, psi = compatible_triple(rng)
        phi = lift(K, M, psi)
        conj = verify_conjugacy(phi)
        if not conj.holds:
            return _fail(f"triple {i}: conjugacy fails at {conj.witness}")
        bij = verify_bijection(phi)
        if not bij.holds:
            return _fail(f"triple {i}: not an increasing bijection near {bij.witness}")
        if difference_set(phi, K, M, psi) != predicted_difference_set(M):
            return _fail(f"triple {i}: difference set mismatch")
        rep = lipschitz_report(phi)
        if not rep.bound_check:
            return _fail(f"triple {i}: Lipschitz bound violated")
        ext = affine_extension(phi).as_pl
        if max(ext.slopes()) != phi.lip_forward:
            return _fail(f"triple {i}: lip_forward differs from the max slope of the extension")
        for (u, v), slope in zip(zip(ext.breakpoints, ext.breakpoints[1:]), ext.slopes()):
            mid = (u + v) / 2
            if mid in M and slope != psi.slope_at(project(M, mid)):
                return _fail(f"triple {i}: slope of the extension at {mid} differs from psi'")
    return True, f"{count} compatible triples"


def check_canonical(seed: int, n: Optional[int]):
    count = 50 if n is None else n
    rng = random.Random(seed + 6)
    for i in range(count):
        K = random_compact_set(rng)
        M = random_compact_set(rng)
        D = canonical_isometry(K, M)
        for _ in range(3):
            f = random_step_function(rng, K)
            if alexiewicz_norm(apply_isometry(D, f)) != alexiewicz_norm(f):
                return _fail(f"pair {i}: canonical map changes a norm")
            if not verify_J_identity(D, f).holds:
                return _fail(f"pair {i}: canonical map breaks the primitive identity")
    return True, f"{count} pairs"


# item id -> (check, time budget in seconds)
ITEMS: Dict[str, tuple] = {
    "example-4.3": (check_e_set_example, 0.001),
    "example-4.4": (check_cardinality_example, 0.001),
    "example-5.3": (check_growth_example, 1.0),
    "isometry-norm": (check_isometry_norm, 5.0),
    "representation": (check_representation, 5.0),
    "descriptor-recovery": (check_recovery, 2.0),
    "embedding": (check_embedding, 3.0),
    "projection-laws": (check_projection_laws, 3.0),
    "interval-decomposition": (check_decomposition, 2.0),
    "lifting": (check_lifting, 5.0),
    "canonical-isometry": (check_canonical, 2.0),
}


def run_item(item: str, seed: int = 0, n: Optional[int] = None) -> ItemResult:
    check, budget = ITEMS[item]
    start = time.perf_counter()
    try:
        ok, detail = check(seed, n)
    except Exception as exc:  # a crash is a failure of the item, reported not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ItemResult(item, ok, detail, time.perf_counter() - start, budget)


def run_all(seed: int = 0, only: Optional[List[str]] = None, n: Optional[int] = None,
            on_result: Optional[Callable[[ItemResult], None]] = None) -> List[ItemResult]:
    results = []
    for item in only or list(ITEMS):
        r = run_item(item, seed, n)
        if on_result:
            on_result(r)
        results.append(r)
    return results
