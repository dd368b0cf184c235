"""Exact Alexiewicz-norm calculus on finitely presented compact subsets of the line."""

from .alexiewicz import (
    Primitive,
    StepFunction,
    alexiewicz_norm,
    embed,
    primitive,
    primitive_at,
    unembed,
)
from .compact import (
    CompactSet,
    Gap,
    gaps,
    generate_fat_cantor,
    generate_truncated_reciprocal,
    make_compact_set,
    measure,
)
from .compatibility import (
    FiberMatching,
    GapCorrespondence,
    Incompatibility,
    check_fiber_compatibility,
    check_gap_compatibility,
    compatibility_growth_curve,
    gap_correspondence,
)
from .errors import *  # noqa: F401,F403
from .isometry import (
    IsometryDescriptor,
    apply_isometry,
    apply_pointwise,
    canonical_isometry,
    compose_isometries,
    invert_isometry,
    recover_descriptor,
    verify_J_identity,
)
from .lifting import (
    AffineExtension,
    LiftedMap,
    affine_extension,
    difference_set,
    interval_decomposition,
    lift,
    lipschitz_report,
    predicted_difference_set,
    selector_map_phi_sigma,
    verify_bijection,
    verify_conjugacy,
)
from .numeric import (
    PiecewiseLinear,
    Q,
    pl_compose,
    pl_eval,
    pl_invert,
    pl_slope_bounds,
    pl_sup_abs,
)
from .projection import (
    Fiber,
    FunctionOnK,
    ProjectionTable,
    exceptional_set,
    extended_project,
    fiber,
    phi_map,
    project,
    projection_table,
    psi_map,
    selector,
)

__version__ = "0.1.0"
