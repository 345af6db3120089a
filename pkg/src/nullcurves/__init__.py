"""Null curves on 3-dimensional Sasaki-like almost contact B-metric manifolds."""

from .curves import CausalCharacter, Curve, SlantInvariants, causal_character, slant_invariants
from .errors import (
    ConfigError,
    ConsistencyError,
    DegenerateMetric,
    DegenerateSlant,
    ForbiddenDegenerate,
    GeodesicPoint,
    MalformedA,
    NullCurveError,
    NullDirection,
    PreconditionMismatch,
    ZeroA,
    ZeroVelocity,
)
from .fixtures import curve_fixture, structure_fixture
from .frenet_nonnull import (
    NonNullClass,
    NonNullFrenetData,
    arc_length_reparam,
    classify_nonnull,
    frenet_apparatus,
    verify_induced_theorems,
)
from .frenet_null import (
    FrameKind,
    NullFrenetData,
    SignConvention,
    classify_null,
    constant_curvature_check,
    distinguished_frame_Fbar,
    frenet_residuals,
    general_frame_F,
    is_generalized_helix,
    is_geodesic_slant,
    is_null_cubic,
    is_phi_geodesic,
    legendre_frames,
)
from .lie_group import (
    LieAlgebraVector,
    ad_matrix,
    adjoint_curve,
    group_exp,
    lie_frame_Fbar,
    slant_null_tangent,
)
from .manifold import (
    ACBMStructure,
    FrameConnection,
    MetricTag,
    is_sasaki_like,
    koszul_connection,
    verify_structure,
)

__version__ = "0.1.0"
