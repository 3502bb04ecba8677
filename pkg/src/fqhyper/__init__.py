"""Exact point counts, bounds and extremal classification for hypersurfaces
over finite fields."""

from .gf import Field, FieldEmbedding, embed, make_field
from .poly import Hypersurface, MultiPoly, hypersurface, parse
from .projgeo import (
    LinearSubspace,
    count_points,
    count_points_ext,
    enum_points,
    proj_point_count,
    section,
    section_count,
)
from .bounds import (
    BoundReport,
    aubry_perret_bound,
    make_report,
    proj_space_count,
    serre_bound,
    sziklai_bound,
    theta,
)
from .analysis import (
    ConeReport,
    CoverageReport,
    SingularityReport,
    cone_analysis,
    covered_by_lines,
    is_space_filling,
    linear_components,
    section_spectrum,
    singular_points,
)
from .constructions import (
    AntisymmetricSpec,
    corollary_surfaces,
    gamma_curve,
    hermitian,
    hermitian_cone,
    hyperbolic_quadric,
    hyperplane_pencil_union,
    quadric_pencil,
    space_filling,
)
from .equivalence import EquivalenceVerdict, Fingerprint, fingerprint, pgl_search
from .classify import Classification, classify
from .scan import ScanConfig, ScanResult, run_scan

__version__ = "0.1.0"
