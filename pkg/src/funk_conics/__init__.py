"""Funk metric on the unit disk and Funk parabolas."""

from .core import (
    DiskPoint,
    DomainError,
    FunkDistanceResult,
    SampledCurve,
    TangentVector,
    arc_length,
    distance,
    funk_distance,
    funk_norm,
    rho,
    verify_distance_relation,
)
from .lines import (
    Direction,
    GeneralLine,
    HorizontalLine,
    LineDistanceResult,
    line_distance,
    line_to_point,
    point_to_line,
    reduce_to_horizontal,
)
from .oracle import (
    ResidualReport,
    grid_scan,
    line_distance_bruteforce,
    parabola_residual,
    verify_points,
)
from .parabola import (
    Branch,
    CanonicalEllipse,
    ConicCoefficients,
    ConicKind,
    DegenerateSpecError,
    IrreducibilityReport,
    ParabolaSpec,
    ParabolaType,
    QuarticCoefficients,
    canonical_ellipse,
    check_irreducible,
    classify,
    conic_coefficients,
    degenerate_locus,
    excluded_point,
    type1_coefficients,
    type2_coefficients,
    type34_coefficients,
)
from .render import FIGURES, RenderScene, emit_svg, render_svg
from .tracing import LocusPolyline, trace_locus

__version__ = "0.1.0"
