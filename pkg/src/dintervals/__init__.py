"""Workbench for intersection patterns of separated multi-level intervals.

A point lives on one of d ordered levels; a set meets each level in a
contiguous run of the level's points.  The package computes nerves and
sweep collapses of such families, checks Radon / Helly style statements
exhaustively, solves exact piercing and fractional matching problems,
and generates seeded random corpora for all of the above.
"""

from .complexes import (
    CollapseSequence,
    CollapseStep,
    SimplicialComplex,
    SweepIteration,
    SweepResult,
    colorful_face_stats,
    elementary_collapse,
    face,
    is_d_collapsible,
    nerve,
    sweep_collapse,
    truncate_family,
)
from .errors import (
    DimensionMismatchError,
    DIntervalError,
    GroundSetMismatchError,
    GuardExceededError,
    NotAFaceError,
    NotFreeError,
    PreconditionError,
    SchemaError,
    SweepInvariantError,
    TheoremViolationError,
)
from .generators import (
    ColorfulHellyProperty,
    ConditionedOutcome,
    GenSpec,
    KIntersectRich,
    PqProperty,
    gen_conditioned,
    gen_family,
    gen_ground,
    gen_helly_lower_bound,
    gen_instance,
    gen_radon_lower_bound,
)
from .geometry import (
    DInterval,
    LevelInterval,
    LexValue,
    Point,
    PointSet,
    TraceSet,
    f_value,
    hull,
    intersect_all,
    k_intersects,
    minimal_dinterval,
    trace_of,
)
from .helly import (
    ColorfulSelection,
    HellyReport,
    RadonPartition,
    cfh_stats,
    colorful_helly_points,
    frac_helly_stats,
    helly_check,
    max_k_intersecting_subfamily,
    maxima_witness_subfamily,
    partial_colorful_size,
    radon_number_bruteforce,
    radon_partition,
)
from .instances import Instance, dump_instance, parse_instance, serialize_instance
from .piercing import (
    BlowUpFamily,
    LPSolution,
    PiercingResult,
    blow_up,
    candidate_points,
    fractional_lp,
    max_point_cover,
    nu_exact,
    pierce_all,
    piercing_bound_check,
    pq_check,
    tau_exact,
)
from .reports import Report, emit_report, jsonify

__version__ = "0.1.0"

__all__ = [
    "BlowUpFamily",
    "CollapseSequence",
    "CollapseStep",
    "ColorfulHellyProperty",
    "ColorfulSelection",
    "ConditionedOutcome",
    "DInterval",
    "DIntervalError",
    "DimensionMismatchError",
    "GenSpec",
    "GroundSetMismatchError",
    "GuardExceededError",
    "HellyReport",
    "Instance",
    "KIntersectRich",
    "LPSolution",
    "LevelInterval",
    "LexValue",
    "NotAFaceError",
    "NotFreeError",
    "PiercingResult",
    "Point",
    "PointSet",
    "PqProperty",
    "PreconditionError",
    "RadonPartition",
    "Report",
    "SchemaError",
    "SimplicialComplex",
    "SweepInvariantError",
    "SweepIteration",
    "SweepResult",
    "TheoremViolationError",
    "TraceSet",
    "blow_up",
    "candidate_points",
    "cfh_stats",
    "colorful_face_stats",
    "colorful_helly_points",
    "dump_instance",
    "elementary_collapse",
    "emit_report",
    "f_value",
    "face",
    "frac_helly_stats",
    "fractional_lp",
    "gen_conditioned",
    "gen_family",
    "gen_ground",
    "gen_helly_lower_bound",
    "gen_instance",
    "gen_radon_lower_bound",
    "helly_check",
    "hull",
    "intersect_all",
    "is_d_collapsible",
    "jsonify",
    "k_intersects",
    "max_k_intersecting_subfamily",
    "max_point_cover",
    "maxima_witness_subfamily",
    "minimal_dinterval",
    "nerve",
    "nu_exact",
    "parse_instance",
    "partial_colorful_size",
    "pierce_all",
    "piercing_bound_check",
    "pq_check",
    "radon_number_bruteforce",
    "radon_partition",
    "serialize_instance",
    "sweep_collapse",
    "tau_exact",
    "trace_of",
    "truncate_family",
]
