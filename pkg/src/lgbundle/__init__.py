"""Critical points, monodromy and Hom tables for Kleinschmidt bundles X_a over P^s."""

from .bundle import (
    BundleSpec,
    LatticeVector,
    PicClass,
    ToricDivisor,
    collection_labels,
    divisor_class,
    exceptional_collection,
    generators,
    parse_divisor,
    polytope_vertices,
    validate_spec,
)
from .errors import (
    AmbiguousMatch,
    DegenerateLift,
    FanoViolation,
    GridDegenerate,
    InvalidBundle,
    LabelAmbiguity,
    LGBundleError,
    NegativeTwist,
    NewtonDivergence,
    NonGenericParameter,
    NumericalError,
    PathCollision,
    SizeMismatch,
    Unsorted,
    ZeroCoordinate,
)
from .labeling import (
    TorusPoint,
    assign_labels,
    grid_deviation,
    hyperplane_check,
    labeled_set,
    limit_grid,
    sample_curve,
    theta,
    theta_plus,
    verify_grid_convergence,
)
from .lg_system import CoeffVector, CritPoint, CritSet, jacobian, newton, reduced_system
from .monodromy import (
    act,
    div_plus,
    hom_mon_dimension,
    hom_mon_table,
    verify_composition,
    verify_theorem_B,
    verify_thm42_numeric,
)
from .persist import load_critset, save_critset
from .quiver import Quiver, build_quiver, emit_dot, emit_json, quiver_from_json
from .report import Report
from .sections import HomTable, count_sections, hom_table
from .solver import solve_crit, solve_reduced
from .tracker import (
    LinearPath,
    LoopPath,
    Permutation,
    SegmentPath,
    monodromy_permutation,
    track_loop,
    track_segment,
)

__version__ = "0.1.0"
