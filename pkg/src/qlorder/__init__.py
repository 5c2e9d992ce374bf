"""Likelihood orders over linear subspaces of finite-dimensional real spaces.

Audit ordering axioms on concrete orders, synthesize representing density
operators from finite constraint systems (or certify that none exists), and
run the sphere-geometry constructions behind the pure-state representation.
"""

from .subspaces import (
    DimensionMismatch,
    Subspace,
    complement,
    full,
    hausdorff,
    intersect,
    is_orthogonal,
    span,
    sum_subspaces,
    zero,
)
from .measures import (
    DensityOperator,
    InvariantViolation,
    mixture,
    mu,
    pure_state,
    random_density,
    uniform,
)
from .orders import (
    FiniteOrder,
    LexicographicOrder,
    LikelihoodOrder,
    MeasureOrder,
    OrderRelation,
    UnlistedSubspaceError,
    continuity_witness,
    finite_order,
    lexicographic_order,
    order_from_json,
    order_from_measure,
    order_to_json,
)
from .axioms import (
    AuditReport,
    CancelationInstance,
    audit,
    check_cancelation,
    check_definetti,
    check_monotonicity,
    check_negation,
    check_qualitative_additivity,
    generate_cancelation_instances,
)
from .representation import (
    ClassicalResult,
    IndeterminateError,
    InfeasibilityCertificate,
    RepresentationProblem,
    RepresentationResult,
    classical_represent,
    partial_representation,
    synthesize,
    verify_certificate,
    verify_classical_certificate,
)
from .sphere import (
    PironPath,
    SphereFrame,
    ew_normal,
    half_pole,
    piron_path,
    theta,
    verify_piron_path,
)
from .gallery import (
    EquatorScore,
    KSInstance,
    counter2_probe,
    counterexample_order,
    counterexample_problem,
    example31_order,
    ks_build,
    ks_color,
    load_peres33,
    pure_state_theorem_check,
    uniform_characterization_check,
)

__version__ = "0.1.0"
