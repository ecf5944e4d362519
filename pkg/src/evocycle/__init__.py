"""Deterministic evolutionary games on graphs.

Mean-payoff imitation dynamics with exact rational arithmetic, builders for
graph families that realize any prescribed minimal period, integer-parameter
solvers with exact inequality certificates, and verifiers that replay a
built instance against the pattern it was designed for.
"""

from .analysis import (
    InvariantViolation,
    check_local_lemmas,
    cooperator_series,
    f_of_t,
    verify_fcsh_dynamics,
    verify_hdpd_dynamics,
    verify_tree_invariants,
)
from .constructions import (
    ConstructedInstance,
    Role,
    RoleMap,
    build_fcsh,
    build_hdpd,
    build_tree,
)
from .dynamics import (
    NonGenericParamsWarning,
    TrajectoryBudgetError,
    TrajectoryReport,
    argmax_strategies,
    is_fixed_point,
    step,
    trajectory,
    utility_profile,
)
from .game import (
    SYNCHRONOUS,
    GameParams,
    Graph,
    Scenario,
    StrategyVector,
    UpdateSchedule,
    VertexClass,
    as_rational,
    classify_scenario,
    mean_utility,
    normalize_params,
    vertex_class,
)
from .solver import (
    CertificateFailure,
    FcshCertificate,
    HdpdCertificate,
    ScenarioError,
    SearchBudgetError,
    SolverError,
    TreeCertificate,
    check_fcsh,
    check_hdpd,
    check_tree,
    hdpd_q_bounds,
    hdpd_slopes,
    solve_fcsh,
    solve_hdpd,
    solve_tree,
)

__version__ = "0.1.0"

__all__ = [
    "GameParams",
    "Scenario",
    "Graph",
    "StrategyVector",
    "UpdateSchedule",
    "SYNCHRONOUS",
    "VertexClass",
    "as_rational",
    "classify_scenario",
    "normalize_params",
    "mean_utility",
    "vertex_class",
    "argmax_strategies",
    "step",
    "is_fixed_point",
    "trajectory",
    "utility_profile",
    "TrajectoryReport",
    "TrajectoryBudgetError",
    "NonGenericParamsWarning",
    "Role",
    "RoleMap",
    "ConstructedInstance",
    "build_fcsh",
    "build_hdpd",
    "build_tree",
    "SolverError",
    "ScenarioError",
    "CertificateFailure",
    "SearchBudgetError",
    "FcshCertificate",
    "HdpdCertificate",
    "TreeCertificate",
    "check_fcsh",
    "solve_fcsh",
    "check_hdpd",
    "solve_hdpd",
    "hdpd_q_bounds",
    "hdpd_slopes",
    "check_tree",
    "solve_tree",
    "f_of_t",
    "verify_fcsh_dynamics",
    "verify_hdpd_dynamics",
    "verify_tree_invariants",
    "check_local_lemmas",
    "cooperator_series",
    "InvariantViolation",
    "__version__",
]
