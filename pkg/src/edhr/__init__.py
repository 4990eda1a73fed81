"""Exact 0-1 knapsack solving with the extended Dembo-Hammer reduction."""
from .kpcore import (
    Bounds,
    Instance,
    InstanceError,
    SortedInstance,
    Solution,
    bounds,
    break_solution_lower_bound,
    dantzig_upper_bound,
    evaluate,
    normalize_and_sort,
)
from .reduction import (
    CardinalityConstraints,
    EdhrPartition,
    EnumerationBlowUp,
    EnumerationPlan,
    Subproblem,
    TheoremAudit,
    assemble_branch,
    audit_optimal,
    cardinality_constraints,
    dhr_partition,
    edhr_partition,
    enumeration_plan,
    fixing_sets_agree_with_dhr,
)
from .solvers import (
    SearchStats,
    SolverConfig,
    solve,
    solve_branch_bound,
    solve_dp,
    solve_edhr,
    solve_exhaustive,
)

__version__ = "0.1.0"
