"""Python bindings for the workforce scheduling and routing toolkit."""

from ._mwsrpdt import (
    TIME_EPS,
    AcoParams,
    BudgetExceededError,
    EmptySolutionError,
    Error,
    FeasibilityReport,
    HistoryEntry,
    InfeasibleInputError,
    Instance,
    InvalidConfigError,
    InvalidInstanceError,
    IoError,
    ModelStats,
    ObjectiveValue,
    OracleResult,
    ParseError,
    RunResult,
    Solution,
    StalledDayError,
    TaskRef,
    Violation,
    Visit,
    check_feasible,
    construct_greedy,
    emit_model,
    evaluate,
    generate,
    instance_from_string,
    instance_to_string,
    load_instance,
    load_solution,
    recompute_objective,
    run,
    save_instance,
    save_solution,
    solution_from_string,
    solution_to_string,
    solve_exact,
)

__all__ = [
    "TIME_EPS",
    "AcoParams",
    "BudgetExceededError",
    "EmptySolutionError",
    "Error",
    "FeasibilityReport",
    "HistoryEntry",
    "InfeasibleInputError",
    "Instance",
    "InvalidConfigError",
    "InvalidInstanceError",
    "IoError",
    "ModelStats",
    "ObjectiveValue",
    "OracleResult",
    "ParseError",
    "RunResult",
    "Solution",
    "StalledDayError",
    "TaskRef",
    "Violation",
    "Visit",
    "check_feasible",
    "construct_greedy",
    "emit_model",
    "evaluate",
    "generate",
    "instance_from_string",
    "instance_to_string",
    "load_instance",
    "load_solution",
    "recompute_objective",
    "run",
    "save_instance",
    "save_solution",
    "solution_from_string",
    "solution_to_string",
    "solve_exact",
]
