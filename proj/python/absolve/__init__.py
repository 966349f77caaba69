"""ABS-class solvers: linear, least-squares, Diophantine and LP problems,
quasi-Newton updates and linearly constrained minimization."""

from ._core import (
    DEFAULT_TOL,
    AbsError,
    InfeasibleStructureError,
    ParameterError,
    PreconditionError,
    ShapeError,
    StateError,
    dio_general_solution,
    dio_solve,
    generate_conditioned,
    generate_integer,
    generate_lp,
    lp_solve,
    minimize,
    qn_structured_update,
    qn_update,
    solve,
    unconstrained_min,
)

__all__ = [
    "DEFAULT_TOL",
    "AbsError",
    "InfeasibleStructureError",
    "ParameterError",
    "PreconditionError",
    "ShapeError",
    "StateError",
    "dio_general_solution",
    "dio_solve",
    "generate_conditioned",
    "generate_integer",
    "generate_lp",
    "lp_solve",
    "minimize",
    "qn_structured_update",
    "qn_update",
    "solve",
    "unconstrained_min",
]
