"""pearlsat: propositional formulas to linear-size CNF, cardinality counting
via ripple-carry adder circuits, and greedy bitwise optimization / Partial
MaxSAT over a SAT oracle."""

from .adder import (
    binary_width,
    fulladder,
    halfadder,
    ripple_add,
    split,
    sum_bits,
    vector_value,
)
from .cnf import (
    Clause,
    Cnf,
    Polarity,
    gate_clauses,
    is_tautology,
    make_clause,
    transform_pg,
    transform_tseitin,
)
from .dimacs import DimacsError, WcnfProblem, emit_dimacs, parse_dimacs, parse_wcnf
from .formula import (
    FALSE,
    TRUE,
    And,
    Const,
    Formula,
    FormulaSyntaxError,
    Iff,
    Ite,
    Neg,
    Or,
    Var,
    VarPool,
    Xor,
    evaluate,
    parse_formula,
    render,
    simplify_constants,
    size,
    variables,
)
from .opt import (
    OptOutcome,
    UnsatisfiableError,
    fixed_value,
    maximize,
    minimize,
    partial_max_sat,
)
from .solver import (
    Backend,
    SolveResult,
    SolverError,
    SolverTimeoutError,
    add_units,
    check_model,
    dpll_solve,
    sat,
    sat_assuming,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "And", "Backend", "Clause", "Cnf", "Const", "DimacsError", "FALSE",
    "Formula", "FormulaSyntaxError", "Iff", "Ite", "Neg", "OptOutcome", "Or",
    "Polarity", "SolveResult", "SolverError", "SolverTimeoutError", "TRUE",
    "UnsatisfiableError", "Var", "VarPool", "WcnfProblem", "Xor", "add_units",
    "binary_width", "check_model", "dpll_solve", "emit_dimacs", "evaluate",
    "fixed_value", "fulladder", "gate_clauses", "halfadder", "is_tautology",
    "make_clause", "maximize", "minimize", "parse_dimacs", "parse_formula",
    "parse_wcnf", "partial_max_sat", "render", "ripple_add", "sat",
    "sat_assuming", "simplify_constants", "size", "solve", "split",
    "sum_bits", "transform_pg", "transform_tseitin", "variables",
    "vector_value",
]
