"""Command-line surface.

Subcommands::

    pearlsat cnf FILE [--full-tseitin] [--map PATH]
    pearlsat solve FILE
    pearlsat sat FILE
    pearlsat maximize FILE --vec a,b,c
    pearlsat minimize FILE --vec a,b,c
    pearlsat pmaxsat (WCNF | --hard FILE --soft FILE)

Inputs are formula DSL files or DIMACS (sniffed from the ``p`` header).
Solver selection: ``--backend embedded`` (default) or ``--backend external``
with ``--solver-path`` / the ``PEARLSAT_SOLVER`` environment variable, plus
``--timeout`` seconds.

Exit codes follow solver conventions: 10 satisfiable, 20 unsatisfiable,
2 usage or input errors, 1 backend/internal failures, 0 for plain
transformation commands.  Objective values print as ``o <value>``; models
print as ``name=0|1`` lines in name order for formula inputs and as a
``v`` literal line for DIMACS inputs.
"""

from __future__ import annotations

import argparse
import functools
import os
import sys
from typing import Sequence

from .cnf import Clause, Cnf, transform_pg, transform_tseitin
from .dimacs import DimacsError, emit_dimacs, parse_dimacs, parse_wcnf
from .formula import (
    FALSE,
    TRUE,
    Formula,
    FormulaSyntaxError,
    Neg,
    Or,
    Var,
    VarPool,
    parse_formula,
    simplify_constants,
)
from .opt import UnsatisfiableError, fixed_value, maximize, minimize, partial_max_sat
from .solver import Backend, SolverError, add_units, solve

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_SAT = 10
EXIT_UNSAT = 20


def run() -> None:
    sys.exit(main())


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (FormulaSyntaxError, DimacsError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pearlsat")
    sub = parser.add_subparsers(required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--backend", choices=["embedded", "external"], default="embedded")
        p.add_argument(
            "--solver-path",
            default=os.environ.get("PEARLSAT_SOLVER"),
            help="external solver executable (default: $PEARLSAT_SOLVER)",
        )
        p.add_argument("--timeout", type=float, default=None, metavar="SECS")
        p.add_argument(
            "--full-tseitin",
            action="store_true",
            help="full bi-implication encoding instead of the polarity reduction",
        )

    p = sub.add_parser("cnf", help="transform a formula file to DIMACS")
    p.add_argument("file")
    p.add_argument("--full-tseitin", action="store_true")
    p.add_argument("--map", dest="map_path", default=None,
                   help="variable-map sidecar path (default: FILE.map)")
    p.set_defaults(func=cmd_cnf)

    p = sub.add_parser("solve", help="solve a formula or DIMACS file, printing a model")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sat", help="satisfiability verdict only")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_sat)

    for name, direction in (("maximize", "largest"), ("minimize", "smallest")):
        p = sub.add_parser(name, help=f"fix a bit vector to its {direction} value")
        p.add_argument("file")
        p.add_argument("--vec", required=True,
                       help="comma-separated objective bits, least significant first")
        common(p)
        p.set_defaults(func=functools.partial(cmd_optimize, maximize_=(name == "maximize")))

    p = sub.add_parser("pmaxsat", help="partial MaxSAT over formulas or a WCNF file")
    p.add_argument("wcnf", nargs="?", default=None)
    p.add_argument("--hard", help="file with the mandatory formula")
    p.add_argument("--soft", help="file with one optional formula per line")
    common(p)
    p.set_defaults(func=cmd_pmaxsat)

    return parser


def _backend(args: argparse.Namespace) -> Backend:
    if args.backend == "external" and not args.solver_path:
        raise SolverError("external backend selected but no --solver-path/PEARLSAT_SOLVER")
    return Backend(kind=args.backend, solver_path=args.solver_path, time_limit=args.timeout)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _is_dimacs(text: str) -> bool:
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        return stripped.startswith("p ") or stripped.startswith("p\t")
    return False


def _transform(formula: Formula, pool: VarPool, full_tseitin: bool) -> Cnf:
    simplified = simplify_constants(formula)
    if full_tseitin:
        return transform_tseitin(simplified, pool)
    return transform_pg(simplified, pool)


def _load_problem(args: argparse.Namespace) -> tuple[Cnf, VarPool | None]:
    """Formula file -> transformed CNF plus its pool; DIMACS file -> CNF only."""
    text = _read(args.file)
    if _is_dimacs(text):
        return parse_dimacs(text), None
    pool = VarPool()
    formula = parse_formula(text, pool)
    return _transform(formula, pool, args.full_tseitin), pool


def _print_model(model: dict[int, int], pool: VarPool | None) -> None:
    if pool is not None:
        for name in sorted(pool.names):
            print(f"{name}={model[pool.names[name].id]}")
    else:
        lits = [v if model[v] else -v for v in sorted(model)]
        print("v " + " ".join(str(l) for l in lits + [0]))


def cmd_cnf(args: argparse.Namespace) -> int:
    pool = VarPool()
    formula = parse_formula(_read(args.file), pool)
    cnf = _transform(formula, pool, args.full_tseitin)
    sys.stdout.write(emit_dimacs(cnf))
    map_path = args.map_path or args.file + ".map"
    with open(map_path, "w", encoding="utf-8") as fh:
        for name in sorted(pool.names):
            fh.write(f"{name} {pool.names[name].id}\n")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    cnf, pool = _load_problem(args)
    result = solve(cnf, _backend(args))
    if not result.is_sat:
        print("UNSAT")
        return EXIT_UNSAT
    _print_model(result.model, pool)
    return EXIT_SAT


def cmd_sat(args: argparse.Namespace) -> int:
    cnf, _ = _load_problem(args)
    if solve(cnf, _backend(args)).is_sat:
        print("SAT")
        return EXIT_SAT
    print("UNSAT")
    return EXIT_UNSAT


def cmd_optimize(args: argparse.Namespace, maximize_: bool) -> int:
    text = _read(args.file)
    backend = _backend(args)
    entries = [e.strip() for e in args.vec.split(",") if e.strip()]
    if not entries:
        print("error: --vec is empty", file=sys.stderr)
        return EXIT_USAGE
    if _is_dimacs(text):
        cnf, pool = parse_dimacs(text), None
        try:
            vec = [int(e) for e in entries]
        except ValueError:
            print("error: --vec must be variable indices for DIMACS input", file=sys.stderr)
            return EXIT_USAGE
    else:
        pool = VarPool()
        formula = parse_formula(text, pool)
        cnf = _transform(formula, pool, args.full_tseitin)
        try:
            vec = [pool.var(e).id for e in entries]
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        fixed = (maximize if maximize_ else minimize)(vec, cnf, backend)
    except UnsatisfiableError:
        print("UNSAT")
        return EXIT_UNSAT
    print(f"o {fixed_value(vec, fixed)}")
    witness = solve(add_units(cnf, [v if fixed[v] else -v for v in vec]), backend)
    _print_model(witness.model, pool)
    return EXIT_SAT


def cmd_pmaxsat(args: argparse.Namespace) -> int:
    wcnf_mode = args.wcnf is not None
    if wcnf_mode == bool(args.hard or args.soft):
        print("error: give either a WCNF file or --hard and --soft", file=sys.stderr)
        return EXIT_USAGE
    backend = _backend(args)
    pool = VarPool()
    if wcnf_mode:
        problem = parse_wcnf(_read(args.wcnf))
        inputs = pool.reserve(problem.num_vars)
        hard = _conjoin([_clause_formula(c, inputs) for c in problem.hard])
        soft = [_clause_formula(c, inputs) for c in problem.soft]
    else:
        if not (args.hard and args.soft):
            print("error: --hard and --soft are both required", file=sys.stderr)
            return EXIT_USAGE
        hard = parse_formula(_read(args.hard), pool)
        soft = []
        for line in _read(args.soft).splitlines():
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                soft.append(parse_formula(line, pool))
    try:
        outcome = partial_max_sat(hard, soft, pool, backend)
    except UnsatisfiableError:
        print("UNSAT (hard)")
        return EXIT_UNSAT
    print(f"o {outcome.optimum}")
    if wcnf_mode:
        restricted = {v.id: outcome.model[v.id] for v in inputs}
        _print_model(restricted, None)
    else:
        _print_model(outcome.model, pool)
    return EXIT_SAT


def _clause_formula(clause: Clause, inputs: list[Var]) -> Formula:
    if not clause:
        return FALSE
    literals = [inputs[abs(l) - 1] if l > 0 else Neg(inputs[abs(l) - 1]) for l in clause]
    return functools.reduce(Or, literals)


def _conjoin(formulas: list[Formula]) -> Formula:
    """Balanced conjunction; keeps recursion depth logarithmic for big files."""
    if not formulas:
        return TRUE
    while len(formulas) > 1:
        paired = [
            formulas[i] * formulas[i + 1] if i + 1 < len(formulas) else formulas[i]
            for i in range(0, len(formulas), 2)
        ]
        formulas = paired
    return formulas[0]
