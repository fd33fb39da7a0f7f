"""SAT oracle: an embedded complete solver and an external DIMACS backend.

Both backends sit behind the same three entry points:

* :func:`solve` -- satisfiability with a total model on success,
* :func:`sat` -- the verdict alone, never a model,
* :func:`sat_assuming` -- the verdict under temporarily asserted literals.

The embedded solver is an iterative DPLL with two watched literals per
clause, unit propagation to fixpoint, and chronological backtracking.  It
is deterministic: decisions pick the lowest-numbered unassigned variable
that occurs in some clause and try value 1 first, so identical inputs
always produce identical models.  Variables absent from every clause are
completed with 0.

The external backend writes the problem to a temporary DIMACS file, runs
the configured executable on it, and reads a competition-style answer:
an ``s SATISFIABLE`` / ``s UNSATISFIABLE`` line with ``v `` model lines,
or, failing that, exit code 10/20.  Assumptions are lowered to appended
unit clauses.  Timeouts raise, distinct from an unsat answer.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cnf import Clause, Cnf
from .dimacs import emit_dimacs


class SolverError(RuntimeError):
    """External solver missing, crashed, or produced unusable output."""


class SolverTimeoutError(SolverError):
    """Time limit hit before a verdict; never conflate with unsat."""


@dataclass(frozen=True)
class SolveResult:
    """Either a total model (variable id -> 0/1 over all CNF variables) or
    unsat, represented by ``model is None``."""

    model: dict[int, int] | None

    @property
    def is_sat(self) -> bool:
        return self.model is not None

    @classmethod
    def sat(cls, model: dict[int, int]) -> "SolveResult":
        return cls(model)

    @classmethod
    def unsat(cls) -> "SolveResult":
        return cls(None)


@dataclass
class Backend:
    """Solver configuration plus a cumulative oracle-call counter.

    ``kind`` is ``"embedded"`` or ``"external"``; external backends need
    ``solver_path``.  ``time_limit`` is in seconds.
    """

    kind: str = "embedded"
    solver_path: str | None = None
    time_limit: float | None = None
    query_count: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.kind not in ("embedded", "external"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.kind == "external" and not self.solver_path:
            raise ValueError("external backend requires solver_path")


def solve(cnf: Cnf, backend: Backend) -> SolveResult:
    """One satisfiability query; on success the model is total and verified."""
    backend.query_count += 1
    if backend.kind == "embedded":
        return dpll_solve(cnf, time_limit=backend.time_limit)
    return _solve_external(cnf, backend)


def sat(cnf: Cnf, backend: Backend) -> bool:
    """Satisfiability verdict without exposing a model."""
    return solve(cnf, backend).is_sat


def sat_assuming(cnf: Cnf, assumptions: Sequence[int], backend: Backend) -> bool:
    """Verdict for ``cnf`` with each assumption literal asserted as a unit.

    The original CNF is left untouched; assumptions must be consistent and
    contain each variable at most once.
    """
    check_assumptions(assumptions)
    return sat(add_units(cnf, assumptions), backend)


def check_assumptions(assumptions: Sequence[int]) -> None:
    seen: set[int] = set()
    for lit in assumptions:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if abs(lit) in seen:
            raise ValueError(f"variable {abs(lit)} assumed twice")
        seen.add(abs(lit))


def add_units(cnf: Cnf, literals: Sequence[int]) -> Cnf:
    """New CNF with a unit clause per literal appended."""
    if not literals:
        return cnf
    num_vars = max(cnf.num_vars, max(abs(l) for l in literals))
    return Cnf(cnf.clauses + tuple((l,) for l in literals), num_vars)


def check_model(cnf: Cnf, model: Mapping[int, int]) -> bool:
    """Does the assignment satisfy every clause?"""
    return all(
        any(model[abs(l)] == (1 if l > 0 else 0) for l in clause)
        for clause in cnf.clauses
    )


# ---------------------------------------------------------------------------
# Embedded solver

_UNSET = -1


def dpll_solve(cnf: Cnf, time_limit: float | None = None) -> SolveResult:
    """Complete search over ``cnf``; see the module docstring for the
    branching/backtracking contract."""
    if any(len(c) == 0 for c in cnf.clauses):
        return SolveResult.unsat()

    n = cnf.num_vars
    assign = [_UNSET] * (n + 1)
    trail: list[int] = []
    qhead = 0
    # Clause literal lists are reordered in place so positions 0 and 1 are
    # always the watched literals.
    lits_of: list[list[int]] = []
    # watchers[2v] = clauses watching v, watchers[2v+1] = clauses watching -v.
    watchers: list[list[int]] = [[] for _ in range(2 * n + 2)]

    def widx(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def value(lit: int) -> int:
        v = assign[abs(lit)]
        if v == _UNSET:
            return _UNSET
        return v if lit > 0 else 1 - v

    def enqueue(lit: int) -> bool:
        v = value(lit)
        if v == 1:
            return True
        if v == 0:
            return False
        assign[abs(lit)] = 1 if lit > 0 else 0
        trail.append(lit)
        return True

    for clause in cnf.clauses:
        if len(clause) == 1:
            if not enqueue(clause[0]):
                return SolveResult.unsat()
        else:
            ci = len(lits_of)
            lits_of.append(list(clause))
            watchers[widx(clause[0])].append(ci)
            watchers[widx(clause[1])].append(ci)

    deadline = time.monotonic() + time_limit if time_limit is not None else None
    ticks = 0

    def propagate() -> bool:
        nonlocal qhead, ticks
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            ticks += 1
            if deadline is not None and ticks % 256 == 0 and time.monotonic() > deadline:
                raise SolverTimeoutError("embedded solver time limit exceeded")
            falsified = -lit
            watch_list = watchers[widx(falsified)]
            i = 0
            while i < len(watch_list):
                ci = watch_list[i]
                lits = lits_of[ci]
                if lits[0] == falsified:
                    lits[0], lits[1] = lits[1], lits[0]
                other = lits[0]
                if value(other) == 1:
                    i += 1
                    continue
                for k in range(2, len(lits)):
                    if value(lits[k]) != 0:
                        lits[1], lits[k] = lits[k], lits[1]
                        watchers[widx(lits[1])].append(ci)
                        watch_list[i] = watch_list[-1]
                        watch_list.pop()
                        break
                else:
                    if value(other) == 0:
                        return False
                    enqueue(other)
                    i += 1
        return True

    occurring = sorted({abs(l) for c in cnf.clauses for l in c})
    decisions: list[tuple[int, int]] = []  # (trail position, decided variable)

    while True:
        if not propagate():
            while decisions:
                pos, var = decisions.pop()
                for l in trail[pos:]:
                    assign[abs(l)] = _UNSET
                del trail[pos:]
                qhead = len(trail)
                # Value 1 was the decision; 0 is now forced at this point.
                enqueue(-var)
                break
            else:
                return SolveResult.unsat()
            continue
        var = next((v for v in occurring if assign[v] == _UNSET), None)
        if var is None:
            model = {v: (0 if assign[v] == _UNSET else assign[v]) for v in range(1, n + 1)}
            return SolveResult.sat(model)
        decisions.append((len(trail), var))
        enqueue(var)


# ---------------------------------------------------------------------------
# External backend

def _solve_external(cnf: Cnf, backend: Backend) -> SolveResult:
    with tempfile.TemporaryDirectory(prefix="pearlsat-") as tmp:
        problem = os.path.join(tmp, "problem.cnf")
        with open(problem, "w", encoding="ascii") as fh:
            fh.write(emit_dimacs(cnf))
        try:
            proc = subprocess.run(
                [backend.solver_path, problem],
                capture_output=True,
                text=True,
                timeout=backend.time_limit,
            )
        except subprocess.TimeoutExpired as exc:
            raise SolverTimeoutError(
                f"external solver exceeded {backend.time_limit}s"
            ) from exc
        except OSError as exc:
            raise SolverError(f"cannot run {backend.solver_path!r}: {exc}") from exc
    verdict, model_lits = _parse_solver_output(proc.stdout)
    if verdict is None:
        if proc.returncode == 10:
            verdict = True
        elif proc.returncode == 20:
            verdict = False
        else:
            raise SolverError(
                f"solver gave no verdict (exit code {proc.returncode})"
            )
    if not verdict:
        return SolveResult.unsat()
    model = {v: 0 for v in range(1, cnf.num_vars + 1)}
    for lit in model_lits:
        if abs(lit) > cnf.num_vars:
            raise SolverError(f"model literal {lit} out of range")
        model[abs(lit)] = 1 if lit > 0 else 0
    if not check_model(cnf, model):
        raise SolverError("external solver returned a non-model")
    return SolveResult.sat(model)


def _parse_solver_output(text: str) -> tuple[bool | None, list[int]]:
    verdict: bool | None = None
    lits: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            answer = line[2:].strip()
            if answer == "SATISFIABLE":
                verdict = True
            elif answer == "UNSATISFIABLE":
                verdict = False
        elif line.startswith("v "):
            try:
                lits.extend(int(tok) for tok in line[2:].split())
            except ValueError as exc:
                raise SolverError(f"bad model line {line!r}") from exc
    return verdict, [l for l in lits if l != 0]
