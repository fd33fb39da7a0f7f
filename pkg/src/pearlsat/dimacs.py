"""DIMACS CNF and WCNF text formats.

Emission is bit-exact and stable: optional ``c `` comment lines, one
``p cnf <vars> <clauses>`` header, then one clause per line as signed
decimal literals terminated by ``0``.  Parsing is strict: the header
must come first (after comments/blank lines), every clause line must end
with a single ``0``, indices must stay within the header's variable
count, and the clause count must match.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cnf import Clause, Cnf, make_clause


class DimacsError(ValueError):
    """Malformed DIMACS input; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def emit_dimacs(cnf: Cnf, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}\n" for c in comments]
    out.append(f"p cnf {cnf.num_vars} {cnf.num_clauses}\n")
    for clause in cnf.clauses:
        out.append(" ".join(str(lit) for lit in clause) + " 0\n" if clause else "0\n")
    return "".join(out)


def parse_dimacs(text: str) -> Cnf:
    num_vars, _, clauses = _parse_clausal(text, "cnf")
    return Cnf(tuple(clause for _, clause, _ in clauses), num_vars)


@dataclass(frozen=True)
class WcnfProblem:
    """Unweighted partial MaxSAT instance: mandatory clauses plus unit-weight
    optional ones.  ``top_weight`` marks the mandatory clauses in the file."""

    num_vars: int
    top_weight: int
    hard: tuple[Clause, ...]
    soft: tuple[Clause, ...]


def parse_wcnf(text: str) -> WcnfProblem:
    num_vars, top, clauses = _parse_clausal(text, "wcnf")
    hard: list[Clause] = []
    soft: list[Clause] = []
    for weight, clause, line_no in clauses:
        if weight == top:
            hard.append(clause)
        elif weight == 1:
            soft.append(clause)
        else:
            raise DimacsError(
                f"soft clauses must have weight 1, got {weight}", line_no
            )
    return WcnfProblem(num_vars, top, tuple(hard), tuple(soft))


def _parse_clausal(text: str, fmt: str) -> tuple[int, int | None, list[tuple[int | None, Clause, int]]]:
    """Shared cnf/wcnf reader; yields (weight, clause, line) triples, weight
    None for plain cnf."""
    weighted = fmt == "wcnf"
    num_vars: int | None = None
    num_clauses = 0
    top: int | None = None
    clauses: list[tuple[int | None, Clause, int]] = []
    last_line = 1
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError("duplicate header", line_no)
            fields = line.split()
            want = 5 if weighted else 4
            ok = len(fields) == want and fields[0] == "p" and fields[1] == fmt
            try:
                if ok:
                    num_vars = int(fields[2])
                    num_clauses = int(fields[3])
                    if weighted:
                        top = int(fields[4])
                    ok = num_vars >= 0 and num_clauses >= 0 and (not weighted or top >= 1)
            except ValueError:
                ok = False
            if not ok:
                num_vars = None
                raise DimacsError(f"malformed header {line!r}", line_no)
            continue
        if num_vars is None:
            raise DimacsError("clause before header", line_no)
        try:
            numbers = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer token in {line!r}", line_no) from None
        weight: int | None = None
        if weighted:
            if not numbers:
                raise DimacsError("missing clause weight", line_no)
            weight = numbers.pop(0)
            if weight < 1:
                raise DimacsError(f"clause weight must be positive, got {weight}", line_no)
        if not numbers or numbers[-1] != 0:
            raise DimacsError("clause line must end with 0", line_no)
        lits = numbers[:-1]
        if any(l == 0 for l in lits):
            raise DimacsError("literal 0 inside clause", line_no)
        if any(abs(l) > num_vars for l in lits):
            raise DimacsError(
                f"variable index exceeds header count {num_vars}", line_no
            )
        clauses.append((weight, make_clause(lits), line_no))
    if num_vars is None:
        raise DimacsError("missing header", last_line)
    if len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses, found {len(clauses)}", last_line
        )
    return num_vars, top, clauses
