"""Greedy bitwise optimization over a SAT oracle, and Partial MaxSAT on top.

``maximize`` fixes the bits of a binary objective vector (LSB first) one at
a time, most significant first.  Each step asks a single non-binding
satisfiability question with the preferred value asserted on top of the
bits already fixed: keep it on yes, take the opposite on no.  With the
initial feasibility check this costs exactly ``len(vec) + 1`` oracle
queries.  ``minimize`` is the dual.

``partial_max_sat`` chains the pieces: build the counting circuit over the
soft formulas, conjoin it with the mandatory formula, transform to CNF,
maximize the count vector, then solve once more with the optimal bits
asserted to extract a witness model.  For ``n`` soft formulas that is
``binary_width(n) + 2`` oracle queries in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .adder import sum_bits
from .cnf import Cnf, transform_pg
from .formula import And, Formula, VarPool, evaluate, simplify_constants
from .solver import Backend, add_units, sat_assuming, solve


class UnsatisfiableError(RuntimeError):
    """The constraints admit no model at all; there is nothing to optimize."""


@dataclass(frozen=True)
class OptOutcome:
    """Optimization result: the fixed objective bits, the objective value,
    and a witness model extending them."""

    fixed_bits: dict[int, int]
    optimum: int
    model: dict[int, int]


def maximize(vec: Sequence[int], cnf: Cnf, backend: Backend) -> dict[int, int]:
    """Fix ``vec`` (variable ids, LSB first) to the largest value any model
    of ``cnf`` gives it.  Returns variable id -> bit.  Raises
    :class:`UnsatisfiableError` when ``cnf`` has no model."""
    return _optimize(vec, cnf, backend, prefer_one=True)


def minimize(vec: Sequence[int], cnf: Cnf, backend: Backend) -> dict[int, int]:
    """Dual of :func:`maximize`: fix ``vec`` to the smallest reachable value."""
    return _optimize(vec, cnf, backend, prefer_one=False)


def _optimize(vec: Sequence[int], cnf: Cnf, backend: Backend, prefer_one: bool) -> dict[int, int]:
    if len({abs(v) for v in vec}) != len(vec) or any(v <= 0 for v in vec):
        raise ValueError("objective vector must be duplicate-free positive ids")
    if not sat_assuming(cnf, [], backend):
        raise UnsatisfiableError("constraints are unsatisfiable")
    fixed: list[int] = []
    for var in reversed(vec):  # most significant bit first
        preferred = var if prefer_one else -var
        if sat_assuming(cnf, [*fixed, preferred], backend):
            fixed.append(preferred)
        else:
            # The other value needs no query: the prefix alone is satisfiable.
            fixed.append(-preferred)
    return {abs(l): (1 if l > 0 else 0) for l in fixed}


def fixed_value(vec: Sequence[int], fixed_bits: dict[int, int]) -> int:
    """Value of the objective vector under fixed bits (LSB first)."""
    return sum(fixed_bits[v] << i for i, v in enumerate(vec))


def partial_max_sat(
    phi: Formula,
    psi: Sequence[Formula],
    pool: VarPool,
    backend: Backend,
) -> OptOutcome:
    """Satisfy ``phi`` while making as many of ``psi`` true as possible.

    ``phi`` and ``psi`` must have been built against ``pool``; the circuit
    and CNF auxiliaries are allocated from it.  Raises
    :class:`UnsatisfiableError` when ``phi`` itself has no model.
    """
    if not psi:
        result = solve(transform_pg(simplify_constants(phi), pool), backend)
        if not result.is_sat:
            raise UnsatisfiableError("mandatory formula is unsatisfiable")
        return OptOutcome({}, 0, result.model)

    count_bits, circuit = sum_bits(list(psi), pool)
    cnf = transform_pg(simplify_constants(And(phi, circuit)), pool)
    vec = [b.id for b in count_bits]
    fixed = maximize(vec, cnf, backend)

    witness = solve(add_units(cnf, [v if fixed[v] else -v for v in vec]), backend)
    if not witness.is_sat:  # cannot happen: maximize proved this prefix
        raise UnsatisfiableError("optimal bits lost satisfiability")
    model = witness.model
    satisfied = sum(evaluate(p, model) for p in psi)
    if satisfied != fixed_value(vec, fixed):
        raise AssertionError(
            "count bits disagree with the witness; circuit encoding is broken"
        )
    return OptOutcome(fixed, satisfied, model)
