"""Shared test oracles: brute-force enumeration, random instance generators,
and a decoder for circuit wire assignments.

Everything here is deliberately independent of the code paths it checks:
satisfiability oracles enumerate assignments outright, and the wire decoder
reads the constraint formula's own conjuncts instead of trusting the
circuit builder's internals.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Mapping, Sequence

import numpy as np

from pearlsat import (
    And,
    Cnf,
    Const,
    Formula,
    Iff,
    Ite,
    Neg,
    Or,
    Var,
    VarPool,
    Xor,
    evaluate,
    variables,
)


def all_assignments(ids: Sequence[int]) -> Iterator[dict[int, int]]:
    for values in itertools.product((0, 1), repeat=len(ids)):
        yield dict(zip(ids, values))


def formula_models(f: Formula) -> list[dict[int, int]]:
    """Every satisfying total assignment over vars(f), by enumeration."""
    ids = [v.id for v in variables(f)]
    return [a for a in all_assignments(ids) if evaluate(f, a)]


def formula_sat(f: Formula) -> bool:
    ids = [v.id for v in variables(f)]
    return any(evaluate(f, a) for a in all_assignments(ids))


# ---------------------------------------------------------------------------
# CNF enumeration (bitmask-vectorized; model bit i-1 holds variable i)

def cnf_model_masks(cnf: Cnf) -> np.ndarray:
    """All satisfying assignments of a small CNF as integer bitmasks."""
    n = cnf.num_vars
    assert n <= 22, "brute force capped at 22 variables"
    masks = np.arange(1 << n, dtype=np.uint32)
    ok = np.ones(1 << n, dtype=bool)
    for clause in cnf.clauses:
        satisfied = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            bit = (masks >> (abs(lit) - 1)) & 1
            satisfied |= bit == (1 if lit > 0 else 0)
        ok &= satisfied
    return masks[ok]


def cnf_sat_bruteforce(cnf: Cnf) -> bool:
    return len(cnf_model_masks(cnf)) > 0


def mask_to_assignment(mask: int, num_vars: int) -> dict[int, int]:
    return {v: (mask >> (v - 1)) & 1 for v in range(1, num_vars + 1)}


def project_mask(mask: int, ids: Sequence[int]) -> tuple[int, ...]:
    return tuple((mask >> (i - 1)) & 1 for i in ids)


# ---------------------------------------------------------------------------
# Random instances

_LEAF_PROB = 0.3


def random_formula(
    rng: random.Random,
    leaves: Sequence[Var],
    depth: int,
    const_prob: float = 0.0,
) -> Formula:
    if depth == 0 or rng.random() < _LEAF_PROB:
        if rng.random() < const_prob:
            return Const(rng.randint(0, 1))
        return rng.choice(list(leaves))
    kind = rng.choice(("neg", "and", "or", "iff", "xor", "ite"))
    sub = lambda: random_formula(rng, leaves, depth - 1, const_prob)
    if kind == "neg":
        return Neg(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "iff":
        return Iff(sub(), sub())
    if kind == "xor":
        return Xor(sub(), sub())
    return Ite(sub(), sub(), sub())


def random_named_pool(rng: random.Random, max_vars: int) -> tuple[VarPool, list[Var]]:
    pool = VarPool()
    count = rng.randint(1, max_vars)
    return pool, [pool.var(f"v{i}") for i in range(count)]


def random_cnf(rng: random.Random, max_vars: int, ratio_lo=2.0, ratio_hi=6.0, width=3) -> Cnf:
    n = rng.randint(3, max_vars)
    m = max(1, int(n * rng.uniform(ratio_lo, ratio_hi)))
    clauses = []
    for _ in range(m):
        size = rng.randint(1, width)
        chosen = rng.sample(range(1, n + 1), min(size, n))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in chosen))
    return Cnf.from_clauses(clauses, num_vars=n)


# ---------------------------------------------------------------------------
# Circuit decoding

def conjuncts(f: Formula) -> list[Formula]:
    """Flatten an And-tree into its conjunct list."""
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]


def wire_extension(psi: Formula, inputs: Mapping[int, int]) -> dict[int, int]:
    """The unique extension of ``inputs`` satisfying the circuit constraint.

    Repeatedly resolves conjuncts whose right-hand sides are already
    determined: ``Iff(wire, expr)`` sets the wire, a bare ``wire`` sets it
    to 1, ``-wire`` to 0.  Fails the test if the constraint is not a
    functionally determined, conflict-free wire system.
    """
    assignment = dict(inputs)
    pending = conjuncts(psi)

    def settle(var: Var, value: int) -> None:
        if var.id in assignment and assignment[var.id] != value:
            raise AssertionError(f"conflicting definitions for wire {var.id}")
        assignment[var.id] = value

    while pending:
        stuck = []
        for c in pending:
            if isinstance(c, Var):
                settle(c, 1)
            elif isinstance(c, Neg) and isinstance(c.child, Var):
                settle(c.child, 0)
            elif isinstance(c, Iff) and isinstance(c.left, Var):
                needed = [v.id for v in variables(c.right)]
                if all(i in assignment for i in needed):
                    settle(c.left, evaluate(c.right, assignment))
                else:
                    stuck.append(c)
            else:
                raise AssertionError(f"unexpected circuit conjunct: {c}")
        if len(stuck) == len(pending):
            raise AssertionError("circuit wires are not functionally determined")
        pending = stuck
    return assignment


# ---------------------------------------------------------------------------
# Misc

def pigeonhole_cnf(holes: int) -> Cnf:
    """holes+1 pigeons into ``holes`` holes; classically unsatisfiable."""
    pigeons = holes + 1
    var = lambda p, h: p * holes + h + 1
    clauses = [[var(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p1 in range(pigeons):
            for p2 in range(p1 + 1, pigeons):
                clauses.append([-var(p1, h), -var(p2, h)])
    return Cnf.from_clauses(clauses, num_vars=pigeons * holes)


def matches_under_bijection(
    expected: Sequence[Sequence[str]],
    actual: Sequence[Sequence[int]],
    fixed: Mapping[str, int],
    free_symbols: Sequence[str],
    free_ids: Sequence[int],
) -> bool:
    """Does some bijection of ``free_symbols`` onto ``free_ids`` (on top of the
    ``fixed`` name->id map) turn the symbolic clause set into ``actual``?

    Symbolic literals look like "T1" / "-T1"; clause order and literal order
    are ignored.
    """
    actual_set = {frozenset(c) for c in actual}
    if len(actual_set) != len(expected):
        return False
    for perm in itertools.permutations(free_ids):
        mapping = dict(fixed) | dict(zip(free_symbols, perm))

        def lit(sym: str) -> int:
            if sym.startswith("-"):
                return -mapping[sym[1:]]
            return mapping[sym]

        translated = {frozenset(lit(s) for s in clause) for clause in expected}
        if translated == actual_set:
            return True
    return False
