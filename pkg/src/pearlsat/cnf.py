"""Linear-size CNF transforms: Tseitin and the Plaisted-Greenbaum reduction.

Literals are DIMACS-style signed integers (``v`` / ``-v``), clauses are
tuples of literals, and a :class:`Cnf` is an immutable clause list plus a
variable count.

Both transforms associate a fresh auxiliary variable with every internal
connective node and emit clauses relating it to its children, then assert
the root variable with a unit clause; the result is equisatisfiable with
the input and linear in its size.  The full Tseitin transform emits both
directions of each bi-implication.  The Plaisted-Greenbaum variant tracks
the polarity at which each subformula occurs and emits only the needed
direction: positive occurrences get ``aux -> gate``, negative ones get
``gate -> aux``, and subformulas used in both phases (children of ``==``
and ``xor``, and ite conditions) get both.

Negations never allocate auxiliaries; they just flip the child's literal.
A formula that is itself a literal is asserted directly, with no auxiliary
at all.  Constants must be folded away first (see
:func:`pearlsat.formula.simplify_constants`); a constant root degenerates
to the empty clause list (true) or a single empty clause (false).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import And, Const, Formula, Iff, Ite, Neg, Or, Var, VarPool, Xor

Clause = tuple[int, ...]


def make_clause(literals: Iterable[int]) -> Clause:
    """Clause from literals, dropping duplicates but keeping first-seen order."""
    seen: set[int] = set()
    out: list[int] = []
    for lit in literals:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def is_tautology(clause: Clause) -> bool:
    """True when the clause contains some literal together with its negation."""
    lits = set(clause)
    return any(-lit in lits for lit in lits)


@dataclass(frozen=True)
class Cnf:
    """Immutable clause list; every referenced variable is <= ``num_vars``."""

    clauses: tuple[Clause, ...]
    num_vars: int

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(
                        f"literal {lit} out of range for {self.num_vars} variables"
                    )

    @classmethod
    def from_clauses(cls, clauses: Iterable[Iterable[int]], num_vars: int | None = None) -> "Cnf":
        normalized = tuple(make_clause(c) for c in clauses)
        if num_vars is None:
            num_vars = max((abs(l) for c in normalized for l in c), default=0)
        return cls(normalized, num_vars)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    BOTH = "both"

    def flipped(self) -> "Polarity":
        if self is Polarity.POSITIVE:
            return Polarity.NEGATIVE
        if self is Polarity.NEGATIVE:
            return Polarity.POSITIVE
        return Polarity.BOTH

    def combine(self, other: "Polarity") -> "Polarity":
        """Meet of two occurrence polarities: differing phases give BOTH."""
        return self if self is other else Polarity.BOTH


def gate_clauses(kind: type, polarity: Polarity, out: int, ins: Sequence[int]) -> list[Clause]:
    """Clauses tying auxiliary literal ``out`` to the gate over ``ins``.

    ``kind`` is one of the connective node classes (And, Or, Xor, Iff, Ite);
    for Ite the inputs are (condition, then, else).  Output literal first,
    inputs in child order, duplicates within a clause removed.
    """
    arity = 3 if kind is Ite else 2
    if kind not in (And, Or, Xor, Iff, Ite):
        raise ValueError(f"not a gate kind: {kind!r}")
    if len(ins) != arity:
        raise ValueError(f"{kind.__name__} takes {arity} inputs, got {len(ins)}")
    a = out
    if kind is And:
        b, c = ins
        pos = [(-a, b), (-a, c)]
        neg = [(a, -b, -c)]
    elif kind is Or:
        b, c = ins
        pos = [(-a, b, c)]
        neg = [(a, -b), (a, -c)]
    elif kind is Xor:
        b, c = ins
        pos = [(-a, b, c), (-a, -b, -c)]
        neg = [(a, -b, c), (a, b, -c)]
    elif kind is Iff:
        b, c = ins
        pos = [(-a, -b, c), (-a, b, -c)]
        neg = [(a, b, c), (a, -b, -c)]
    else:  # Ite
        c, t, e = ins
        pos = [(-a, -c, t), (-a, c, e)]
        neg = [(a, -c, -t), (a, c, -e)]
    if polarity is Polarity.POSITIVE:
        picked = pos
    elif polarity is Polarity.NEGATIVE:
        picked = neg
    else:
        picked = pos + neg
    return [make_clause(cl) for cl in picked]


def transform_tseitin(f: Formula, pool: VarPool) -> Cnf:
    """Full Tseitin transform: every gate gets the complete bi-implication."""
    return _transform(f, pool, Polarity.BOTH)


def transform_pg(f: Formula, pool: VarPool) -> Cnf:
    """Polarity-reduced transform; equisatisfiable, never larger than Tseitin."""
    return _transform(f, pool, Polarity.POSITIVE)


def _transform(f: Formula, pool: VarPool, root_polarity: Polarity) -> Cnf:
    if isinstance(f, Const):
        clauses: tuple[Clause, ...] = () if f.value else ((),)
        return Cnf(clauses, pool.num_allocated)
    out: list[Clause] = []
    root = _encode(f, root_polarity, pool, out)
    out.append((root,))
    return Cnf(tuple(out), pool.num_allocated)


def _encode(node: Formula, pol: Polarity, pool: VarPool, out: list[Clause]) -> int:
    """Post-order encoding; returns the literal standing for ``node``."""
    if isinstance(node, Var):
        return node.id
    if isinstance(node, Neg):
        return -_encode(node.child, pol.flipped(), pool, out)
    if isinstance(node, Const):
        raise ValueError("constant below the root; run simplify_constants first")

    if isinstance(node, (And, Or)):
        ins = [
            _encode(node.left, pol, pool, out),
            _encode(node.right, pol, pool, out),
        ]
    elif isinstance(node, (Iff, Xor)):
        # Each child feeds the gate in both phases regardless of pol.
        ins = [
            _encode(node.left, Polarity.BOTH, pool, out),
            _encode(node.right, Polarity.BOTH, pool, out),
        ]
    elif isinstance(node, Ite):
        ins = [
            _encode(node.cond, Polarity.BOTH, pool, out),
            _encode(node.then, pol, pool, out),
            _encode(node.orelse, pol, pool, out),
        ]
    else:
        raise TypeError(f"not a formula: {node!r}")

    aux = pool.fresh().id
    out.extend(gate_clauses(type(node), pol, aux, ins))
    return aux
