"""Propositional formulas: AST, text parser/printer, evaluation, simplification.

Formulas are immutable trees built from constants ``0``/``1``, named or
anonymous variables, and the connectives negation ``-``, conjunction ``*``,
disjunction ``+``, bi-implication ``==``, exclusive or ``xor``, and the
if-then-else form ``ite(c, t, e)`` (equivalent to ``c*t + (-c)*e``).

The concrete grammar, tightest binding first::

    unary -   then   *   then   +   then   xor   then   ==

All binary operators are left-associative.  Variables are identifiers
matching ``[a-z][a-zA-Z0-9_]*``; ``xor`` and ``ite`` are reserved.  ``#``
starts a comment running to the end of the line; whitespace is
insignificant.

Identical variable names parsed against the same :class:`VarPool` map to
the same variable id, so structural equality of parsed formulas behaves
as expected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping


class FormulaSyntaxError(ValueError):
    """Malformed formula text; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Formula:
    """Base class for all formula nodes.  Instances are immutable."""

    __slots__ = ()

    # Small construction DSL mirroring the textual operators: f * g, f + g,
    # -f, f ^ g.  Bi-implication has no operator (== is structural equality);
    # use Iff(f, g) directly.
    def __mul__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __add__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __xor__(self, other: "Formula") -> "Formula":
        return Xor(self, other)

    def __neg__(self) -> "Formula":
        return Neg(self)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Const(Formula):
    """Truth constant; ``value`` is 0 or 1."""

    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True, slots=True)
class Var(Formula):
    """A propositional variable.  ``id`` is a positive pool-allocated integer;
    ``name`` is None for anonymous (circuit wire) variables."""

    id: int
    name: str | None = None


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Ite(Formula):
    """If-then-else: true when ``cond*then + (-cond)*orelse`` is."""

    cond: Formula
    then: Formula
    orelse: Formula


TRUE = Const(1)
FALSE = Const(0)

_BINARY = (And, Or, Iff, Xor)

RESERVED_WORDS = frozenset({"xor", "ite"})

_NAME_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


class VarPool:
    """Allocates variable ids, strictly increasing from 1.

    Named variables are interned: asking for the same name twice returns the
    same :class:`Var`.  ``fresh()`` allocates anonymous variables, used for
    circuit wires and CNF auxiliary variables.
    """

    def __init__(self) -> None:
        self._next_id = 1
        self._by_name: dict[str, Var] = {}
        self._name_by_id: dict[int, str] = {}

    def var(self, name: str) -> Var:
        """Intern ``name`` and return its variable."""
        existing = self._by_name.get(name)
        if existing is not None:
            return existing
        if not _NAME_RE.fullmatch(name) or name in RESERVED_WORDS:
            raise ValueError(f"invalid variable name {name!r}")
        v = Var(self._allocate(), name)
        self._by_name[name] = v
        self._name_by_id[v.id] = name
        return v

    def fresh(self) -> Var:
        """Allocate a new anonymous variable."""
        return Var(self._allocate())

    def reserve(self, count: int) -> list[Var]:
        """Allocate ``count`` anonymous variables at once (e.g. for DIMACS
        inputs whose variables are bare indices)."""
        return [self.fresh() for _ in range(count)]

    def _allocate(self) -> int:
        i = self._next_id
        self._next_id += 1
        return i

    @property
    def num_allocated(self) -> int:
        return self._next_id - 1

    @property
    def names(self) -> dict[str, Var]:
        """Mapping of interned names to variables (do not mutate)."""
        return self._by_name

    def name_of(self, var_id: int) -> str | None:
        return self._name_by_id.get(var_id)


def size(f: Formula) -> int:
    """Node count of the formula tree."""
    n = 1
    for child in _children(f):
        n += size(child)
    return n


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Const, Var)):
        return ()
    if isinstance(f, Neg):
        return (f.child,)
    if isinstance(f, Ite):
        return (f.cond, f.then, f.orelse)
    assert isinstance(f, _BINARY)
    return (f.left, f.right)


def variables(f: Formula) -> list[Var]:
    """All variables of ``f`` in first-occurrence (pre-order) order."""
    seen: dict[int, Var] = {}

    def walk(node: Formula) -> None:
        if isinstance(node, Var):
            seen.setdefault(node.id, node)
        else:
            for child in _children(node):
                walk(child)

    walk(f)
    return list(seen.values())


def evaluate(f: Formula, assignment: Mapping[int, int]) -> int:
    """Truth value of ``f`` under a total assignment keyed by variable id.

    Raises KeyError for variables missing from the assignment.
    """
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return assignment[f.id]
    if isinstance(f, Neg):
        return 1 - evaluate(f.child, assignment)
    if isinstance(f, And):
        return evaluate(f.left, assignment) & evaluate(f.right, assignment)
    if isinstance(f, Or):
        return evaluate(f.left, assignment) | evaluate(f.right, assignment)
    if isinstance(f, Iff):
        return 1 - (evaluate(f.left, assignment) ^ evaluate(f.right, assignment))
    if isinstance(f, Xor):
        return evaluate(f.left, assignment) ^ evaluate(f.right, assignment)
    if isinstance(f, Ite):
        if evaluate(f.cond, assignment):
            return evaluate(f.then, assignment)
        return evaluate(f.orelse, assignment)
    raise TypeError(f"not a formula: {f!r}")


def simplify_constants(f: Formula) -> Formula:
    """Fold truth constants out of ``f``.

    The result is logically equivalent and contains no Const node except
    possibly at the root.  Only constants are folded; no other rewriting
    (in particular no general double-negation elimination) happens.
    """
    if isinstance(f, (Const, Var)):
        return f
    if isinstance(f, Neg):
        return _neg(simplify_constants(f.child))
    if isinstance(f, Ite):
        c = simplify_constants(f.cond)
        t = simplify_constants(f.then)
        e = simplify_constants(f.orelse)
        if isinstance(c, Const):
            return t if c.value else e
        if isinstance(t, Const) and isinstance(e, Const):
            if t.value == e.value:
                return t
            return c if t.value else _neg(c)
        if isinstance(t, Const):
            # ite(c,1,e) = c+e ; ite(c,0,e) = -c*e
            return Or(c, e) if t.value else And(_neg(c), e)
        if isinstance(e, Const):
            # ite(c,t,1) = -c+t ; ite(c,t,0) = c*t
            return Or(_neg(c), t) if e.value else And(c, t)
        return Ite(c, t, e)

    assert isinstance(f, _BINARY)
    l = simplify_constants(f.left)
    r = simplify_constants(f.right)
    if isinstance(f, And):
        for a, b in ((l, r), (r, l)):
            if isinstance(a, Const):
                return b if a.value else FALSE
        return And(l, r)
    if isinstance(f, Or):
        for a, b in ((l, r), (r, l)):
            if isinstance(a, Const):
                return TRUE if a.value else b
        return Or(l, r)
    if isinstance(f, Xor):
        for a, b in ((l, r), (r, l)):
            if isinstance(a, Const):
                return _neg(b) if a.value else b
        return Xor(l, r)
    # Iff
    for a, b in ((l, r), (r, l)):
        if isinstance(a, Const):
            return b if a.value else _neg(b)
    return Iff(l, r)


def _neg(f: Formula) -> Formula:
    """Negation folding constants; everything else gets a Neg node."""
    if isinstance(f, Const):
        return Const(1 - f.value)
    return Neg(f)


# ---------------------------------------------------------------------------
# Printing

def render(f: Formula) -> str:
    """Formula back to DSL text; ``parse_formula`` round-trips the result.

    Anonymous variables print as ``_<id>``, which the grammar deliberately
    rejects: they have no surface name to round-trip through.
    """
    if isinstance(f, Const):
        return str(f.value)
    if isinstance(f, Var):
        return f.name if f.name is not None else f"_{f.id}"
    if isinstance(f, Neg):
        return "-" + _wrap(f.child)
    if isinstance(f, Ite):
        return f"ite({render(f.cond)}, {render(f.then)}, {render(f.orelse)})"
    op = {And: "*", Or: "+", Iff: "==", Xor: "xor"}[type(f)]
    return f"{_wrap(f.left)} {op} {_wrap(f.right)}"


def _wrap(f: Formula) -> str:
    # Binary children always get parentheses; atoms, ite(...) and -… are
    # self-delimiting.
    text = render(f)
    return f"({text})" if isinstance(f, _BINARY) else text


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"""(?P<skip>\s+|\#[^\n]*)
      | (?P<name>[a-z][a-zA-Z0-9_]*)
      | (?P<const>[01])
      | (?P<op>==|\*|\+|-|\(|\)|,)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "skip":
            kind = m.lastgroup
            value = m.group()
            if kind == "name" and value == "xor":
                kind = "op"
            yield (kind, value, pos)
        pos = m.end()
    yield ("eof", "", len(text))


class _Parser:
    def __init__(self, text: str, pool: VarPool):
        self.tokens = list(_tokenize(text))
        self.pool = pool
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, got, pos = self.next()
        if kind == "eof" or got != value:
            shown = "end of input" if kind == "eof" else repr(got)
            raise FormulaSyntaxError(f"expected {value!r}, found {shown}", pos)

    def parse(self) -> Formula:
        f = self.iff()
        kind, value, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {value!r} after formula", pos)
        return f

    # One method per precedence level, loosest first.
    def iff(self) -> Formula:
        f = self.xor()
        while self.peek()[1] == "==":
            self.next()
            f = Iff(f, self.xor())
        return f

    def xor(self) -> Formula:
        f = self.disj()
        while self.peek()[1] == "xor":
            self.next()
            f = Xor(f, self.disj())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[1] == "+":
            self.next()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[1] == "*":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek()[1] == "-":
            self.next()
            return Neg(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "const":
            return Const(int(value))
        if kind == "name":
            if value == "ite":
                self.expect("(")
                c = self.iff()
                self.expect(",")
                t = self.iff()
                self.expect(",")
                e = self.iff()
                self.expect(")")
                return Ite(c, t, e)
            return self.pool.var(value)
        if value == "(":
            f = self.iff()
            self.expect(")")
            return f
        if value == "xor":
            raise FormulaSyntaxError("reserved word 'xor' cannot be a variable", pos)
        shown = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"expected a formula, found {shown}", pos)


def parse_formula(text: str, pool: VarPool) -> Formula:
    """Parse DSL text into a formula, interning named variables in ``pool``."""
    return _Parser(text, pool).parse()
