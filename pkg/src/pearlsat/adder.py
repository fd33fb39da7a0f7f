"""Counting circuit: constrain binary output bits to the number of true inputs.

``sum_bits`` builds a divide-and-conquer ripple-carry circuit.  The input is
a list of formulas read as a unary number (its value is how many of them are
true); the output is a list of fresh variables read as a binary number,
least significant bit first.  The returned constraint formula has, for each
assignment of the input variables, exactly one extension to the fresh wires,
and in it the output bits encode the count.

Each adder stage introduces a fresh carry wire and a fresh output bit, tied
to the half/full-adder expressions by bi-implications; the final carry
becomes the top output bit.  Odd-length splits pad with the constant 0,
which ``simplify_constants`` folds back out of the finished circuit.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .formula import (
    FALSE,
    And,
    Formula,
    Iff,
    Ite,
    Or,
    Var,
    VarPool,
    Xor,
    evaluate,
    simplify_constants,
)


def split(bits: Sequence[Formula]) -> tuple[list[Formula], list[Formula]]:
    """Deinterleave into even and odd positions, padding the odd side with 0.

    Both halves come back the same length, ceil(len(bits)/2).
    """
    left = list(bits[0::2])
    right = list(bits[1::2])
    if len(right) < len(left):
        right.append(FALSE)
    return left, right


def halfadder(x: Formula, y: Formula) -> tuple[Formula, Formula]:
    """(sum, carry) of two bits: x xor y, x*y."""
    return Xor(x, y), And(x, y)


def fulladder(x: Formula, y: Formula, c: Formula) -> tuple[Formula, Formula]:
    """(sum, carry) of three bits: x xor y xor c, ite(c, x+y, x*y)."""
    return Xor(Xor(x, y), c), Ite(c, Or(x, y), And(x, y))


def ripple_add(xs: Sequence[Formula], ys: Sequence[Formula], pool: VarPool) -> tuple[list[Var], Formula]:
    """Binary addition circuit for two equal-width bit vectors (LSB first).

    Returns width+1 fresh output bits and the constraint tying every fresh
    wire (outputs and internal carries) to its adder expression.  The lowest
    pair goes through a half adder, the rest through full adders, and the
    final carry is equated with the extra top bit.
    """
    if len(xs) != len(ys):
        raise ValueError(f"width mismatch: {len(xs)} vs {len(ys)}")
    if not xs:
        raise ValueError("cannot add zero-width vectors")
    sum_expr, carry_expr = halfadder(xs[0], ys[0])
    carry = pool.fresh()
    z = pool.fresh()
    zs, rest = _add_rest(xs[1:], ys[1:], carry, pool)
    constraint = And(And(Iff(carry, carry_expr), Iff(z, sum_expr)), rest)
    return [z, *zs], constraint


def _add_rest(xs: Sequence[Formula], ys: Sequence[Formula], carry_in: Var, pool: VarPool) -> tuple[list[Var], Formula]:
    if not xs:
        z = pool.fresh()
        return [z], Iff(z, carry_in)
    sum_expr, carry_expr = fulladder(xs[0], ys[0], carry_in)
    carry = pool.fresh()
    z = pool.fresh()
    zs, rest = _add_rest(xs[1:], ys[1:], carry, pool)
    return [z, *zs], And(And(Iff(carry, carry_expr), Iff(z, sum_expr)), rest)


def sum_bits(unary: Sequence[Formula], pool: VarPool) -> tuple[list[Var], Formula]:
    """Counting circuit over ``unary``; see the module docstring.

    The output width follows the recursion: 1 bit for a single input, and
    one more than the width for ceil(n/2) inputs otherwise
    (:func:`binary_width`).
    """
    if not unary:
        raise ValueError("need at least one input formula")
    binary, psi = _sum(list(unary), pool)
    return binary, simplify_constants(psi)


def _sum(bits: list[Formula], pool: VarPool) -> tuple[list[Var], Formula]:
    if len(bits) == 1:
        s = pool.fresh()
        return [s], Iff(s, bits[0])
    left, right = split(bits)
    s1, f1 = _sum(left, pool)
    s2, f2 = _sum(right, pool)
    total, f3 = ripple_add(s1, s2, pool)
    return total, And(And(f1, f2), f3)


def binary_width(n: int) -> int:
    """Output width of ``sum_bits`` for ``n`` inputs."""
    if n < 1:
        raise ValueError("need at least one input")
    width = 1
    while n > 1:
        n = (n + 1) // 2
        width += 1
    return width


def vector_value(bits: Sequence[Var], assignment: Mapping[int, int]) -> int:
    """Value of a binary (LSB-first) variable vector under an assignment."""
    return sum(evaluate(b, assignment) << i for i, b in enumerate(bits))
