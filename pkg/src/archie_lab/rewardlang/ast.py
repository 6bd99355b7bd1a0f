"""Expression tree for the reward language.

The language is deliberately closed: arithmetic (+ - *), min/max/abs/clamp,
point-group distances, comparisons producing 0/1, and logical connectives.
Evaluation of a schema-valid expression on finite inputs is total -- there is
no division, no user-defined calls, no state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from ..envs.base import ObservationSchema


class Expr:
    """Base node. Precedence drives minimal-parenthesis serialization."""

    precedence: int = 8

    @property
    def is_boolean(self) -> bool:
        return False

    def children(self) -> tuple["Expr", ...]:
        return ()

    def walk(self) -> Iterator["Expr"]:
        yield self
        for child in self.children():
            yield from child.walk()


@dataclass(frozen=True)
class Const(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    precedence = 7

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Add(_Binary):
    precedence = 5


@dataclass(frozen=True)
class Sub(_Binary):
    precedence = 5


@dataclass(frozen=True)
class Mul(_Binary):
    precedence = 6


@dataclass(frozen=True)
class MinE(_Binary):
    pass


@dataclass(frozen=True)
class MaxE(_Binary):
    pass


@dataclass(frozen=True)
class Abs(Expr):
    operand: Expr

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Clamp(Expr):
    operand: Expr
    lo: float
    hi: float

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Dist(Expr):
    """Euclidean distance between two named point groups: dist(agent, object)
    pairs up agent.* with object.* by suffix."""

    group_a: str
    group_b: str


CMP_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class Cmp(_Binary):
    left: Expr
    right: Expr
    op: str = "<"
    precedence = 4

    @property
    def is_boolean(self):
        return True


@dataclass(frozen=True)
class And(_Binary):
    precedence = 2

    @property
    def is_boolean(self):
        return True


@dataclass(frozen=True)
class Or(_Binary):
    precedence = 1

    @property
    def is_boolean(self):
        return True


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr
    precedence = 3

    @property
    def is_boolean(self):
        return True

    def children(self):
        return (self.operand,)


# --------------------------------------------------------------------------
# serialization


def _num(value: float) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def to_text(node: Expr) -> str:
    """Render with the fewest parentheses that reparse to the same tree."""

    def wrap(child: Expr, min_prec: int) -> str:
        text = to_text(child)
        if child.precedence < min_prec:
            return f"({text})"
        return text

    if isinstance(node, Const):
        return _num(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        # parenthesize literal operands so "-3" stays a fold of the literal
        # while Neg(Const(3)) survives a round trip as "-(3)"
        if isinstance(node.operand, Const):
            return f"-({to_text(node.operand)})"
        return "-" + wrap(node.operand, 7)
    if isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        return f"{wrap(node.left, 5)} {op} {wrap(node.right, 6)}"
    if isinstance(node, Mul):
        return f"{wrap(node.left, 6)} * {wrap(node.right, 7)}"
    if isinstance(node, MinE):
        return f"min({to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, MaxE):
        return f"max({to_text(node.left)}, {to_text(node.right)})"
    if isinstance(node, Abs):
        return f"abs({to_text(node.operand)})"
    if isinstance(node, Clamp):
        return f"clamp({to_text(node.operand)}, {_num(node.lo)}, {_num(node.hi)})"
    if isinstance(node, Dist):
        return f"dist({node.group_a}, {node.group_b})"
    if isinstance(node, Cmp):
        return f"{wrap(node.left, 5)} {node.op} {wrap(node.right, 5)}"
    if isinstance(node, And):
        return f"{wrap(node.left, 2)} and {wrap(node.right, 3)}"
    if isinstance(node, Or):
        return f"{wrap(node.left, 1)} or {wrap(node.right, 2)}"
    if isinstance(node, Not):
        return "not " + wrap(node.operand, 3)
    raise TypeError(f"unknown node {node!r}")


# --------------------------------------------------------------------------
# group resolution and compilation


COORD_SUFFIXES = ("x", "y", "z")


def resolve_group(schema: ObservationSchema, group: str) -> dict[str, int]:
    """Map coordinate suffix -> observation index for a point group.

    Only spatial suffixes participate: `object.x`/`object.y` make `object` a
    2D point even if non-coordinate fields like `object.fallen` exist.
    """
    prefix = group + "."
    return {
        name[len(prefix):]: i
        for i, name in enumerate(schema.names)
        if name.startswith(prefix) and name[len(prefix):] in COORD_SUFFIXES
    }


def compile_expr(node: Expr, schema: ObservationSchema) -> Callable[[np.ndarray], float]:
    """Closure-compile against a schema; assumes the expression validated."""
    if isinstance(node, Const):
        value = float(node.value)
        return lambda v: value
    if isinstance(node, Var):
        idx = schema.index(node.name)
        return lambda v: float(v[idx])
    if isinstance(node, Neg):
        f = compile_expr(node.operand, schema)
        return lambda v: -f(v)
    if isinstance(node, Add):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: a(v) + b(v)
    if isinstance(node, Sub):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: a(v) - b(v)
    if isinstance(node, Mul):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: a(v) * b(v)
    if isinstance(node, MinE):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: min(a(v), b(v))
    if isinstance(node, MaxE):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: max(a(v), b(v))
    if isinstance(node, Abs):
        f = compile_expr(node.operand, schema)
        return lambda v: abs(f(v))
    if isinstance(node, Clamp):
        f = compile_expr(node.operand, schema)
        lo, hi = float(node.lo), float(node.hi)
        return lambda v: min(max(f(v), lo), hi)
    if isinstance(node, Dist):
        ga = resolve_group(schema, node.group_a)
        gb = resolve_group(schema, node.group_b)
        pairs = [(ga[s], gb[s]) for s in sorted(ga)]
        ia = np.array([p[0] for p in pairs])
        ib = np.array([p[1] for p in pairs])
        return lambda v: float(math.sqrt(float(np.sum((v[ia] - v[ib]) ** 2))))
    if isinstance(node, Cmp):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        op = node.op
        if op == "<":
            return lambda v: 1.0 if a(v) < b(v) else 0.0
        if op == "<=":
            return lambda v: 1.0 if a(v) <= b(v) else 0.0
        if op == ">":
            return lambda v: 1.0 if a(v) > b(v) else 0.0
        return lambda v: 1.0 if a(v) >= b(v) else 0.0
    if isinstance(node, And):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: 1.0 if (a(v) != 0.0 and b(v) != 0.0) else 0.0
    if isinstance(node, Or):
        a, b = compile_expr(node.left, schema), compile_expr(node.right, schema)
        return lambda v: 1.0 if (a(v) != 0.0 or b(v) != 0.0) else 0.0
    if isinstance(node, Not):
        f = compile_expr(node.operand, schema)
        return lambda v: 1.0 if f(v) == 0.0 else 0.0
    raise TypeError(f"unknown node {node!r}")
