"""Boolean expressions over current and primed state variables.

An assignment is a mapping from variable keys to 0/1. The key for a current
variable ``x`` is ``"x"``; the key for its primed (next-state) copy is
``"x'"``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnboundVariableError


class BoolExpr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Const(BoolExpr):
    value: bool


@dataclass(frozen=True)
class Var(BoolExpr):
    name: str
    primed: bool = False

    def key(self) -> str:
        return self.name + "'" if self.primed else self.name


@dataclass(frozen=True)
class Not(BoolExpr):
    operand: BoolExpr


@dataclass(frozen=True)
class And(BoolExpr):
    operands: tuple


@dataclass(frozen=True)
class Or(BoolExpr):
    operands: tuple


@dataclass(frozen=True)
class Implies(BoolExpr):
    lhs: BoolExpr
    rhs: BoolExpr


@dataclass(frozen=True)
class Iff(BoolExpr):
    lhs: BoolExpr
    rhs: BoolExpr


@dataclass(frozen=True)
class Eq(BoolExpr):
    """Equality between a variable and a 0/1 constant or another variable."""

    lhs: BoolExpr
    rhs: BoolExpr


TRUE = Const(True)
FALSE = Const(False)


def conj(items) -> BoolExpr:
    """n-ary conjunction; empty gives TRUE, a singleton collapses."""
    items = tuple(items)
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items) -> BoolExpr:
    """n-ary disjunction; empty gives FALSE, a singleton collapses."""
    items = tuple(items)
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(items)


def variables(expr: BoolExpr) -> frozenset:
    """All (name, primed) pairs referenced by the expression."""
    out = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add((node.name, node.primed))
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend(node.operands)
        elif isinstance(node, (Implies, Iff, Eq)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return frozenset(out)


def eval_bool(expr: BoolExpr, assignment) -> bool:
    """Evaluate under a total assignment (keys as described above)."""
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Var):
        key = expr.key()
        try:
            return bool(assignment[key])
        except KeyError:
            raise UnboundVariableError(key) from None
    if isinstance(expr, Not):
        return not eval_bool(expr.operand, assignment)
    if isinstance(expr, And):
        return all(eval_bool(op, assignment) for op in expr.operands)
    if isinstance(expr, Or):
        return any(eval_bool(op, assignment) for op in expr.operands)
    if isinstance(expr, Implies):
        return (not eval_bool(expr.lhs, assignment)) or eval_bool(expr.rhs, assignment)
    if isinstance(expr, (Iff, Eq)):
        return eval_bool(expr.lhs, assignment) == eval_bool(expr.rhs, assignment)
    raise TypeError(f"not a BoolExpr: {expr!r}")


def _emit(expr: BoolExpr, index: dict) -> str:
    if isinstance(expr, Const):
        return "1" if expr.value else "0"
    if isinstance(expr, Var):
        key = expr.key()
        if key not in index:
            raise UnboundVariableError(key)
        src, bit = index[key]
        return f"(({src}>>{bit})&1)"
    if isinstance(expr, Not):
        return f"({_emit(expr.operand, index)}^1)"
    if isinstance(expr, And):
        if not expr.operands:
            return "1"
        return "(" + "&".join(_emit(op, index) for op in expr.operands) + ")"
    if isinstance(expr, Or):
        if not expr.operands:
            return "0"
        return "(" + "|".join(_emit(op, index) for op in expr.operands) + ")"
    if isinstance(expr, Implies):
        return f"(({_emit(expr.lhs, index)}^1)|{_emit(expr.rhs, index)})"
    if isinstance(expr, (Iff, Eq)):
        return f"(({_emit(expr.lhs, index)}^{_emit(expr.rhs, index)})^1)"
    raise TypeError(f"not a BoolExpr: {expr!r}")


def compile_relation(expr: BoolExpr, var_order):
    """Compile a transition formula to ``f(cur, nxt) -> 0/1`` over bitmasks.

    Bit i of ``cur``/``nxt`` holds the value of ``var_order[i]`` in the
    current/next state. Much faster than eval_bool for bulk enumeration.
    """
    index = {}
    for i, name in enumerate(var_order):
        index[name] = ("cur", i)
        index[name + "'"] = ("nxt", i)
    source = f"def _rel(cur, nxt):\n    return {_emit(expr, index)}\n"
    namespace = {}
    exec(compile(source, "<relation>", "exec"), namespace)
    return namespace["_rel"]


def compile_predicate(expr: BoolExpr, var_order):
    """Compile a state formula to ``f(bits) -> 0/1`` over a bitmask."""
    index = {name: ("bits", i) for i, name in enumerate(var_order)}
    source = f"def _pred(bits):\n    return {_emit(expr, index)}\n"
    namespace = {}
    exec(compile(source, "<predicate>", "exec"), namespace)
    return namespace["_pred"]
