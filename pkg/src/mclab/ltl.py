"""LTL formulas, operator fragments, and lasso (stem + cycle) runs.

A lasso finitely represents one infinite run of a finite Kripke structure:
the stem is traversed once, then the cycle repeats forever.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnboundVariableError
from .transition import State


class LtlFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Const(LtlFormula):
    value: bool


@dataclass(frozen=True)
class Atom(LtlFormula):
    name: str


@dataclass(frozen=True)
class Not(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class And(LtlFormula):
    operands: tuple


@dataclass(frozen=True)
class Or(LtlFormula):
    operands: tuple


@dataclass(frozen=True)
class Implies(LtlFormula):
    lhs: LtlFormula
    rhs: LtlFormula


@dataclass(frozen=True)
class Iff(LtlFormula):
    lhs: LtlFormula
    rhs: LtlFormula


@dataclass(frozen=True)
class Next(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Eventually(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Always(LtlFormula):
    operand: LtlFormula


@dataclass(frozen=True)
class Until(LtlFormula):
    lhs: LtlFormula
    rhs: LtlFormula


TRUE = Const(True)
FALSE = Const(False)


def conj(items) -> LtlFormula:
    items = tuple(items)
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items) -> LtlFormula:
    items = tuple(items)
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(items)


def atoms(formula: LtlFormula) -> frozenset:
    out = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, (Not, Next, Eventually, Always)):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend(node.operands)
        elif isinstance(node, (Implies, Iff, Until)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return frozenset(out)


def temporal_operators(formula: LtlFormula) -> frozenset:
    """Names of the temporal operators used: subset of {X, F, G, U}."""
    out = set()
    stack = [formula]
    while stack:
        node = stack.pop()
        if isinstance(node, Next):
            out.add("X")
            stack.append(node.operand)
        elif isinstance(node, Eventually):
            out.add("F")
            stack.append(node.operand)
        elif isinstance(node, Always):
            out.add("G")
            stack.append(node.operand)
        elif isinstance(node, Until):
            out.add("U")
            stack.append(node.lhs)
            stack.append(node.rhs)
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.extend(node.operands)
        elif isinstance(node, (Implies, Iff)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return frozenset(out)


@dataclass(frozen=True)
class Fragment:
    """An LTL fragment identified by its allowed temporal operators."""

    allowed: frozenset

    def contains(self, formula: LtlFormula) -> bool:
        return temporal_operators(formula) <= self.allowed


FULL = Fragment(frozenset({"X", "F", "G", "U"}))
L_FGX = Fragment(frozenset({"F", "G", "X"}))
L_F = Fragment(frozenset({"F"}))


@dataclass(frozen=True)
class Lasso:
    """A run: finite stem followed by a forever-repeating non-empty cycle."""

    stem: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("lasso cycle must be non-empty")

    def __len__(self):
        return len(self.stem) + len(self.cycle)

    def state_at(self, pos: int) -> State:
        ns = len(self.stem)
        if pos < ns:
            return self.stem[pos]
        return self.cycle[(pos - ns) % len(self.cycle)]

    def normalize(self, pos: int) -> int:
        """Fold a position into the canonical stem+cycle index range."""
        ns, nc = len(self.stem), len(self.cycle)
        if pos < ns:
            return pos
        return ns + (pos - ns) % nc

    def positions_from(self, pos: int):
        """The normalized positions reachable at or after ``pos``."""
        ns, nc = len(self.stem), len(self.cycle)
        pos = self.normalize(pos)
        if pos < ns:
            return list(range(pos, ns + nc))
        return list(range(ns, ns + nc))

    def first_repeat(self, pos: int) -> int:
        """Walk length after which the normalized position recurs."""
        ns, nc = len(self.stem), len(self.cycle)
        pos = self.normalize(pos)
        return (ns - pos) + nc if pos < ns else nc

    def validate(self, structure) -> bool:
        """Every consecutive pair (with wrap-around) is an edge of the structure."""
        seq = list(self.stem) + list(self.cycle)
        pairs = list(zip(seq, seq[1:])) + [(self.cycle[-1], self.cycle[0])]
        edges = structure.transitions
        return all(p in edges for p in pairs)


def _atom_value(name: str, state: State) -> bool:
    try:
        return bool(state[name])
    except KeyError:
        raise UnboundVariableError(name) from None


def eval_lasso(formula: LtlFormula, run: Lasso, pos: int = 0) -> bool:
    """Standard LTL semantics over the infinite unrolling of the lasso.

    Terminates because normalized positions repeat after stem + cycle steps.
    """
    if pos >= len(run):
        pos = run.normalize(pos)
    memo = {}

    def ev(f, p):
        p = run.normalize(p)
        key = (id(f), p)
        if key in memo:
            return memo[key]
        if isinstance(f, Const):
            result = f.value
        elif isinstance(f, Atom):
            result = _atom_value(f.name, run.state_at(p))
        elif isinstance(f, Not):
            result = not ev(f.operand, p)
        elif isinstance(f, And):
            result = all(ev(op, p) for op in f.operands)
        elif isinstance(f, Or):
            result = any(ev(op, p) for op in f.operands)
        elif isinstance(f, Implies):
            result = (not ev(f.lhs, p)) or ev(f.rhs, p)
        elif isinstance(f, Iff):
            result = ev(f.lhs, p) == ev(f.rhs, p)
        elif isinstance(f, Next):
            result = ev(f.operand, p + 1)
        elif isinstance(f, Eventually):
            result = any(ev(f.operand, q) for q in run.positions_from(p))
        elif isinstance(f, Always):
            result = all(ev(f.operand, q) for q in run.positions_from(p))
        elif isinstance(f, Until):
            # Walk forward until rhs holds or the position recurs.
            result = False
            q = p
            for _ in range(run.first_repeat(p)):
                if ev(f.rhs, q):
                    result = True
                    break
                if not ev(f.lhs, q):
                    break
                q = run.normalize(q + 1)
        else:
            raise TypeError(f"not an LtlFormula: {f!r}")
        memo[key] = result
        return result

    return ev(formula, pos)
