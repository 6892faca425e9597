"""Finite-state transition systems, their composition, and explicit expansion.

A system is a triple (V, I, rho): Boolean state variables, an initial-state
formula over V, and a transition formula over V and the primed copies V'.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import product

from . import boolexpr as bx
from .errors import CapacityError, CompositionError, ScopeError


class State(Mapping):
    """Immutable total assignment of state variables to 0/1."""

    __slots__ = ("_items", "_dict", "_hash")

    def __init__(self, assignment):
        d = {str(k): int(v) for k, v in dict(assignment).items()}
        for k, v in d.items():
            if v not in (0, 1):
                raise ValueError(f"state value for {k} must be 0 or 1")
        object.__setattr__(self, "_dict", d)
        object.__setattr__(self, "_items", tuple(sorted(d.items())))
        object.__setattr__(self, "_hash", hash(self._items))

    def __getitem__(self, key):
        return self._dict[key]

    def __iter__(self):
        return iter(self._dict)

    def __len__(self):
        return len(self._dict)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, State):
            return self._items == other._items
        return NotImplemented

    def __repr__(self):
        inner = ",".join(f"{k}={v}" for k, v in self._items)
        return "{" + inner + "}"

    def true_vars(self) -> frozenset:
        return frozenset(k for k, v in self._items if v == 1)

    def restrict(self, names) -> "State":
        names = set(names)
        return State({k: v for k, v in self._items if k in names})

    def primed(self) -> dict:
        """The same assignment over the primed variable keys."""
        return {k + "'": v for k, v in self._items}


@dataclass(frozen=True)
class TransitionSystem:
    """Triple (V, I, rho) with optional explicit locality annotation.

    ``local_vars=None`` means locality is inferred at composition time:
    a variable is shared iff it occurs in more than one composed system.
    """

    vars: tuple
    init: bx.BoolExpr
    trans: bx.BoolExpr
    local_vars: frozenset | None = None
    name: str = "M"

    def __post_init__(self):
        seen = set()
        for v in self.vars:
            if v in seen:
                raise ScopeError(f"duplicate variable declaration: {v}")
            seen.add(v)
        if self.local_vars is not None:
            extra = set(self.local_vars) - seen
            if extra:
                raise ScopeError(f"local variables not declared: {sorted(extra)}")
        for name, primed in bx.variables(self.init):
            if primed:
                raise ScopeError(f"primed variable {name}' not allowed in init")
            if name not in seen:
                raise ScopeError(f"init references undeclared variable: {name}")
        for name, primed in bx.variables(self.trans):
            if name not in seen:
                ref = name + "'" if primed else name
                raise ScopeError(f"trans references undeclared variable: {ref}")

    @property
    def shared_vars(self) -> frozenset:
        if self.local_vars is None:
            return frozenset()
        return frozenset(self.vars) - self.local_vars

    def states(self):
        """Iterate all 2^n total assignments in bit order."""
        n = len(self.vars)
        for bits in range(1 << n):
            yield State({v: (bits >> i) & 1 for i, v in enumerate(self.vars)})


def eval_bool(expr, assignment):
    """Re-export of boolexpr.eval_bool for convenience."""
    return bx.eval_bool(expr, assignment)


def successors(ts: TransitionSystem, s: State):
    """All states s' with (s, s') satisfying the transition formula."""
    for v in ts.vars:
        if v not in s:
            raise ScopeError(f"state does not assign variable: {v}")
    out = set()
    for cand in ts.states():
        merged = dict(s)
        merged.update(cand.primed())
        if bx.eval_bool(ts.trans, merged):
            out.add(cand)
    return out


def initial_states(ts: TransitionSystem):
    """All states satisfying the init formula."""
    return {s for s in ts.states() if bx.eval_bool(ts.init, s)}


def _effective_locals(systems):
    """Resolve each system's local variables, inferring where unannotated.

    Inference: a variable is local to system i iff it occurs in no other
    system. Explicit annotations are validated against all other systems.
    """
    occurrences = {}
    for i, ts in enumerate(systems):
        for v in ts.vars:
            occurrences.setdefault(v, []).append(i)
    declared = {}
    for i, ts in enumerate(systems):
        if ts.local_vars is None:
            continue
        for v in ts.local_vars:
            if v in declared:
                raise CompositionError(
                    f"variable {v} declared local in systems "
                    f"{systems[declared[v]].name} and {ts.name}"
                )
            declared[v] = i
            if len(occurrences[v]) > 1:
                others = [systems[j].name for j in occurrences[v] if j != i]
                raise CompositionError(
                    f"variable {v} is local to {ts.name} but also occurs in {others}"
                )
    locals_ = []
    for i, ts in enumerate(systems):
        if ts.local_vars is not None:
            locals_.append(frozenset(ts.local_vars))
        else:
            locals_.append(
                frozenset(v for v in ts.vars if len(occurrences[v]) == 1)
            )
    return locals_


def _union_vars(systems):
    out = []
    seen = set()
    for ts in systems:
        for v in ts.vars:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return tuple(out)


def compose_sync(systems) -> TransitionSystem:
    """Synchronous parallel composition: all processes step simultaneously."""
    systems = list(systems)
    if not systems:
        raise CompositionError("cannot compose an empty list of systems")
    _effective_locals(systems)
    return TransitionSystem(
        vars=_union_vars(systems),
        init=bx.conj(ts.init for ts in systems),
        trans=bx.conj(ts.trans for ts in systems),
        name="||".join(ts.name for ts in systems),
    )


def compose_interleaved(systems) -> TransitionSystem:
    """Interleaved asynchronous composition: exactly one process steps.

    The step of process i satisfies rho_i while the local variables of every
    other process keep their value.
    """
    systems = list(systems)
    if not systems:
        raise CompositionError("cannot compose an empty list of systems")
    locals_ = _effective_locals(systems)
    union = _union_vars(systems)
    disjuncts = []
    for i, ts in enumerate(systems):
        frozen = []
        for j, other in enumerate(systems):
            if j == i:
                continue
            for v in union:
                if v in locals_[j]:
                    frozen.append(bx.Eq(bx.Var(v), bx.Var(v, True)))
        disjuncts.append(bx.conj([ts.trans] + frozen))
    return TransitionSystem(
        vars=union,
        init=bx.conj(ts.init for ts in systems),
        trans=bx.disj(disjuncts),
        name="|".join(ts.name for ts in systems),
    )


class KripkeStructure:
    """Explicit structure: states, transition relation, labeling, initials.

    States are total assignments of ``vars``; the label of a state is the set
    of variables it assigns 1. Internally states are bitmasks (bit i holds
    ``vars[i]``) for speed; the public views hand out State objects.
    """

    def __init__(self, vars, state_bits, initial_bits, succ_bits):
        self.vars = tuple(vars)
        self.state_bits = tuple(sorted(state_bits))
        self.initial_bits = frozenset(initial_bits)
        self.succ_bits = {b: tuple(sorted(ts)) for b, ts in succ_bits.items()}
        self._state_cache = {}

    def state(self, bits: int) -> State:
        st = self._state_cache.get(bits)
        if st is None:
            st = State({v: (bits >> i) & 1 for i, v in enumerate(self.vars)})
            self._state_cache[bits] = st
        return st

    def bits(self, state: State) -> int:
        out = 0
        for i, v in enumerate(self.vars):
            if state[v]:
                out |= 1 << i
        return out

    @property
    def states(self) -> frozenset:
        return frozenset(self.state(b) for b in self.state_bits)

    @property
    def initials(self) -> frozenset:
        return frozenset(self.state(b) for b in self.initial_bits)

    @property
    def transitions(self) -> frozenset:
        return frozenset(
            (self.state(a), self.state(b))
            for a in self.state_bits
            for b in self.succ_bits.get(a, ())
        )

    def labels(self, state: State) -> frozenset:
        return state.true_vars()

    def post(self, state: State):
        return tuple(self.state(b) for b in self.succ_bits.get(self.bits(state), ()))

    def with_initials(self, states) -> "KripkeStructure":
        bits = {self.bits(s) for s in states}
        unknown = bits - set(self.state_bits)
        if unknown:
            raise ScopeError("initial states must be states of the structure")
        return KripkeStructure(self.vars, self.state_bits, bits, self.succ_bits)

    @classmethod
    def from_states(cls, vars, states, edges, initials) -> "KripkeStructure":
        """Build from explicit State-level data (used by tests and oracles)."""
        tmp = cls(vars, [], [], {})
        sbits = {tmp.bits(s) for s in states}
        ibits = {tmp.bits(s) for s in initials}
        succ = {}
        for a, b in edges:
            succ.setdefault(tmp.bits(a), set()).add(tmp.bits(b))
        return cls(vars, sbits, ibits, succ)

    def semantically_equal(self, other: "KripkeStructure") -> bool:
        """Same states, initials, and edges (as assignments), ignoring var order."""
        return (
            set(self.vars) == set(other.vars)
            and self.states == other.states
            and self.initials == other.initials
            and self.transitions == other.transitions
        )


def expand(ts: TransitionSystem, bound: int = 20) -> KripkeStructure:
    """Explicit-state expansion of a transition system.

    Enumerates all 2^n assignments; ``bound`` caps n to guard memory.
    """
    n = len(ts.vars)
    if n > bound:
        raise CapacityError(
            f"system has {n} variables; expansion bound is {bound}"
        )
    init_fn = bx.compile_predicate(ts.init, ts.vars)
    rel_fn = bx.compile_relation(ts.trans, ts.vars)
    universe = range(1 << n)
    initial = [b for b in universe if init_fn(b)]
    succ = {}
    for a in universe:
        row = [b for b in universe if rel_fn(a, b)]
        if row:
            succ[a] = row
    return KripkeStructure(ts.vars, universe, initial, succ)
