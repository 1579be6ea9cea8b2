"""Sequences of legal reversals and legal additions between DAGs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .dag import Dag
from .equivalence import equivalence_class, equivalent, reversal_sequence
from .errors import InclusionFails, InternalInvariantBroken, NodeSetMismatch, PreconditionViolated
from .inclusion import conditions_hold, includes
from .ops import (
    OpKind,
    TransformOp,
    TransformSequence,
    apply_add,
    apply_reversal,
    is_legal_add,
    is_legal_reversal,
)

__all__ = [
    "Exhausted",
    "OpKind",
    "TransformOp",
    "TransformSequence",
    "apply_add",
    "is_legal_add",
    "meek_search",
    "one_edge_sequence",
    "simple_shape_search",
]


def _same_nodes(k: Dag, l: Dag) -> None:
    if k.nodes != l.nodes:
        raise NodeSetMismatch(f"node sets differ: {list(k.nodes)} vs {list(l.nodes)}")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- one extra adjacency ------------------------------------------------------------


def _add_candidates(g: Dag, t: int, P: int, C: int, X: int):
    """Arrows to add, grouped by case in dispatch order II, III, IV."""
    name = g.nodes
    if not C:
        for x in _bits(X):
            yield "II", name[x], name[t]
    for c in _bits(C):
        for p in _bits(P & ~g.parent_masks[c]):
            yield "III", name[p], name[c]
    for c in _bits(C):
        for x in _bits(g.parent_masks[c] & ~(P | 1 << t)):
            yield "IV", name[x], name[t]


def one_edge_sequence(l: Dag, k: Dag) -> TransformSequence:
    """Reversals, one addition, reversals: ``l`` to ``k`` when they differ in one adjacency.

    Requires the graphical conditions (a)-(e) for ``k`` in ``l`` and
    ``|E(k)| = |E(l)| + 1``. Each candidate addition is verified to give a
    graph equivalent to ``k`` before it is accepted.
    """
    _same_nodes(k, l)
    if len(k.edges) != len(l.edges) + 1:
        raise PreconditionViolated("K must have exactly one more edge than L")
    if not conditions_hold("graphical", k, l):
        raise PreconditionViolated("graphical conditions (a)-(e) fail")
    g = l
    ops = []
    remaining = (1 << len(g.nodes)) - 1
    while remaining:
        t = next(i for i in _bits(remaining) if not k.child_masks[i] & remaining)
        reversed_one = True
        while reversed_one:
            reversed_one = False
            for y in _bits(g.child_masks[t] & remaining):
                if is_legal_reversal(g, g.nodes[t], g.nodes[y]):
                    op = TransformOp.reverse(g.nodes[t], g.nodes[y])
                    g = apply_reversal(g, op)
                    ops.append(op)
                    reversed_one = True
                    break
        P = g.parent_masks[t] & remaining
        C = g.child_masks[t] & remaining
        X = k.parent_masks[t] & remaining & ~(P | C)
        if not C and not X:
            remaining &= ~(1 << t)
            continue
        for _case, a, b in _add_candidates(g, t, P, C, X):
            if not is_legal_add(g, a, b):
                continue
            k_star = apply_add(g, TransformOp.add(a, b))
            if equivalent(k_star, k):
                ops.append(TransformOp.add(a, b))
                ops.extend(reversal_sequence(k_star, k))
                return TransformSequence(l, tuple(ops))
        raise InternalInvariantBroken(f"no verified arrow to add at terminal node {g.nodes[t]}")
    raise InternalInvariantBroken("all nodes peeled without adding an arrow")


# -- Meek-style search -------------------------------------------------------------


@dataclass(frozen=True)
class Exhausted:
    """No sequence found. ``complete`` means the whole state space was explored."""

    complete: bool
    explored: int


def default_max_steps(k: Dag) -> int:
    return 2 * (len(k.edges) + len(k.nodes) ** 2)


def meek_search(l: Dag, k: Dag, max_steps: float | None = None) -> TransformSequence | Exhausted:
    """Shortest sequence of legal reversals and additions from ``l`` to ``k``.

    Breadth-first over DAGs whose skeleton lies between those of ``l`` and
    ``k`` and whose model still contains that of ``k``; both restrictions
    hold at every step of any valid sequence. ``max_steps=math.inf`` makes the
    search run until the (finite) state space is exhausted.
    """
    _same_nodes(k, l)
    if not includes(k, l):
        raise InclusionFails("I(K) is not contained in I(L)")
    if max_steps is None:
        max_steps = default_max_steps(k)
    n = len(k.nodes)
    k_adj = k.adjacency_masks
    checks = []
    for i, j in combinations(range(n), 2):
        if not k_adj[i] >> j & 1:
            checks.append((1 << i, j, k.parent_masks[i] | k.parent_masks[j]))

    def admissible(par, ch):
        return all(not kernels.reach(par, ch, src, sep) >> j & 1 for src, j, sep in checks)

    def children_of(par):
        ch = [0] * n
        for h, pm in enumerate(par):
            for t in _bits(pm):
                ch[t] |= 1 << h
        return ch

    start = l.parent_masks
    goal = k.parent_masks
    prev = {start: None}
    frontier = [start]
    depth = 0
    while frontier:
        if goal in prev:
            break
        if depth >= max_steps:
            return Exhausted(False, len(prev))
        depth += 1
        nxt = []
        for par in frontier:
            ch = children_of(par)
            adj = [p | c for p, c in zip(par, ch)]
            moves = []
            for h in range(n):
                for t in _bits(par[h]):
                    if par[t] | 1 << t == par[h]:
                        new = list(par)
                        new[h] &= ~(1 << t)
                        new[t] |= 1 << h
                        moves.append((OpKind.REVERSE, t, h, tuple(new)))
            for i in range(n):
                for j in _bits(k_adj[i] & ~adj[i]):
                    if not kernels.descendants(ch, 1 << j) >> i & 1:
                        new = list(par)
                        new[j] |= 1 << i
                        moves.append((OpKind.ADD, i, j, tuple(new)))
            for kind, a, b, new in moves:
                if new in prev:
                    continue
                if kind is OpKind.ADD and not admissible(new, children_of(new)):
                    continue
                prev[new] = (par, TransformOp(kind, k.nodes[a], k.nodes[b]))
                nxt.append(new)
        frontier = nxt
    if goal not in prev:
        return Exhausted(True, len(prev))
    ops = []
    state = goal
    while prev[state] is not None:
        state, op = prev[state]
        ops.append(op)
    return TransformSequence(l, tuple(reversed(ops)))


def simple_shape_search(l: Dag, k: Dag) -> TransformSequence | None:
    """A sequence of the form reversals, additions, reversals; ``None`` if impossible.

    Such a sequence exists iff some member of ``l``'s equivalence class is an
    arrow-wise subgraph of some member of ``k``'s class: additions then stay
    inside an acyclic supergraph, so any order of them is legal.
    """
    _same_nodes(k, l)
    if not includes(k, l):
        raise InclusionFails("I(K) is not contained in I(L)")
    l_class = equivalence_class(l)
    k_class = equivalence_class(k)
    key = lambda g: sorted(g.arrows)  # noqa: E731
    for l_star in sorted(l_class, key=key):
        for k_star in sorted(k_class, key=key):
            if l_star.arrows <= k_star.arrows:
                adds = [TransformOp.add(a, b) for a, b in sorted(k_star.arrows - l_star.arrows)]
                ops = l_class[l_star] + adds + reversal_sequence(k_star, k)
                return TransformSequence(l, tuple(ops))
    return None


def complete_meek_search(l: Dag, k: Dag) -> TransformSequence | Exhausted:
    """Bounded search first; on a bounded miss, rerun without a depth bound."""
    result = meek_search(l, k)
    if isinstance(result, Exhausted) and not result.complete:
        result = meek_search(l, k, max_steps=math.inf)
    return result
