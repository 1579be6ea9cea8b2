"""Markov equivalence of DAGs and synthesis of covered-reversal sequences."""

from __future__ import annotations

from .dag import Dag
from .errors import InternalInvariantBroken, NodeSetMismatch, NotEquivalent
from .kernels import ancestors
from .ops import ReversalOp, TransformOp, apply_reversal, is_legal_reversal

__all__ = [
    "ReversalOp",
    "apply_reversal",
    "equivalence_class",
    "equivalent",
    "is_legal_reversal",
    "reversal_sequence",
]


def _same_nodes(k: Dag, l: Dag) -> None:
    if k.nodes != l.nodes:
        raise NodeSetMismatch(f"node sets differ: {list(k.nodes)} vs {list(l.nodes)}")


def equivalent(k: Dag, l: Dag) -> bool:
    """Same skeleton and same immoralities."""
    _same_nodes(k, l)
    return k.edges == l.edges and k.immoralities() == l.immoralities()


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def reversal_sequence(l: Dag, k: Dag) -> list[TransformOp]:
    """Legal reversals turning ``l`` into ``k``.

    Peels a terminal node ``t`` of ``k`` at a time. While ``t`` still has
    children in ``l`` (restricted to the unpeeled nodes), the child with no
    other child of ``t`` among its ancestors is reversed into a parent.
    Peeled nodes keep exactly their ``k``-parents and have no unpeeled
    children, so legality in the full graph matches legality in the
    induced subgraph.
    """
    if not equivalent(l, k):
        raise NotEquivalent("graphs are not Markov equivalent")
    g = l
    ops = []
    remaining = (1 << len(g.nodes)) - 1
    while remaining:
        t = next(i for i in _bits(remaining) if not k.child_masks[i] & remaining)
        while True:
            kids = g.child_masks[t] & remaining
            if not kids:
                break
            c = next(
                i for i in _bits(kids)
                if not ancestors(g.parent_masks, 1 << i) & kids & ~(1 << i)
            )
            op = TransformOp.reverse(g.nodes[t], g.nodes[c])
            if not is_legal_reversal(g, op.a, op.b):
                raise InternalInvariantBroken(f"{op} is not covered")
            g = apply_reversal(g, op)
            ops.append(op)
        remaining &= ~(1 << t)
    if g != k:
        raise InternalInvariantBroken("reversal sequence does not end at the target")
    return ops


def equivalence_class(g: Dag) -> dict[Dag, list[TransformOp]]:
    """Every DAG reachable from ``g`` by legal reversals, with a shortest reversal path."""
    paths = {g: []}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for a, b in sorted(h.arrows):
                if is_legal_reversal(h, a, b):
                    op = TransformOp.reverse(a, b)
                    h2 = apply_reversal(h, op)
                    if h2 not in paths:
                        paths[h2] = paths[h] + [op]
                        nxt.append(h2)
        frontier = nxt
    return paths
