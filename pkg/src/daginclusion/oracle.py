"""Brute-force ground truth: full independence models and DAG generators."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from . import kernels
from .dag import Dag
from .errors import CapExceeded, NodeSetMismatch, TooFewNodes
from .separation import DisjointTriplet, moral_separated

DEFAULT_MAX_N = 5


def max_n() -> int:
    return int(os.environ.get("DAG_INCLUSION_MAX_N", DEFAULT_MAX_N))


def _popcount(x):
    return bin(x).count("1")


def _index_tuple(mask):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


@lru_cache(maxsize=None)
def triplet_masks(n: int) -> tuple[tuple[int, int, int], ...]:
    """Canonical disjoint triplets over ``n`` indexed nodes, as ``(A, B, C)`` masks.

    Every node goes to one of A, B, C or nowhere; A and B are nonempty and
    A precedes B in lexicographic order of sorted indices.
    """
    out = []
    for assign in product(range(4), repeat=n):
        a = b = c = 0
        for i, slot in enumerate(assign):
            if slot == 1:
                a |= 1 << i
            elif slot == 2:
                b |= 1 << i
            elif slot == 3:
                c |= 1 << i
        if a and b and _index_tuple(a) < _index_tuple(b):
            out.append((a, b, c))
    out.sort(key=lambda t: (_popcount(t[2]), t[2], _index_tuple(t[0]), _index_tuple(t[1])))
    return tuple(out)


def triplet_count(n: int) -> int:
    """Closed form: assignments to {A, B, C, out} with A, B nonempty, halved for A<->B."""
    return (4**n - 2 * 3**n + 2**n) // 2


def enumerate_triplets(nodes: Iterable[str]) -> list[DisjointTriplet]:
    nodes = tuple(sorted(nodes))
    if len(nodes) < 2:
        raise TooFewNodes("need at least two nodes")

    def names(m):
        return frozenset(nodes[i] for i in _index_tuple(m))

    return [DisjointTriplet(names(a), names(b), names(c)) for a, b, c in triplet_masks(len(nodes))]


@dataclass(frozen=True)
class IndependenceModel:
    """Set of d-separated canonical triplets, stored as a bitmask over ``triplet_masks``."""

    nodes: tuple[str, ...]
    bits: int

    @property
    def statements(self) -> frozenset[DisjointTriplet]:
        masks = triplet_masks(len(self.nodes))

        def names(m):
            return frozenset(self.nodes[i] for i in _index_tuple(m))

        return frozenset(
            DisjointTriplet(names(a), names(b), names(c))
            for j, (a, b, c) in enumerate(masks)
            if self.bits >> j & 1
        )

    def __len__(self):
        return _popcount(self.bits)

    def __contains__(self, t: DisjointTriplet):
        return t in self.statements


def model(g: Dag) -> IndependenceModel:
    if len(g.nodes) < 2:
        return IndependenceModel(g.nodes, 0)
    bits = kernels.separated_mask(g.parent_masks, g.child_masks, triplet_masks(len(g.nodes)))
    return IndependenceModel(g.nodes, bits)


def model_by_moralization(g: Dag) -> IndependenceModel:
    """Same model computed one statement at a time with the moralization criterion."""
    if len(g.nodes) < 2:
        return IndependenceModel(g.nodes, 0)
    bits = 0
    for j, t in enumerate(enumerate_triplets(g.nodes)):
        if moral_separated(g, t):
            bits |= 1 << j
    return IndependenceModel(g.nodes, bits)


def model_included(m1: IndependenceModel, m2: IndependenceModel) -> bool:
    if m1.nodes != m2.nodes:
        raise NodeSetMismatch("models over different node sets")
    return not m1.bits & ~m2.bits


# -- DAG generators -----------------------------------------------------------------


def _check_cap(n, cap):
    cap = max_n() if cap is None else cap
    if n > cap:
        raise CapExceeded(f"{n} nodes exceeds enumeration cap {cap}")


def enumerate_dags(nodes: Iterable[str], cap: int | None = None) -> Iterator[Dag]:
    """Every labeled DAG over ``nodes`` exactly once."""
    nodes = tuple(sorted(nodes))
    n = len(nodes)
    _check_cap(n, cap)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for states in product(range(3), repeat=len(pairs)):
        par = [0] * n
        for (i, j), s in zip(pairs, states):
            if s == 1:
                par[j] |= 1 << i
            elif s == 2:
                par[i] |= 1 << j
        if kernels.is_acyclic(par):
            arrows = frozenset(
                (nodes[t], nodes[h]) for h in range(n) for t in range(n) if par[h] >> t & 1
            )
            yield Dag._trusted(nodes, arrows)


def default_nodes(n: int) -> tuple[str, ...]:
    """``a, b, c, ...`` for small ``n``; ``v0, v1, ...`` beyond 26."""
    if n <= 26:
        return tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return tuple(f"v{i:03d}" for i in range(n))


def random_dag(nodes: Iterable[str], edge_prob: float, seed: int) -> Dag:
    """Random DAG: seeded random causal order, each forward pair kept with ``edge_prob``."""
    if not 0 <= edge_prob <= 1:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = random.Random(seed)
    order = sorted(nodes)
    rng.shuffle(order)
    arrows = [
        (order[i], order[j])
        for i in range(len(order))
        for j in range(i + 1, len(order))
        if rng.random() < edge_prob
    ]
    return Dag(order, arrows)


# -- graphoid properties ---------------------------------------------------------------


def _submasks(m):
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def check_graphoid_composition(g: Dag, cap: int | None = None) -> bool:
    """Symmetry, decomposition, weak union, contraction, intersection and composition."""
    n = len(g.nodes)
    _check_cap(n, cap)
    if n < 2:
        return True
    bits = model(g).bits
    stmts = set()
    for j, (a, b, c) in enumerate(triplet_masks(n)):
        if bits >> j & 1:
            stmts.add((a, b, c))
            stmts.add((b, a, c))

    def ind(a, b, c):
        return not a or not b or (a, b, c) in stmts

    by_ac = {}
    for a, b, c in stmts:
        by_ac.setdefault((a, c), []).append(b)

    for a, b, c in stmts:
        if not ind(b, a, c):
            return False
        for b1 in _submasks(b):
            d = b & ~b1
            # decomposition and weak union
            if not ind(a, b1, c) or not ind(a, b1, c | d):
                return False
        for d in by_ac.get((a, b | c), ()):
            # contraction
            if not ind(a, b | d, c):
                return False
        for d in _submasks(c):
            if d and ind(a, d, (c & ~d) | b) and not ind(a, b | d, c & ~d):
                # intersection
                return False
    for (a, c), bs in by_ac.items():
        for b in bs:
            for d in bs:
                if not b & d and not ind(a, b | d, c):
                    # composition
                    return False
    return True
