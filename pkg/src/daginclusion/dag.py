"""Immutable DAG value type and its structural queries."""

from __future__ import annotations

import re
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Iterable, NamedTuple

from . import kernels
from .errors import (
    CycleDetected,
    DoubleArrow,
    DuplicateNode,
    EmptyNodeSet,
    InvalidNodeName,
    SelfLoop,
    UnknownNode,
)

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class Immorality(NamedTuple):
    """``u -> w <- v`` with ``u``, ``v`` non-adjacent; stored with ``u < v``."""

    u: str
    v: str
    w: str


@dataclass(frozen=True)
class Skeleton:
    nodes: tuple[str, ...]
    lines: frozenset[tuple[str, str]]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Dag:
    """A directed acyclic graph over named nodes.

    Nodes are kept in lexicographic order; node ``i`` of that order owns bit
    ``i`` in the parent/child bitmasks used by the kernels. Instances are
    immutable and hashable.
    """

    __slots__ = ("nodes", "arrows", "index", "parent_masks", "child_masks", "_cache")

    def __init__(self, nodes: Iterable[str], arrows: Iterable[tuple[str, str]] = ()):
        nodes = list(nodes)
        seen = set()
        for u in nodes:
            if not isinstance(u, str) or not NAME_RE.match(u):
                raise InvalidNodeName(f"invalid node name {u!r}")
            if u in seen:
                raise DuplicateNode(f"duplicate node {u!r}")
            seen.add(u)
        pairs = set()
        for tail, head in arrows:
            for x in (tail, head):
                if x not in seen:
                    raise UnknownNode(f"unknown node {x!r}")
            if tail == head:
                raise SelfLoop(f"self-loop at {tail!r}")
            if (tail, head) in pairs or (head, tail) in pairs:
                raise DoubleArrow(f"more than one arrow between {tail!r} and {head!r}")
            pairs.add((tail, head))
        self._setup(tuple(sorted(nodes)), frozenset(pairs))
        if not kernels.is_acyclic(self.parent_masks):
            raise CycleDetected(self._find_cycle())

    def _setup(self, nodes, arrows):
        self.nodes = nodes
        self.arrows = arrows
        self.index = {u: i for i, u in enumerate(nodes)}
        par = [0] * len(nodes)
        ch = [0] * len(nodes)
        for tail, head in arrows:
            t, h = self.index[tail], self.index[head]
            par[h] |= 1 << t
            ch[t] |= 1 << h
        self.parent_masks = tuple(par)
        self.child_masks = tuple(ch)
        self._cache = {}

    @classmethod
    def _trusted(cls, nodes: tuple[str, ...], arrows: frozenset) -> Dag:
        """Build without validation; ``nodes`` must already be sorted."""
        g = cls.__new__(cls)
        g._setup(nodes, arrows)
        return g

    def _find_cycle(self):
        remaining = (1 << len(self.nodes)) - 1
        changed = True
        while changed:
            changed = False
            for i in _bits(remaining):
                if not self.child_masks[i] & remaining:
                    remaining &= ~(1 << i)
                    changed = True
        # every remaining node has a remaining child, so walking children cycles
        i = min(_bits(remaining))
        walk = []
        pos = {}
        while i not in pos:
            pos[i] = len(walk)
            walk.append(i)
            i = min(_bits(self.child_masks[i] & remaining))
        cycle = walk[pos[i]:] + [i]
        return [self.nodes[j] for j in cycle]

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.nodes == other.nodes and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.nodes, self.arrows))

    def __repr__(self):
        arrows = ", ".join(f"{t}->{h}" for t, h in sorted(self.arrows))
        return f"Dag(nodes={list(self.nodes)}, arrows=[{arrows}])"

    @property
    def key(self) -> int:
        """Integer encoding of the arrow set; unique for a fixed node tuple."""
        k = self._cache.get("key")
        if k is None:
            n = len(self.nodes)
            k = 0
            for h, pm in enumerate(self.parent_masks):
                k |= pm << (h * n)
            self._cache["key"] = k
        return k

    # -- masks ----------------------------------------------------------------

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for u in names:
            try:
                m |= 1 << self.index[u]
            except KeyError:
                raise UnknownNode(f"unknown node {u!r}") from None
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(self.nodes[i] for i in _bits(mask))

    def _idx(self, u):
        try:
            return self.index[u]
        except KeyError:
            raise UnknownNode(f"unknown node {u!r}") from None

    # -- local structure ------------------------------------------------------

    def parents(self, u: str) -> frozenset[str]:
        return self.names(self.parent_masks[self._idx(u)])

    def children(self, u: str) -> frozenset[str]:
        return self.names(self.child_masks[self._idx(u)])

    def has_arrow(self, u: str, v: str) -> bool:
        return (u, v) in self.arrows

    def adjacent(self, u: str, v: str) -> bool:
        return (u, v) in self.arrows or (v, u) in self.arrows

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        adj = self._cache.get("adj")
        if adj is None:
            adj = self._cache["adj"] = tuple(p | c for p, c in zip(self.parent_masks, self.child_masks))
        return adj

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        """Unordered adjacencies as sorted name pairs."""
        e = self._cache.get("edges")
        if e is None:
            e = self._cache["edges"] = frozenset(tuple(sorted(a)) for a in self.arrows)
        return e

    def ancestors(self, A: Iterable[str] | str) -> frozenset[str]:
        if isinstance(A, str):
            A = (A,)
        return self.names(kernels.ancestors(self.parent_masks, self.mask(A)))

    def descendants(self, A: Iterable[str] | str) -> frozenset[str]:
        if isinstance(A, str):
            A = (A,)
        return self.names(kernels.descendants(self.child_masks, self.mask(A)))

    def has_directed_path(self, u: str, v: str) -> bool:
        d = kernels.descendants(self.child_masks, 1 << self._idx(u))
        return bool(d >> self._idx(v) & 1)

    # -- global structure -----------------------------------------------------

    def causal_ordering(self) -> list[str]:
        """Topological order, ties broken by name."""
        indeg = [bin(p).count("1") for p in self.parent_masks]
        heap = [i for i, d in enumerate(indeg) if d == 0]
        heapify(heap)
        order = []
        while heap:
            i = heappop(heap)
            order.append(self.nodes[i])
            for j in _bits(self.child_masks[i]):
                indeg[j] -= 1
                if indeg[j] == 0:
                    heappush(heap, j)
        return order

    def terminal_nodes(self) -> frozenset[str]:
        return frozenset(u for u, c in zip(self.nodes, self.child_masks) if not c)

    def immoralities(self) -> frozenset[Immorality]:
        imm = self._cache.get("imm")
        if imm is None:
            adj = self.adjacency_masks
            found = set()
            for w, pm in enumerate(self.parent_masks):
                ps = list(_bits(pm))
                for x in range(len(ps)):
                    for y in range(x + 1, len(ps)):
                        i, j = ps[x], ps[y]
                        if not adj[i] >> j & 1:
                            found.add(Immorality(self.nodes[i], self.nodes[j], self.nodes[w]))
            imm = self._cache["imm"] = frozenset(found)
        return imm

    def skeleton(self) -> Skeleton:
        return Skeleton(self.nodes, self.edges)

    def induced_subgraph(self, B: Iterable[str]) -> Dag:
        B = frozenset(B)
        if not B:
            raise EmptyNodeSet("induced subgraph needs a nonempty node set")
        self.mask(B)
        arrows = frozenset((t, h) for t, h in self.arrows if t in B and h in B)
        return Dag._trusted(tuple(sorted(B)), arrows)

    # -- edits (return new graphs) ----------------------------------------------

    def with_arrows(self, remove=(), add=()) -> Dag:
        """Copy with arrows removed/added; the result is validated for cycles."""
        arrows = (self.arrows - frozenset(remove)) | frozenset(add)
        return Dag(self.nodes, arrows)


def build_dag(nodes: Iterable[str], arrows: Iterable[tuple[str, str]] = ()) -> Dag:
    return Dag(nodes, arrows)


def empty_dag(nodes: Iterable[str]) -> Dag:
    return Dag(nodes, ())


def complete_dag(order: Iterable[str]) -> Dag:
    """Complete DAG whose arrows all point forward along ``order``."""
    order = list(order)
    return Dag(order, [(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order))])
