"""d-separation, dependence complexes and composite dependence statements."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from . import kernels
from .dag import Dag
from .errors import InvalidPath, NodesAdjacent, TripletNotDisjoint, UnknownNode


def _as_set(x) -> frozenset[str]:
    if isinstance(x, str):
        return frozenset((x,))
    return frozenset(x)


@dataclass(frozen=True)
class DisjointTriplet:
    """``<A, B | C>``; canonicalized so that ``sorted(A) <= sorted(B)``."""

    A: frozenset
    B: frozenset
    C: frozenset = frozenset()

    def __post_init__(self):
        A, B, C = _as_set(self.A), _as_set(self.B), _as_set(self.C)
        if not A or not B:
            raise TripletNotDisjoint("A and B must be nonempty")
        if A & B or A & C or B & C:
            raise TripletNotDisjoint(f"sets not pairwise disjoint: {sorted(A)}, {sorted(B)}, {sorted(C)}")
        if sorted(B) < sorted(A):
            A, B = B, A
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    def __str__(self):
        def fmt(s):
            return ",".join(sorted(s)) or "∅"

        return f"<{fmt(self.A)}, {fmt(self.B)} | {fmt(self.C)}>"

    def swapped(self) -> tuple[frozenset, frozenset, frozenset]:
        return self.B, self.A, self.C


@dataclass(frozen=True)
class CompositeStatement:
    """``u`` and ``v`` dependent given every ``W`` with ``T ⊆ W``, ``W ∩ S = ∅``."""

    u: str
    v: str
    T: frozenset = frozenset()
    S: frozenset = frozenset()

    def __post_init__(self):
        T, S = _as_set(self.T), _as_set(self.S)
        if self.u == self.v:
            raise ValueError("u and v must differ")
        if {self.u, self.v} & (T | S):
            raise ValueError("T and S must avoid u and v")
        if T & S:
            raise ValueError("T and S must be disjoint")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "S", S)


@dataclass(frozen=True)
class DependenceComplex:
    """An active path ``pi`` from ``a`` to ``b`` plus one rope per open collider."""

    pi: tuple[str, ...]
    ropes: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    C: frozenset = frozenset()

    @property
    def a(self) -> str:
        return self.pi[0]

    @property
    def b(self) -> str:
        return self.pi[-1]

    @property
    def nodes(self) -> frozenset[str]:
        out = set(self.pi)
        for rope in self.ropes.values():
            out.update(rope)
        return frozenset(out)

    def arrows(self, g: Dag) -> frozenset[tuple[str, str]]:
        out = set()
        for x, y in zip(self.pi, self.pi[1:]):
            out.add((x, y) if g.has_arrow(x, y) else (y, x))
        for rope in self.ropes.values():
            out.update(zip(rope, rope[1:]))
        return frozenset(out)

    def conditioned_nodes(self) -> frozenset[str]:
        """Nodes of the complex lying in ``C`` (the ``T`` of its composite statement)."""
        return self.nodes & self.C

    def interior_noncolliders(self, g: Dag) -> frozenset[str]:
        cols = set(path_colliders(g, self.pi))
        return frozenset(x for x in self.pi[1:-1] if x not in cols)


# -- paths --------------------------------------------------------------------


def _check_path(g: Dag, path) -> None:
    if not path:
        raise InvalidPath("empty path")
    for x in path:
        if x not in g.index:
            raise UnknownNode(f"unknown node {x!r}")
    if len(set(path)) != len(path):
        raise InvalidPath("path repeats a node")
    for x, y in zip(path, path[1:]):
        if not g.adjacent(x, y):
            raise InvalidPath(f"{x} and {y} are not adjacent")


def path_colliders(g: Dag, path) -> list[str]:
    return [
        path[i]
        for i in range(1, len(path) - 1)
        if g.has_arrow(path[i - 1], path[i]) and g.has_arrow(path[i + 1], path[i])
    ]


def is_active_path(g: Dag, path, C: Iterable[str] = ()) -> bool:
    _check_path(g, path)
    C = _as_set(C)
    g.mask(C)
    cols = set(path_colliders(g, path))
    anc_c = g.ancestors(C) if C else frozenset()
    for x in path:
        if x in cols:
            if x not in anc_c:
                return False
        elif x in C:
            return False
    return True


def is_open_path(g: Dag, path) -> bool:
    """Path exists in ``g`` and has no collider."""
    try:
        _check_path(g, path)
    except InvalidPath:
        return False
    return not path_colliders(g, path)


# -- d-separation -----------------------------------------------------------------


def d_connected(g: Dag, t: DisjointTriplet) -> bool:
    a, b, c = g.mask(t.A), g.mask(t.B), g.mask(t.C)
    return bool(kernels.reach(g.parent_masks, g.child_masks, a, c) & b)


def d_separated(g: Dag, A, B, C=()) -> bool:
    return not d_connected(g, DisjointTriplet(A, B, C))


def moral_separated(g: Dag, t: DisjointTriplet) -> bool:
    """Separation in the moral graph of the ancestral set of ``A ∪ B ∪ C``.

    Deliberately independent of the kernels: plain sets and a BFS.
    """
    for x in t.A | t.B | t.C:
        if x not in g.index:
            raise UnknownNode(f"unknown node {x!r}")
    par = {u: {t_ for t_, h in g.arrows if h == u} for u in g.nodes}
    keep = set()
    stack = list(t.A | t.B | t.C)
    while stack:
        x = stack.pop()
        if x not in keep:
            keep.add(x)
            stack.extend(par[x])
    nbrs = {u: set() for u in keep}
    for h in keep:
        ps = sorted(par[h])
        for p in ps:
            nbrs[p].add(h)
            nbrs[h].add(p)
        for p, q in combinations(ps, 2):
            nbrs[p].add(q)
            nbrs[q].add(p)
    seen = set(t.A)
    queue = deque(t.A)
    while queue:
        x = queue.popleft()
        if x in t.B:
            return False
        for y in nbrs[x]:
            if y not in seen and y not in t.C:
                seen.add(y)
                queue.append(y)
    return True


# -- dependence complexes -------------------------------------------------------


def active_paths(g: Dag, a: str, b: str, C: Iterable[str] = ()) -> Iterator[tuple[str, ...]]:
    """Active paths from ``a`` to ``b``, in order of (collider count, length, names)."""
    C = _as_set(C)
    anc_c = g.ancestors(C) if C else frozenset()
    if a in C or b in C:
        return
    heap = [(0, 1, (a,))]
    while heap:
        cols, _, path = heapq.heappop(heap)
        x = path[-1]
        if x == b:
            yield path
            continue
        prev = path[-2] if len(path) > 1 else None
        for z in sorted(g.parents(x) | g.children(x)):
            if z in path:
                continue
            extra = 0
            if prev is not None:
                # x becomes interior: decide its status now
                if g.has_arrow(prev, x) and g.has_arrow(z, x):
                    if x not in anc_c:
                        continue
                    extra = 1
                elif x in C:
                    continue
            heapq.heappush(heap, (cols + extra, len(path) + 1, path + (z,)))


def _rope_candidates(g: Dag, d: str, C: frozenset, banned: set) -> Iterator[tuple[str, ...]]:
    """All ropes from ``d`` avoiding ``banned``, shortest first."""
    found = []

    def dfs(path):
        x = path[-1]
        for y in sorted(g.children(x)):
            if y in banned or y in path:
                continue
            if y in C:
                found.append(path + (y,))
            else:
                dfs(path + (y,))

    dfs((d,))
    found.sort(key=lambda p: (len(p), p))
    return iter(found)


def _shortest_rope(g: Dag, d: str, C: frozenset, banned: set):
    prev = {d: None}
    queue = deque([d])
    while queue:
        x = queue.popleft()
        for y in sorted(g.children(x)):
            if y in prev or y in banned:
                continue
            prev[y] = x
            if y in C:
                rope = [y]
                while prev[rope[-1]] is not None:
                    rope.append(prev[rope[-1]])
                return tuple(reversed(rope))
            queue.append(y)
    return None


def _assign_ropes(g: Dag, pi, cols, C):
    # greedy pass: shortest rope per collider, each avoiding earlier ropes
    used = set(pi)
    ropes = {}
    for d in cols:
        rope = _shortest_rope(g, d, C, used)
        if rope is None:
            break
        ropes[d] = rope
        used.update(rope[1:])
    else:
        return ropes

    # exhaustive backtracking over rope choices
    def search(i, used):
        if i == len(cols):
            return {}
        d = cols[i]
        for rope in _rope_candidates(g, d, C, used):
            rest = search(i + 1, used | set(rope[1:]))
            if rest is not None:
                rest[d] = rope
                return rest
        return None

    return search(0, set(pi))


def find_dependence_complex(g: Dag, a: str, b: str, C: Iterable[str] = ()) -> DependenceComplex | None:
    """A dependence complex between ``a`` and ``b`` for ``C``; ``None`` when d-separated."""
    C = _as_set(C)
    g.mask(C | {a, b})
    if a == b or a in C or b in C:
        raise ValueError("need distinct a, b outside C")
    if not d_connected(g, DisjointTriplet(a, b, C)):
        return None
    for pi in active_paths(g, a, b, C):
        cols = [d for d in path_colliders(g, pi) if d not in C]
        ropes = _assign_ropes(g, pi, cols, C)
        if ropes is not None:
            return DependenceComplex(pi, ropes, C)
    raise AssertionError("d-connected pair without a dependence complex")


def validate_complex(g: Dag, k: DependenceComplex, C: Iterable[str] | None = None) -> bool:
    C = k.C if C is None else _as_set(C)
    try:
        if len(k.pi) < 2 or k.a == k.b or k.a in C or k.b in C:
            return False
        if not is_active_path(g, k.pi, C):
            return False
        cols = {d for d in path_colliders(g, k.pi) if d not in C}
        if set(k.ropes) != cols:
            return False
        pi_nodes = set(k.pi)
        used = set()
        for d, rope in k.ropes.items():
            if len(rope) < 2 or rope[0] != d or len(set(rope)) != len(rope):
                return False
            if any(not g.has_arrow(x, y) for x, y in zip(rope, rope[1:])):
                return False
            if rope[-1] not in C or any(x in C for x in rope[:-1]):
                return False
            if any(x in pi_nodes for x in rope[1:]):
                return False
            if used & set(rope):
                return False
            used.update(rope)
    except (InvalidPath, UnknownNode):
        return False
    return True


def decompose_complex(arrows: Iterable[tuple[str, str]], a: str, b: str):
    """Recover ``(pi, ropes)`` from the arrow set of a complex and its endpoints.

    Nodes with three incident arrows are the open colliders; the one arrow
    leaving such a node starts its rope.
    """
    arrows = set(arrows)
    incident = {}
    for t, h in arrows:
        incident.setdefault(t, []).append((t, h))
        incident.setdefault(h, []).append((t, h))
    ropes = {}
    rope_arrows = set()
    for d, inc in incident.items():
        if len(inc) != 3:
            continue
        rope = [d]
        (arrow,) = [e for e in inc if e[0] == d]
        while True:
            rope_arrows.add(arrow)
            x = arrow[1]
            rope.append(x)
            out = [e for e in incident[x] if e[0] == x and e not in rope_arrows]
            if len(incident[x]) == 1 or not out:
                break
            arrow = out[0]
        ropes[d] = tuple(rope)
    rest = arrows - rope_arrows
    pi = [a]
    while pi[-1] != b:
        x = pi[-1]
        nxt = [h if t == x else t for t, h in rest if x in (t, h) and (h if t == x else t) not in pi]
        if len(nxt) != 1:
            raise ValueError("arrow set is not a dependence complex")
        pi.append(nxt[0])
    return tuple(pi), ropes


# -- composite statements --------------------------------------------------------


def composite_holds(g: Dag, s: CompositeStatement) -> bool:
    """Brute force over every conditioning set ``T ⊆ W ⊆ N \\ ({u, v} ∪ S)``."""
    g.mask(s.T | s.S | {s.u, s.v})
    u, v = 1 << g.index[s.u], 1 << g.index[s.v]
    t = g.mask(s.T)
    free = ((1 << len(g.nodes)) - 1) & ~(u | v | t | g.mask(s.S))
    sub = free
    while True:
        w = t | sub
        if not kernels.reach(g.parent_masks, g.child_masks, u, w) & v:
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & free


def edge_iff_star_dependent(g: Dag, u: str, v: str) -> bool:
    g.mask((u, v))
    return g.adjacent(u, v)


def plus_w_dependent(g: Dag, u: str, v: str, w: str) -> bool:
    """Graphical test for ``u`` and ``v`` dependent given every superset of ``{w}``."""
    g.mask((u, v, w))
    if g.adjacent(u, v):
        return True
    common = g.children(u) & g.children(v)
    return bool(common & g.ancestors(w))


def nonadjacent_separator(g: Dag, u: str, v: str) -> frozenset[str]:
    g.mask((u, v))
    if g.adjacent(u, v):
        raise NodesAdjacent(f"{u} and {v} are adjacent")
    return (g.parents(u) | g.parents(v)) - {u, v}
