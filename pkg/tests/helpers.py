"""Independent brute-force reference implementations used as test oracles."""

from itertools import combinations
from math import comb


def simple_paths(g, a, b):
    nbrs = {u: set() for u in g.nodes}
    for t, h in g.arrows:
        nbrs[t].add(h)
        nbrs[h].add(t)
    out = []

    def walk(path):
        x = path[-1]
        if x == b:
            out.append(tuple(path))
            return
        for y in sorted(nbrs[x]):
            if y not in path:
                walk(path + [y])

    walk([a])
    return out


def descendants(g, u):
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for t, h in g.arrows:
            if t == x and h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def path_active(g, path, C):
    for i, x in enumerate(path):
        collider = 0 < i < len(path) - 1 and (path[i - 1], x) in g.arrows and (path[i + 1], x) in g.arrows
        if collider:
            if not descendants(g, x) & set(C):
                return False
        elif x in C:
            return False
    return True


def brute_d_connected(g, A, B, C):
    return any(path_active(g, p, C) for a in A for b in B for p in simple_paths(g, a, b))


def labeled_dag_count(n):
    """Robinson's recurrence for labeled acyclic digraphs."""
    a = [1]
    for m in range(1, n + 1):
        a.append(sum((-1) ** (k + 1) * comb(m, k) * 2 ** (k * (m - k)) * a[m - k] for k in range(1, m + 1)))
    return a[n]


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from combinations(xs, r)
