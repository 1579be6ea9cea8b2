"""Pure-Python bitmask kernels.

Graphs are passed as per-node parent/child bitmasks: bit ``j`` of
``parents[i]`` is set iff ``j -> i``. The compiled module ``_ckernels``
exposes the same functions with the same semantics.
"""


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ancestors(parents, mask):
    result = mask
    frontier = mask
    while frontier:
        new = 0
        for i in _bits(frontier):
            new |= parents[i]
        frontier = new & ~result
        result |= new
    return result


def descendants(children, mask):
    return ancestors(children, mask)


def reach(parents, children, src, cond):
    """Nodes outside ``cond`` joined to ``src`` by a trail active w.r.t. ``cond``."""
    anc = ancestors(parents, cond)
    up = src & ~cond
    down = 0
    f_up, f_down = up, 0
    while f_up or f_down:
        nu = nd = 0
        for i in _bits(f_up & ~cond):
            nu |= parents[i]
            nd |= children[i]
        for i in _bits(f_down & ~cond):
            nd |= children[i]
        for i in _bits(f_down & anc):
            nu |= parents[i]
        f_up = nu & ~up
        f_down = nd & ~down
        up |= nu
        down |= nd
    return (up | down) & ~cond


def separated_mask(parents, children, triplets):
    """Bit ``j`` of the result is set iff ``triplets[j] = (A, B, C)`` is d-separated."""
    cache = {}
    result = 0
    for j, (a, b, c) in enumerate(triplets):
        key = (a, c)
        r = cache.get(key)
        if r is None:
            r = cache[key] = reach(parents, children, a, c)
        if not r & b:
            result |= 1 << j
    return result


def is_acyclic(parents):
    n = len(parents)
    remaining = (1 << n) - 1
    while remaining:
        # peel terminal-in-reverse: nodes whose remaining parents are gone
        roots = 0
        for i in _bits(remaining):
            if not parents[i] & remaining:
                roots |= 1 << i
        if not roots:
            return False
        remaining &= ~roots
    return True
