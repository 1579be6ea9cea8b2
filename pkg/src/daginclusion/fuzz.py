"""Sweeps over DAG pairs that probe the inclusion conditions and Meek's conjecture."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .dag import Dag, complete_dag
from .inclusion import conditions_hold, includes
from .oracle import default_nodes, enumerate_dags, random_dag
from .transform import Exhausted, complete_meek_search, simple_shape_search

Pair = tuple[Dag, Dag]


def pair_key(k: Dag, l: Dag) -> tuple:
    return (sorted(k.arrows), sorted(l.arrows))


def exhaustive_pairs(n: int) -> Iterator[Pair]:
    """Every ordered pair ``(K, L)`` of DAGs on ``n`` nodes."""
    gs = list(enumerate_dags(default_nodes(n)))
    for k in gs:
        for l in gs:
            yield k, l


def random_pairs(n: int, trials: int, seed: int) -> Iterator[Pair]:
    """Random ``(K, L)`` pairs.

    Half the trials are independent random pairs, half put ``K`` over a
    skeleton that contains ``L``'s so inclusion actually occurs at larger n.
    """
    rng = random.Random(seed)
    nodes = default_nodes(n)
    for trial in range(trials):
        l = random_dag(nodes, rng.random(), rng.getrandbits(32))
        if trial % 2 == 0:
            k = random_dag(nodes, rng.random(), rng.getrandbits(32))
        else:
            order = list(nodes)
            rng.shuffle(order)
            p = rng.random()
            arrows = []
            for i in range(n):
                for j in range(i + 1, n):
                    u, v = order[i], order[j]
                    if l.adjacent(u, v) or rng.random() < p:
                        arrows.append((u, v))
            k = Dag(nodes, arrows)
        yield k, l


@dataclass
class ConditionsReport:
    pairs: int = 0
    included: int = 0
    # basic and Verma conditions hold, inclusion fails
    insufficient: list[Pair] = field(default_factory=list)
    # inclusion conditions hold, inclusion fails
    inclusion_insufficient: list[Pair] = field(default_factory=list)
    # should stay empty: a necessary condition failing for an included pair, etc.
    anomalies: list[tuple[str, Pair]] = field(default_factory=list)

    def sort(self):
        self.insufficient.sort(key=lambda p: pair_key(*p))
        self.inclusion_insufficient.sort(key=lambda p: pair_key(*p))
        self.anomalies.sort(key=lambda x: (x[0], pair_key(*x[1])))


def sweep_conditions(pairs: Iterable[Pair]) -> ConditionsReport:
    rep = ConditionsReport()
    for k, l in pairs:
        rep.pairs += 1
        inc = includes(k, l)
        basic = conditions_hold("basic", k, l)
        incl = conditions_hold("inclusion", k, l)
        if inc:
            rep.included += 1
            for family in ("basic", "verma", "inclusion", "graphical"):
                if not conditions_hold(family, k, l):
                    rep.anomalies.append((f"{family} not necessary", (k, l)))
        if incl and not basic:
            rep.anomalies.append(("inclusion conditions without basic", (k, l)))
        if not inc:
            if basic and conditions_hold("verma", k, l):
                rep.insufficient.append((k, l))
            if incl:
                rep.inclusion_insufficient.append((k, l))
        if len(k.edges) <= len(l.edges) and basic != inc:
            rep.anomalies.append(("equal-size basic conditions disagree", (k, l)))
    rep.sort()
    return rep


@dataclass
class MeekReport:
    pairs: int = 0
    included: int = 0
    solved: int = 0
    longest: int = 0
    counterexamples: list[Pair] = field(default_factory=list)
    # included pairs with no reversals-additions-reversals sequence
    not_simple: list[Pair] = field(default_factory=list)

    def sort(self):
        self.counterexamples.sort(key=lambda p: pair_key(*p))
        self.not_simple.sort(key=lambda p: pair_key(*p))


def sweep_meek(pairs: Iterable[Pair], check_simple: bool = True) -> MeekReport:
    rep = MeekReport()
    for k, l in pairs:
        rep.pairs += 1
        if not includes(k, l):
            continue
        rep.included += 1
        result = complete_meek_search(l, k)
        if isinstance(result, Exhausted):
            rep.counterexamples.append((k, l))
            continue
        rep.solved += 1
        rep.longest = max(rep.longest, len(result))
        if check_simple and simple_shape_search(l, k) is None:
            rep.not_simple.append((k, l))
    rep.sort()
    return rep


# -- non-locality family ---------------------------------------------------------------


def locality_pair(length: int, seed: int = 0) -> Pair:
    """``K`` with the single nontrivial statement ``<a, b | Z>`` and a path-shaped ``L``.

    ``K`` is the complete DAG over ``Z`` then ``a``, ``b`` with the edge
    ``a - b`` removed. ``L`` is one path ``a, z1, ..., zm, b`` with ``m =
    length`` and random orientations, keeping at least one non-collider so
    that ``Z`` blocks it.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    rng = random.Random(seed)
    zs = [f"z{i}" for i in range(1, length + 1)]
    full = complete_dag(zs + ["a", "b"])
    k = Dag(full.nodes, full.arrows - {("a", "b")})
    path = ["a"] + zs + ["b"]
    while True:
        arrows = [(x, y) if rng.random() < 0.5 else (y, x) for x, y in zip(path, path[1:])]
        tails = {t for t, _ in arrows}
        # some interior node must be a non-collider
        if any(z in tails for z in zs):
            break
    l = Dag(k.nodes, arrows)
    return k, l
