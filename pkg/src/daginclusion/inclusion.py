"""Graphical conditions for inclusion of DAG models and the inclusion decision.

Every condition family is a generator of ``(label, witness)`` violations; the
``*_conditions`` functions collect all of them into a :class:`ConditionReport`
while ``*_hold`` stops at the first one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from . import kernels
from .dag import Dag
from .errors import NodeSetMismatch, SizePreconditionViolated
from .separation import plus_w_dependent

Violation = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class ConditionReport:
    violations: tuple[Violation, ...] = ()

    @property
    def satisfied(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.satisfied

    def labels(self) -> set[str]:
        return {label for label, _ in self.violations}


def _same_nodes(k: Dag, l: Dag) -> None:
    if k.nodes != l.nodes:
        raise NodeSetMismatch(f"node sets differ: {list(k.nodes)} vs {list(l.nodes)}")


# -- local patterns -----------------------------------------------------------------


def _collider(g: Dag, u, w, v) -> bool:
    return g.has_arrow(u, w) and g.has_arrow(v, w)


def open3(g: Dag, u, w, v) -> bool:
    """``u - w - v``: a path with ``w`` not a collider."""
    return g.adjacent(u, w) and g.adjacent(w, v) and not _collider(g, u, w, v)


def open4(g: Dag, u, w, t, v) -> bool:
    """``u - w - t - v``: a path with neither ``w`` nor ``t`` a collider."""
    return open3(g, u, w, t) and open3(g, w, t, v)


def pattern_d(g: Dag, u, w, t, v) -> bool:
    """``u -> w <- t <-> v``."""
    return g.has_arrow(u, w) and g.has_arrow(t, w) and g.adjacent(t, v)


# -- condition families -----------------------------------------------------------


def _cond_a(k: Dag, l: Dag) -> Iterator[Violation]:
    for e in sorted(l.edges - k.edges):
        yield "a", e


def _cond_b_tilde(k: Dag, l: Dag) -> Iterator[Violation]:
    imm_k = k.immoralities()
    for im in sorted(l.immoralities()):
        if not k.adjacent(im.u, im.v) and im not in imm_k:
            yield "b~", tuple(im)


def _cond_c_tilde(k: Dag, l: Dag) -> Iterator[Violation]:
    imm_l = l.immoralities()
    for im in sorted(k.immoralities()):
        if l.adjacent(im.u, im.w) and l.adjacent(im.w, im.v) and im not in imm_l:
            yield "c~", tuple(im)


def _triples(g: Dag):
    for u, v in combinations(g.nodes, 2):
        for w in g.nodes:
            if w != u and w != v:
                yield u, v, w


def _cond_verma_ii(k: Dag, l: Dag) -> Iterator[Violation]:
    for u, v, w in _triples(l):
        if plus_w_dependent(l, u, v, w) and not plus_w_dependent(k, u, v, w):
            yield "ii", (u, v, w)


def _cond_verma_iii(k: Dag, l: Dag) -> Iterator[Violation]:
    # the conclusion is read as u, v dependent given +w in L
    for u, v, w in _triples(l):
        if (
            plus_w_dependent(k, u, v, w)
            and l.adjacent(u, w)
            and l.adjacent(w, v)
            and not (plus_w_dependent(l, u, v, w) or k.adjacent(u, v))
        ):
            yield "iii", (u, v, w)


def _separated_given(g: Dag, u: str, v: str, cond: int) -> bool:
    iu, iv = g.index[u], g.index[v]
    return not kernels.reach(g.parent_masks, g.child_masks, 1 << iu, cond) >> iv & 1


def _cond_star(k: Dag, l: Dag) -> Iterator[Violation]:
    for im in sorted(k.immoralities()):
        iu, iv = k.index[im.u], k.index[im.v]
        sep = k.parent_masks[iu] | k.parent_masks[iv]
        if not _separated_given(l, im.u, im.v, sep):
            yield "*", tuple(im)


def enforced_violations(k: Dag, l: Dag) -> Iterator[Violation]:
    """Non-adjacent ``K``-pairs not separated in ``L`` by their joint ``K``-parents."""
    for u, v in combinations(k.nodes, 2):
        if k.adjacent(u, v):
            continue
        sep = k.parent_masks[k.index[u]] | k.parent_masks[k.index[v]]
        if not _separated_given(l, u, v, sep):
            yield "**", (u, v)


def _graph_b(k: Dag, l: Dag) -> Iterator[Violation]:
    for w in l.nodes:
        for u, v in combinations(sorted(l.parents(w)), 2):
            if not k.adjacent(u, v) and not _collider(k, u, w, v):
                yield "b", (u, w, v)


def _graph_c(k: Dag, l: Dag) -> Iterator[Violation]:
    for u, v, w in _triples(l):
        if open3(l, u, w, v) and not k.adjacent(u, v) and not open3(k, u, w, v):
            yield "c", (u, w, v)


def _graph_d(k: Dag, l: Dag) -> Iterator[Violation]:
    for u, w, t, v in permutations(l.nodes, 4):
        if pattern_d(l, u, w, t, v) and not (
            k.adjacent(u, v)
            or open3(k, u, t, v)
            or _collider(k, u, w, v)
            or pattern_d(k, u, w, t, v)
        ):
            yield "d", (u, w, t, v)


def _graph_e(k: Dag, l: Dag) -> Iterator[Violation]:
    for u, w, t, v in permutations(l.nodes, 4):
        if u < v and open4(l, u, w, t, v) and not (
            k.adjacent(u, v) or open3(k, u, w, v) or open3(k, u, t, v) or open4(k, u, w, t, v)
        ):
            yield "e", (u, w, t, v)


_FAMILIES = {
    "basic": (_cond_a, _cond_b_tilde, _cond_c_tilde),
    "verma": (_cond_a, _cond_verma_ii, _cond_verma_iii),
    "inclusion": (_cond_a, _cond_b_tilde, _cond_star),
    "graphical": (_cond_a, _graph_b, _graph_c, _graph_d, _graph_e),
}

CONDITION_SETS = tuple(_FAMILIES)


def _violations(family: str, k: Dag, l: Dag) -> Iterator[Violation]:
    _same_nodes(k, l)
    for check in _FAMILIES[family]:
        yield from check(k, l)


def condition_report(family: str, k: Dag, l: Dag) -> ConditionReport:
    if family not in _FAMILIES:
        raise ValueError(f"unknown condition set {family!r}")
    return ConditionReport(tuple(_violations(family, k, l)))


def conditions_hold(family: str, k: Dag, l: Dag) -> bool:
    return next(_violations(family, k, l), None) is None


def basic_conditions(k: Dag, l: Dag) -> ConditionReport:
    """(a), (b~) and (c~)."""
    return condition_report("basic", k, l)


def verma_conditions(k: Dag, l: Dag) -> ConditionReport:
    return condition_report("verma", k, l)


def inclusion_conditions(k: Dag, l: Dag) -> ConditionReport:
    """(a), (b~) and (*): every ``K``-immorality's end nodes separated in ``L``."""
    return condition_report("inclusion", k, l)


def graphical_conditions(k: Dag, l: Dag) -> ConditionReport:
    """The local conditions (a)-(e)."""
    return condition_report("graphical", k, l)


def includes(k: Dag, l: Dag) -> bool:
    """Decide ``I(K) ⊆ I(L)`` via the enforced inclusion condition."""
    _same_nodes(k, l)
    return next(enforced_violations(k, l), None) is None


def same_size_inclusion(k: Dag, l: Dag) -> bool:
    """Inclusion for ``|E(K)| <= |E(L)|``, where the basic conditions suffice."""
    _same_nodes(k, l)
    if len(k.edges) > len(l.edges):
        raise SizePreconditionViolated("K has more edges than L")
    return conditions_hold("basic", k, l)
