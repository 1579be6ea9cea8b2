"""Acceptance criteria, one test each. The terminal summary prints a pass/fail line per criterion."""

import random
import re
import time
from collections import defaultdict
from itertools import combinations, permutations

import pytest

from daginclusion.equivalence import equivalent, reversal_sequence
from daginclusion.fuzz import exhaustive_pairs, random_pairs, sweep_conditions, sweep_meek
from daginclusion.inclusion import basic_conditions, conditions_hold, includes, verma_conditions
from daginclusion.ops import TransformSequence
from daginclusion.oracle import (
    enumerate_dags,
    enumerate_triplets,
    model,
    model_by_moralization,
    triplet_masks,
)
from daginclusion.separation import (
    CompositeStatement,
    composite_holds,
    d_connected,
    edge_iff_star_dependent,
    find_dependence_complex,
    moral_separated,
    nonadjacent_separator,
    plus_w_dependent,
    validate_complex,
)
from daginclusion.transform import meek_search, one_edge_sequence, simple_shape_search

from .conftest import fixture_dag
from .helpers import labeled_dag_count, subsets

criterion = pytest.mark.criterion


def pair_statements(g):
    """Separated ``(u, v, C)`` statements with singleton ends, from the moralization oracle."""
    bits = model_by_moralization(g).bits
    out = set()
    for j, t in enumerate(enumerate_triplets(g.nodes)):
        if bits >> j & 1 and len(t.A) == len(t.B) == 1:
            (u,), (v,) = t.A, t.B
            out.add((u, v, t.C))
            out.add((v, u, t.C))
    return out


def oracle_composite(g, seps, u, v, T=frozenset()):
    rest = set(g.nodes) - {u, v} - set(T)
    return all((u, v, frozenset(T) | frozenset(W)) not in seps for W in subsets(rest))


@criterion(1, "d-separation equals moralization on all 4-node DAGs")
def test_c1_oracle_agreement(dags4):
    start = time.perf_counter()
    trips = enumerate_triplets("abcd")
    disagreements = 0
    for g in dags4:
        for t in trips:
            if d_connected(g, t) != (not moral_separated(g, t)):
                disagreements += 1
    elapsed = time.perf_counter() - start
    print(f"{len(dags4)} DAGs x {len(trips)} triplets, {disagreements} disagreements, {elapsed:.1f}s")
    assert len(dags4) == 543 and len(trips) == 55
    assert disagreements == 0
    assert elapsed < 60


@criterion(2, "dependence complex exists exactly when d-connected")
def test_c2_dependence_complexes(dags4):
    discrepancies = 0
    found = 0
    for g in dags4:
        seps = pair_statements(g)
        for a, b in permutations(g.nodes, 2):
            for C in subsets(set(g.nodes) - {a, b}):
                connected = (a, b, frozenset(C)) not in seps
                k = find_dependence_complex(g, a, b, C)
                if k is None:
                    discrepancies += connected
                    continue
                found += 1
                if not connected or not validate_complex(g, k, C) or (k.a, k.b) != (a, b):
                    discrepancies += 1
    print(f"{found} complexes, {discrepancies} discrepancies")
    assert discrepancies == 0


@criterion(3, "parent-union separation, adjacency and immorality characterizations")
def test_c3_composite_statements(dags4):
    discrepancies = 0
    for g in dags4:
        seps = pair_statements(g)
        for u, v in combinations(g.nodes, 2):
            star = oracle_composite(g, seps, u, v)
            if star != g.adjacent(u, v) or star != edge_iff_star_dependent(g, u, v):
                discrepancies += 1
            if star != composite_holds(g, CompositeStatement(u, v)):
                discrepancies += 1
            if not g.adjacent(u, v):
                sep = nonadjacent_separator(g, u, v)
                if sep != (g.parents(u) | g.parents(v)) or (u, v, sep) not in seps:
                    discrepancies += 1
        imms = {(im.u, im.v, im.w) for im in g.immoralities()}
        for u, v in combinations(g.nodes, 2):
            for w in g.nodes:
                if w in (u, v):
                    continue
                plus_w = oracle_composite(g, seps, u, v, {w})
                if plus_w != composite_holds(g, CompositeStatement(u, v, {w})):
                    discrepancies += 1
                if plus_w != plus_w_dependent(g, u, v, w):
                    discrepancies += 1
                if g.adjacent(u, w) and g.adjacent(v, w) and not g.adjacent(u, v):
                    if ((u, v, w) in imms) != plus_w:
                        discrepancies += 1
    assert discrepancies == 0


@criterion(4, "equivalent() equals model equality on all ordered 4-node pairs")
def test_c4_equivalence(dags4, models4):
    start = time.perf_counter()
    discrepancies = 0
    pairs = 0
    for k, mk in zip(dags4, models4):
        for l, ml in zip(dags4, models4):
            pairs += 1
            if equivalent(k, l) != (mk == ml):
                discrepancies += 1
    elapsed = time.perf_counter() - start
    print(f"{pairs} pairs, {discrepancies} discrepancies, {elapsed:.1f}s")
    assert pairs == 543 * 543
    assert discrepancies == 0
    assert elapsed < 600


@criterion(5, "reversal sequences replay for every equivalent 4-node pair")
def test_c5_reversal_sequences(dags4, models4):
    classes = defaultdict(list)
    for g, m in zip(dags4, models4):
        classes[m].append(g)
    pairs = [(l, k) for members in classes.values() for l in members for k in members]
    failures = 0
    for l, k in pairs:
        seq = TransformSequence(l, tuple(reversal_sequence(l, k)))
        if set(seq.shape()) - {"R"} or seq.target != k:
            failures += 1
    rng = random.Random(20011)
    sample = rng.sample(pairs, 1000)
    for l, k in sample:
        m = model(l).bits
        for g in TransformSequence(l, tuple(reversal_sequence(l, k))).graphs():
            if model(g).bits != m:
                failures += 1
                break
    print(f"{len(pairs)} equivalent pairs, {len(sample)} checked per step, {failures} failures")
    assert failures == 0


@criterion(6, "includes() equals oracle inclusion (all 4-node pairs, 10000 random 5-node pairs)")
def test_c6_inclusion(dags4, models4):
    discrepancies = 0
    included = 0
    for k, mk in zip(dags4, models4):
        for l, ml in zip(dags4, models4):
            truth = not mk & ~ml
            included += truth
            if includes(k, l) != truth:
                discrepancies += 1
    assert discrepancies == 0
    cache = {}

    def bits(g):
        if g not in cache:
            cache[g] = model(g).bits
        return cache[g]

    sampled = included5 = 0
    for k, l in random_pairs(5, 10000, seed=52):
        sampled += 1
        truth = not bits(k) & ~bits(l)
        included5 += truth
        if includes(k, l) != truth:
            discrepancies += 1
    print(f"4 nodes: {included} included pairs; 5 nodes: {sampled} pairs, {included5} included")
    assert sampled == 10000 and included5 > 0
    assert discrepancies == 0


@criterion(7, "basic conditions decide inclusion when K has no more edges than L")
def test_c7_same_size(dags4, models4):
    checked = discrepancies = 0
    for k, mk in zip(dags4, models4):
        for l, ml in zip(dags4, models4):
            if len(k.edges) > len(l.edges):
                continue
            checked += 1
            basic = conditions_hold("basic", k, l)
            if basic != includes(k, l) or basic != (not mk & ~ml):
                discrepancies += 1
    print(f"{checked} pairs, {discrepancies} discrepancies")
    assert discrepancies == 0


@criterion(8, "basic and Verma conditions pass for a non-included pair")
def test_c8_insufficiency(dags4, models4):
    k, l = fixture_dag("basic_insufficient_K.dag"), fixture_dag("basic_insufficient_L.dag")
    assert basic_conditions(k, l).satisfied and verma_conditions(k, l).satisfied
    mk, ml = model(k).bits, model(l).bits
    assert mk & ~ml
    rep = sweep_conditions(exhaustive_pairs(4))
    print(f"{len(rep.insufficient)} pairs pass basic and Verma conditions without inclusion")
    assert rep.insufficient
    assert (k, l) in rep.insufficient
    assert not rep.anomalies
    # pairs passing the inclusion conditions without inclusion, if any, must be genuine
    index = {g: m for g, m in zip(dags4, models4)}
    assert all(index[a] & ~index[b] for a, b in rep.inclusion_insufficient)
    print(f"{len(rep.inclusion_insufficient)} pairs pass the inclusion conditions without inclusion")


@criterion(9, "one-edge sequences for every qualifying 4-node pair")
def test_c9_one_edge(dags4):
    by_size = defaultdict(list)
    for g in dags4:
        by_size[len(g.edges)].append(g)
    qualifying = failures = 0
    for size, ls in by_size.items():
        for l in ls:
            for k in by_size.get(size + 1, ()):
                if not conditions_hold("graphical", k, l):
                    continue
                qualifying += 1
                try:
                    seq = one_edge_sequence(l, k)
                    ok = re.fullmatch("R*AR*", seq.shape()) and seq.target == k
                except Exception:
                    ok = False
                failures += not ok
    print(f"{qualifying} qualifying pairs, {failures} failures")
    assert qualifying > 0
    assert failures == 0


@criterion(10, "included pair with no reversals-additions-reversals sequence")
def test_c10_interleaving(dags4, models4):
    l, k = fixture_dag("interleaved_L.dag"), fixture_dag("interleaved_K.dag")
    assert includes(k, l)
    assert simple_shape_search(l, k) is None
    # independent check: classes from the oracle partition, no member of L's class is arrow-wise inside one of K's
    ml, mk = model(l).bits, model(k).bits
    l_class = [g for g, m in zip(dags4, models4) if m == ml]
    k_class = [g for g, m in zip(dags4, models4) if m == mk]
    assert not any(a.arrows <= b.arrows for a in l_class for b in k_class)
    seq = meek_search(l, k)
    assert isinstance(seq, TransformSequence)
    assert seq.target == k
    assert not re.fullmatch("R*A*R*", seq.shape())
    print(f"interleaved sequence {seq.shape()}: " + ", ".join(str(op) for op in seq.ops))


@criterion(11, "reversal/addition sequence exists for every included 4-node pair")
def test_c11_meek_sweep(models4):
    start = time.perf_counter()
    rep = sweep_meek(exhaustive_pairs(4), check_simple=False)
    elapsed = time.perf_counter() - start
    expected = sum(1 for mk in models4 for ml in models4 if not mk & ~ml)
    print(
        f"{rep.included} included pairs, {rep.solved} solved, longest {rep.longest}, "
        f"{len(rep.counterexamples)} counterexamples, {elapsed:.0f}s"
    )
    assert rep.included == expected
    assert rep.solved == rep.included
    assert not rep.counterexamples
    assert elapsed < 1800


@criterion(12, "DAG counts and 3-node equivalence classes")
def test_c12_generator(dags3):
    counts = [sum(1 for _ in enumerate_dags("abcde"[:n])) for n in range(1, 6)]
    assert counts == [1, 3, 25, 543, 29281]
    assert counts == [labeled_dag_count(n) for n in range(1, 6)]
    assert len({model(g).bits for g in dags3}) == 11
    assert len(triplet_masks(3)) == 9
