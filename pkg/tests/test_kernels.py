import os
import subprocess
import sys

from hypothesis import given, settings
from hypothesis import strategies as st

from daginclusion import _pykernels, kernels
from daginclusion.oracle import random_dag, triplet_masks

from .helpers import brute_d_connected, subsets


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")


def test_pure_python_override():
    env = dict(os.environ, DAG_INCLUSION_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import daginclusion; print(daginclusion.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_reach_matches_path_enumeration(kernel_backend, dags4):
    for g in dags4[::7]:
        n = len(g.nodes)
        for cond in subsets(range(n)):
            cmask = sum(1 << i for i in cond)
            for s in range(n):
                if cmask >> s & 1:
                    continue
                r = kernel_backend.reach(g.parent_masks, g.child_masks, 1 << s, cmask)
                C = {g.nodes[i] for i in cond}
                for t in range(n):
                    if t == s or t in cond:
                        continue
                    expected = brute_d_connected(g, [g.nodes[s]], [g.nodes[t]], C)
                    assert bool(r >> t & 1) == expected


def test_backends_agree_on_all_models(kernel_backend, dags4):
    trip = triplet_masks(4)
    for g in dags4:
        assert kernel_backend.separated_mask(g.parent_masks, g.child_masks, trip) == _pykernels.separated_mask(
            g.parent_masks, g.child_masks, trip
        )


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.floats(0, 1), st.integers(0, 2**31), st.data())
def test_backends_agree_on_random_graphs(n, p, seed, data):
    from daginclusion._pykernels import ancestors, is_acyclic, reach

    try:
        from daginclusion import _ckernels as ck
    except ImportError:
        return
    g = random_dag([f"v{i:02d}" for i in range(n)], p, seed)
    src = data.draw(st.integers(1, (1 << n) - 1))
    cond = data.draw(st.integers(0, (1 << n) - 1)) & ~src
    assert ck.reach(g.parent_masks, g.child_masks, src, cond) == reach(g.parent_masks, g.child_masks, src, cond)
    assert ck.ancestors(g.parent_masks, src) == ancestors(g.parent_masks, src)
    assert ck.is_acyclic(g.parent_masks) and is_acyclic(g.parent_masks)


def test_is_acyclic_detects_cycles(kernel_backend):
    # 0 -> 1 -> 2 -> 0
    assert not kernel_backend.is_acyclic([1 << 2, 1 << 0, 1 << 1])
    assert kernel_backend.is_acyclic([0, 1 << 0, 1 << 1])
    assert kernel_backend.is_acyclic([])


def test_wide_graph_falls_back(kernel_backend):
    # 70 nodes exceeds the compiled mask width
    n = 70
    par = [0] + [1 << (i - 1) for i in range(1, n)]
    ch = [1 << (i + 1) for i in range(n - 1)] + [0]
    assert kernel_backend.reach(par, ch, 1, 0) == (1 << n) - 1
    assert kernel_backend.reach(par, ch, 1, 1 << 35) == (1 << 35) - 1
    assert kernel_backend.is_acyclic(par)
