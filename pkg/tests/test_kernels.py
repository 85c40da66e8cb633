import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchroots import _kernels_py, kernels

compiled = pytest.mark.skipif(kernels.BACKEND != "compiled", reason="compiled kernel not built")


@st.composite
def integer_instances(draw, max_n=9, big=False):
    n = draw(st.integers(0, max_n))
    bound = 10**12 if big else 20
    neg_r = [draw(st.integers(-bound, bound)) for _ in range(n)]
    lam = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                lam[u][v] = lam[v][u] = -draw(st.integers(1, bound))
    return neg_r, lam


@settings(max_examples=60, deadline=None)
@given(integer_instances())
def test_lazy_matches_full_python_table(inst):
    neg_r, lam = inst
    full = _kernels_py.subset_table(len(neg_r), neg_r, lam)
    lazy = _kernels_py.LazyTable(len(neg_r), neg_r, lam)
    for mask in range(1 << len(neg_r)):
        assert lazy(mask) == full[mask]


@compiled
@settings(max_examples=60, deadline=None)
@given(integer_instances())
def test_compiled_matches_python(inst):
    neg_r, lam = inst
    assert kernels.full_table(neg_r, lam, "compiled") == kernels.full_table(neg_r, lam, "python")


@compiled
@settings(max_examples=30, deadline=None)
@given(integer_instances(max_n=8, big=True))
def test_overflow_falls_back_exactly(inst):
    neg_r, lam = inst
    table = kernels.SubsetTable(neg_r, lam, backend="compiled")
    ref = _kernels_py.subset_table(len(neg_r), neg_r, lam)
    for mask in range(1 << len(neg_r)):
        assert table.coefficients(mask) == ref[mask]


@compiled
def test_overflow_is_detected():
    n = 8
    neg_r = [0] * n
    lam = [[0 if u == v else -(10**9) for v in range(n)] for u in range(n)]
    table = kernels.SubsetTable(neg_r, lam, backend="compiled")
    assert table.backend == "python"
    assert table.coefficients((1 << n) - 1)[0] == 105 * 10**36


def test_pure_backend_is_selected_by_environment():
    env = dict(os.environ, MATCHROOTS_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import matchroots.kernels as k; print(k.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"


def test_large_graphs_use_the_lazy_table():
    n = kernels.DENSE_MAX_N + 2
    neg_r = [0] * n
    lam = [[0] * n for _ in range(n)]
    for v in range(n - 1):
        lam[v][v + 1] = lam[v + 1][v] = -1
    table = kernels.SubsetTable(neg_r, lam)
    assert table.backend == "python"
    # the path on 18 vertices has one perfect matching, of weight (-1)**9
    assert table.coefficients((1 << n) - 1)[0] == -1
