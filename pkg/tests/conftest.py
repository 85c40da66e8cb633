"""Shared corpora and hypothesis strategies."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import strategies as st

from matchroots.graph import WeightedGraph
from matchroots.random_graphs import random_connected_graph, random_graph


@lru_cache(maxsize=None)
def connected_unit_graphs(max_n: int) -> tuple[WeightedGraph, ...]:
    """Every connected graph on 1..max_n vertices up to isomorphism (graph atlas, n <= 7)."""
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_n and nx.is_connected(h):
            out.append(WeightedGraph.unit(n, [(u + 1, v + 1) for u, v in h.edges()]))
    return tuple(out)


def random_weighted(count: int, max_n: int, seed0: int, min_n: int = 1, connected: bool = False):
    out = []
    for k in range(count):
        n = min_n + k % (max_n - min_n + 1)
        density = Fraction(1 + k % 3, 4) + Fraction(1, 4)
        if connected:
            out.append(random_connected_graph(n, density, seed0 + 1000 * k, weighted=True))
        else:
            out.append(random_graph(n, density, seed0 + k, weighted=True))
    return out


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
edge_weights = st.fractions(min_value=-3, max_value=-1 / 4, max_denominator=6).filter(lambda w: w < 0)


@st.composite
def weighted_graphs(draw, min_n: int = 1, max_n: int = 6, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    r = {v: draw(small_rationals) for v in range(1, n + 1)}
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    edges = {e: draw(edge_weights) for e in chosen}
    if connected:
        # a random spanning path keeps every instance connected
        order = draw(st.permutations(range(1, n + 1)))
        for a, b in zip(order, order[1:]):
            key = (min(a, b), max(a, b))
            edges.setdefault(key, draw(edge_weights))
    return WeightedGraph(r, edges)


@pytest.fixture
def graph_file(tmp_path):
    def write(g: WeightedGraph, name: str = "g.json") -> str:
        p = tmp_path / name
        p.write_text(g.to_json())
        return str(p)

    return write


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
