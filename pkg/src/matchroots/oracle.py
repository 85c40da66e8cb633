"""Brute-force matching enumeration and the classical Gallai-Edmonds structure.

Everything here is exhaustive and independent of the polynomial machinery,
so it can serve as ground truth at theta = 0 for unit weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .classify import decompose
from .exact import AlgebraicNumber
from .graph import WeightedGraph, components, frontier
from .matchpoly import PreconditionError, Verdict, verdict

ENUMERATE_MAX_N = 16
CLASSICAL_MAX_N = 14
STRUCTURE_MAX_N = 12

Edge = tuple[int, int]


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def partner(self, v: int) -> int | None:
        for a, b in self.edges:
            if a == v:
                return b
            if b == v:
                return a
        return None


def _guard(g: WeightedGraph, limit: int) -> None:
    if g.n > limit:
        raise PreconditionError(f"graph has {g.n} vertices, enumeration limit is {limit}")


def enumerate_matchings(g: WeightedGraph) -> list[Matching]:
    """All matchings, the empty one first; branches on the lowest free vertex."""
    _guard(g, ENUMERATE_MAX_N)
    out: list[Matching] = []

    def walk(free: tuple[int, ...], chosen: list[Edge]) -> None:
        if not free:
            out.append(Matching(tuple(chosen)))
            return
        v, rest = free[0], free[1:]
        walk(rest, chosen)
        nbrs = set(g.neighbors(v))
        for k, u in enumerate(rest):
            if u in nbrs:
                chosen.append((v, u))
                walk(rest[:k] + rest[k + 1:], chosen)
                chosen.pop()

    walk(g.vertices, [])
    return out


class _MaxMatching:
    """nu(S), the largest matching inside a vertex subset, memoized on the subset."""

    def __init__(self, g: WeightedGraph):
        self.g = g
        self.nbrs = {v: frozenset(g.neighbors(v)) for v in g.vertices}
        self.nu = lru_cache(maxsize=None)(self._nu)

    def _nu(self, s: frozenset[int]) -> int:
        if len(s) < 2:
            return 0
        v = min(s)
        rest = s - {v}
        best = self.nu(rest)
        for u in self.nbrs[v] & rest:
            best = max(best, 1 + self.nu(rest - {u}))
        return best

    def maximum_matchings(self, s: frozenset[int]) -> Iterator[tuple[Edge, ...]]:
        """Every maximum matching of the subgraph on s, by pruned branching."""
        target = self.nu(s)

        def walk(free: frozenset[int], need: int, chosen: tuple[Edge, ...]) -> Iterator[tuple[Edge, ...]]:
            if need == 0:
                yield chosen
                return
            v = min(free)
            rest = free - {v}
            if self.nu(rest) >= need:
                yield from walk(rest, need, chosen)
            for u in sorted(self.nbrs[v] & rest):
                if 1 + self.nu(rest - {u}) >= need:
                    yield from walk(rest - {u}, need - 1, chosen + ((v, u),))

        yield from walk(s, target, ())


def maximum_matchings(g: WeightedGraph) -> list[Matching]:
    _guard(g, CLASSICAL_MAX_N)
    mm = _MaxMatching(g)
    return [Matching(m) for m in mm.maximum_matchings(frozenset(g.vertices))]


def max_matching_size(g: WeightedGraph) -> int:
    return _MaxMatching(g).nu(frozenset(g.vertices))


@dataclass(frozen=True)
class ClassicalDecomposition:
    D: frozenset[int]
    A: frozenset[int]
    C: frozenset[int]
    deficiency: int
    max_matching: int

    def to_json(self) -> dict:
        return {
            "D": sorted(self.D),
            "A": sorted(self.A),
            "C": sorted(self.C),
            "deficiency": self.deficiency,
            "max_matching": self.max_matching,
        }


def classical_decomposition(g: WeightedGraph) -> ClassicalDecomposition:
    """D = vertices left uncovered by some maximum matching, A its frontier, C the rest."""
    _guard(g, CLASSICAL_MAX_N)
    mm = _MaxMatching(g)
    everyone = frozenset(g.vertices)
    size = mm.nu(everyone)
    missed: set[int] = set()
    for m in mm.maximum_matchings(everyone):
        missed |= everyone - {v for e in m for v in e}
        if len(missed) == g.n:
            break
    d = frozenset(missed)
    a = frontier(g, d)
    return ClassicalDecomposition(d, a, everyone - d - a, g.n - 2 * size, size)


def ge_structure_check(g: WeightedGraph) -> Verdict:
    """Every item of the classical structure theorem, plus Gallai's lemma on
    each component of D, by enumeration."""
    _guard(g, STRUCTURE_MAX_N)
    dec = classical_decomposition(g)
    mm = _MaxMatching(g)
    comps = components(g, dec.D)
    comp_of = {v: k for k, c in enumerate(comps) for v in c}
    items: dict[str, bool] = {}
    witness: dict[str, object] = {}

    # (a) D-components are factor-critical
    bad = [sorted(c) for c in comps if any(2 * mm.nu(c - {v}) != len(c) - 1 for v in c)]
    items["a"] = not bad
    witness["a"] = bad

    # (b) C has a perfect matching
    items["b"] = 2 * mm.nu(dec.C) == len(dec.C)

    # (c) every S in A touches at least |S|+1 components of D
    touching = {v: {comp_of[u] for u in g.neighbors(v) if u in comp_of} for v in dec.A}
    a_list = sorted(dec.A)
    if len(a_list) > 20:
        raise PreconditionError("frontier too large for subset enumeration")
    failing = None
    for size in range(1, len(a_list) + 1):
        for s in combinations(a_list, size):
            if len(set().union(*(touching[v] for v in s))) < size + 1:
                failing = list(s)
                break
        if failing:
            break
    items["c"] = failing is None
    witness["c"] = failing

    # (d) shape of every maximum matching
    d_ok = True
    for m in mm.maximum_matchings(frozenset(g.vertices)):
        match = Matching(m)
        for c in comps:
            inside = sum(1 for a, b in m if a in c and b in c)
            if 2 * inside != len(c) - 1:
                d_ok = False
        for v in dec.C:
            u = match.partner(v)
            if u is None or u not in dec.C:
                d_ok = False
        used = []
        for v in dec.A:
            u = match.partner(v)
            if u is None or u not in comp_of:
                d_ok = False
            else:
                used.append(comp_of[u])
        if len(used) != len(set(used)):
            d_ok = False
        if not d_ok:
            witness["d"] = [list(e) for e in m]
            break
    items["d"] = d_ok

    # (e) deficiency
    items["e"] = dec.deficiency == len(comps) - len(dec.A)

    # Gallai's lemma on each connected factor-critical component
    gallai_bad = []
    for c in comps:
        if any(len(c) - 2 * len(m) != 1 for m in mm.maximum_matchings(c)):
            gallai_bad.append(sorted(c))
    items["gallai"] = not gallai_bad
    witness["gallai"] = gallai_bad

    return verdict("classical-structure", all(items.values()), items=items,
                   decomposition=dec.to_json(), witness={k: v for k, v in witness.items() if v})


def crosscheck_theta_zero(g: WeightedGraph) -> Verdict:
    """At theta = 0 with unit weights the polynomial sets equal the classical ones."""
    if not g.is_unit():
        raise PreconditionError("graph must have unit weights")
    _guard(g, STRUCTURE_MAX_N)
    classical = classical_decomposition(g)
    if g.n == 0:
        return verdict("classical-crosscheck", classical.deficiency == 0)
    dec = decompose(g, AlgebraicNumber.from_rational(0))
    checks = {
        "D": dec.D == classical.D,
        "A": dec.A == classical.A,
        "C": (dec.N_minus | dec.N_plus | dec.P) == classical.C,
        "deficiency": dec.m == classical.deficiency,
    }
    return verdict("classical-crosscheck", all(checks.values()), checks=checks,
                   polynomial=dec.to_json(), classical=classical.to_json())
