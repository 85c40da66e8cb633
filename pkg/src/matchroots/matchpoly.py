"""Matching polynomials and the polynomial identities they satisfy.

``matching_polynomial`` runs the vertex-deletion recurrence

    mu(G) = (x - r_i) mu(G - i) + sum_j lambda_ij mu(G - i - j)

over vertex masks of the top-level graph, so every induced subgraph of one
parent shares a single table.  Weights are scaled to integers first: with
``D`` the lcm of all denominators, ``y = D x`` turns offsets into ``D r_i``
and edge weights into ``D^2 lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt, lcm
from typing import Callable, Sequence

from .exact import (
    AlgebraicNumber,
    Polynomial,
    compare,
    compare_algebraic,
    isolate_roots,
    multiplicity_at,
)
from .graph import WeightedGraph, delete_vertices, enumerate_paths, path_weight
from .kernels import SubsetTable

BRUTEFORCE_MAX_N = 16


@dataclass
class Verdict:
    """Outcome of one law checked on one instance.

    ``status`` is "pass", "fail", "not-applicable", "hypothesis-not-satisfied"
    or "not-covered"; only "fail" counts against an instance.
    """

    law: str
    status: str
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def __bool__(self) -> bool:
        return self.ok


def verdict(law: str, passed: bool, **details) -> Verdict:
    return Verdict(law, "pass" if passed else "fail", details)


class PreconditionError(ValueError):
    """A check was asked about an instance outside its hypotheses."""


# -- the recurrence ------------------------------------------------------------

def _scaling(root: WeightedGraph) -> int:
    d = 1
    for v in root.vertices:
        d = lcm(d, root.offset(v).denominator)
    for _, _, w in root.edges():
        d = lcm(d, w.denominator)
    return d


def _table(root: WeightedGraph) -> tuple[SubsetTable, int]:
    hit = root._cache.get("subset_table")
    if hit is None:
        d = _scaling(root)
        verts = root.vertices
        n = len(verts)
        neg_r = [int(-root.offset(v) * d) for v in verts]
        lam = [[0] * n for _ in range(n)]
        for u, v, w in root.edges():
            a, b = root._index[u], root._index[v]
            lam[a][b] = lam[b][a] = int(w * d * d)
        hit = (SubsetTable(neg_r, lam), d)
        root._cache["subset_table"] = hit
    return hit


def matching_polynomial(g: WeightedGraph) -> Polynomial:
    """mu(G); ``mu`` of the empty graph is 1."""
    root = g._root
    by_mask = root._cache.setdefault("mu", {})
    hit = by_mask.get(g._mask)
    if hit is not None:
        return hit
    table, d = _table(root)
    scaled = table.coefficients(g._mask)
    deg = len(scaled) - 1
    nums = []
    power = 1
    for c in scaled:
        nums.append(c * power)
        power *= d
    mu = Polynomial.from_ints(nums, d ** deg)
    by_mask[g._mask] = mu
    return mu


def mu_minus(g: WeightedGraph, *removed: int) -> Polynomial:
    """mu(G - removed)."""
    return matching_polynomial(delete_vertices(g, removed))


def matching_polynomial_recursive(
    g: WeightedGraph, pivot: Callable[[frozenset[int]], int] = min
) -> Polynomial:
    """Independent memoized recurrence with a caller-chosen pivot rule.

    Used to confirm that the result does not depend on the pivot order.
    """
    memo: dict[frozenset[int], Polynomial] = {frozenset(): Polynomial.constant(1)}
    x = Polynomial.x()

    def mu(s: frozenset[int]) -> Polynomial:
        if s in memo:
            return memo[s]
        i = pivot(s)
        rest = s - {i}
        out = (x - g.offset(i)) * mu(rest)
        for j in g.neighbors(i):
            if j in rest:
                out = out + mu(rest - {j}).scale(g.weight(i, j))
        memo[s] = out
        return out

    return mu(frozenset(g.vertices))


def matching_polynomial_bruteforce(g: WeightedGraph) -> Polynomial:
    """Direct sum over every matching of the uncovered-vertex and edge products."""
    if g.n > BRUTEFORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTEFORCE_MAX_N}, got {g.n}")
    edges = list(g.edges())
    x = Polynomial.x()
    total = Polynomial()

    def walk(k: int, covered: frozenset[int], weight: Fraction) -> None:
        nonlocal total
        if k == len(edges):
            term = Polynomial.constant(weight)
            for v in g.vertices:
                if v not in covered:
                    term = term * (x - g.offset(v))
            total = total + term
            return
        walk(k + 1, covered, weight)
        u, v, w = edges[k]
        if u not in covered and v not in covered:
            walk(k + 1, covered | {u, v}, weight * w)

    walk(0, frozenset(), Fraction(1))
    return total


# -- identities ----------------------------------------------------------------------

def derivative_identity_check(g: WeightedGraph) -> Verdict:
    """mu(G)' equals the sum of mu(G - j) over all vertices j."""
    lhs = matching_polynomial(g).derivative()
    rhs = Polynomial()
    for j in g.vertices:
        rhs = rhs + mu_minus(g, j)
    residual = lhs - rhs
    return verdict("derivative-identity", residual.is_zero(), residual=residual.to_json())


def cross_difference(g: WeightedGraph, i: int, j: int) -> Polynomial:
    """mu(G-i) mu(G-j) - mu(G-i-j) mu(G)."""
    return mu_minus(g, i) * mu_minus(g, j) - mu_minus(g, i, j) * matching_polynomial(g)


def path_square_sum(g: WeightedGraph, i: int, j: int) -> Polynomial:
    """Sum over i-j paths c of (path weight) * mu(G - c)^2."""
    out = Polynomial()
    for c in enumerate_paths(g, i, j):
        out = out + (mu_minus(g, *c) ** 2).scale(path_weight(g, c))
    return out


def christoffel_darboux_check(g: WeightedGraph, i: int, j: int) -> Verdict:
    if i == j:
        raise PreconditionError("vertices must be distinct")
    residual = cross_difference(g, i, j) - path_square_sum(g, i, j)
    return verdict("christoffel-darboux", residual.is_zero(), i=i, j=j, residual=residual.to_json())


@dataclass(frozen=True)
class RationalFunction:
    """num / den, kept unreduced."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def equals(self, other: "RationalFunction") -> bool:
        return (self.num * other.den - other.num * self.den).is_zero()


def alpha(g: WeightedGraph, i: int) -> RationalFunction:
    """The graph continued fraction mu(G) / mu(G - i)."""
    return RationalFunction(matching_polynomial(g), mu_minus(g, i))


@dataclass(frozen=True)
class ContractionWeight:
    """num / den with num = -sum_c lambda_c mu(G-c)^2 and den = mu(G-i-j)^2."""

    i: int
    j: int
    num: Polynomial
    den: Polynomial

    def as_function(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)


class IdentityError(AssertionError):
    """An identity that must hold exactly did not."""


def contraction_weight(g: WeightedGraph, i: int, j: int, *, via_paths: bool = True) -> ContractionWeight:
    """Effective coupling between ``i`` and ``j`` after contracting every i-j path.

    With ``via_paths`` the numerator is summed over enumerated paths; otherwise
    the equal cross-difference form is used, which avoids the exponential path
    enumeration.  Either way the contraction identity
    ``alpha_i(G) = alpha_i(G-j) + w / alpha_j(G-i)`` is verified before returning.
    """
    if i == j:
        raise PreconditionError("vertices must be distinct")
    num = -path_square_sum(g, i, j) if via_paths else -cross_difference(g, i, j)
    den = mu_minus(g, i, j) ** 2
    w = ContractionWeight(i, j, num, den)
    gj = delete_vertices(g, [j])
    gi = delete_vertices(g, [i])
    if not mu_minus(g, i).is_zero() and not mu_minus(g, i, j).is_zero():
        rhs = alpha(gj, i) + w.as_function() / alpha(gi, j)
        if not alpha(g, i).equals(rhs):
            raise IdentityError(f"contraction identity fails for ({i}, {j})")
    return w


def contraction_identity_check(g: WeightedGraph, i: int, j: int) -> Verdict:
    try:
        w = contraction_weight(g, i, j, via_paths=True)
    except IdentityError as exc:
        return verdict("contraction-identity", False, i=i, j=j, error=str(exc))
    samples_ok = all(w.num(t) <= 0 for t in range(-6, 7))
    return verdict("contraction-identity", samples_ok, i=i, j=j)


CONTRACTION_ZERO = "zero"
CONTRACTION_FINITE = "finite-negative"
CONTRACTION_MINUS_INF = "minus-infinity"


def contraction_class_at(w: ContractionWeight, theta: AlgebraicNumber) -> str:
    """Value class of the contraction weight at ``theta``."""
    if w.num.is_zero():
        return CONTRACTION_ZERO
    a = multiplicity_at(w.num, theta)
    b = multiplicity_at(w.den, theta)
    if a < b:
        return CONTRACTION_MINUS_INF
    if a > b:
        return CONTRACTION_ZERO
    return CONTRACTION_FINITE


# -- root location -------------------------------------------------------------------

def _ceil_two_sqrt(b: Fraction) -> Fraction:
    """A rational strictly above 2*sqrt(b), within 1e-6 of it."""
    p, q = b.numerator, b.denominator
    scale = 10**6
    # 2 sqrt(p/q) = sqrt(4 p q) / q
    return Fraction(isqrt(4 * p * q * scale * scale) + 1, q * scale)


@dataclass(frozen=True)
class HeilmannLiebBound:
    B: Fraction
    lo: Fraction
    hi: Fraction

    def __iter__(self):
        return iter((self.B, self.lo, self.hi))


def heilmann_lieb_b(g: WeightedGraph) -> Fraction:
    """The constant B: largest total weight at a vertex after dropping its
    lightest incident pair (n >= 3)."""
    n = g.n
    if n <= 1:
        return Fraction(0)
    if n == 2:
        u, v = g.vertices
        return -g.weight(u, v) / 4
    best = Fraction(0)
    for j in g.vertices:
        others = [-g.weight(j, k) for k in g.vertices if k != j]
        # n - 2 of the n - 1 others: drop the smallest
        best = max(best, sum(others) - min(others))
    return best


def heilmann_lieb_b_bruteforce(g: WeightedGraph) -> Fraction:
    """Same constant by enumerating the (n-2)-subsets; the oracle for the above."""
    n = g.n
    if n <= 2:
        return heilmann_lieb_b(g)
    best = Fraction(0)
    for j in g.vertices:
        rest = [k for k in g.vertices if k != j]
        for subset in combinations(rest, n - 2):
            best = max(best, sum(-g.weight(j, k) for k in subset))
    return best


def heilmann_lieb_bound(g: WeightedGraph) -> HeilmannLiebBound:
    """Rational bracket containing every root of mu(G)."""
    b = heilmann_lieb_b(g)
    if g.n == 0:
        return HeilmannLiebBound(b, Fraction(0), Fraction(0))
    offsets = [g.offset(v) for v in g.vertices]
    width = _ceil_two_sqrt(b) if b else Fraction(0)
    return HeilmannLiebBound(b, min(offsets) - width, max(offsets) + width)


def roots(g: WeightedGraph) -> list[AlgebraicNumber]:
    """Distinct roots of mu(G), ascending, isolated inside the bracket."""
    hit = g._root._cache.setdefault("roots", {}).get(g._mask)
    if hit is None:
        mu = matching_polynomial(g)
        if mu.degree < 1:
            hit = []
        else:
            bound = heilmann_lieb_bound(g)
            hit = isolate_roots(mu, (bound.lo, bound.hi))
        g._root._cache["roots"][g._mask] = hit
    return hit


def roots_with_multiplicity(g: WeightedGraph) -> list[tuple[AlgebraicNumber, int]]:
    mu = matching_polynomial(g)
    return [(t, multiplicity_at(mu, t)) for t in roots(g)]


def real_rootedness_check(g: WeightedGraph) -> Verdict:
    """All n roots are real and inside the bracket.

    Roots are isolated from a Cauchy bound here, independent of the bracket.
    """
    mu = matching_polynomial(g)
    if g.n == 0:
        return verdict("real-rootedness", True)
    found = isolate_roots(mu)
    total = sum(multiplicity_at(mu, t) for t in found)
    bound = heilmann_lieb_bound(g)
    outside = [str(t) for t in found if compare(t, bound.lo) < 0 or compare(t, bound.hi) > 0]
    return verdict(
        "real-rootedness",
        total == g.n and not outside,
        multiplicity_sum=total,
        n=g.n,
        outside_bracket=outside,
    )


def _between(ts: Sequence[AlgebraicNumber], a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    return any(compare_algebraic(t, a) >= 0 and compare_algebraic(t, b) <= 0 for t in ts)


def interlacing_check(g: WeightedGraph, i: int) -> Verdict:
    """Roots of mu(G) and mu(G - i) interlace, and multiplicities differ by <= 1."""
    mu = matching_polynomial(g)
    mi = mu_minus(g, i)
    rs = roots(g)
    ri = isolate_roots(mi) if mi.degree >= 1 else []
    problems = []
    for a, b in zip(rs, rs[1:]):
        if not _between(ri, a, b):
            problems.append({"no_root_of_deleted_between": [str(a), str(b)]})
    for a, b in zip(ri, ri[1:]):
        if not _between(rs, a, b):
            problems.append({"no_root_of_graph_between": [str(a), str(b)]})
    for t in rs + ri:
        if abs(multiplicity_at(mu, t) - multiplicity_at(mi, t)) > 1:
            problems.append({"multiplicity_gap_at": str(t)})
    return verdict("interlacing", not problems, vertex=i, problems=problems)
