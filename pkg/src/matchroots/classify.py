"""Sign classes of graph continued fractions at a real time theta.

Vertex ``i`` is classified by the value of ``mu(G) / mu(G - i)`` at theta:
negative, zero, positive or infinite.  Zero and infinity are read off root
multiplicities; the sign of a finite non-zero value is read just right of
theta, after narrowing theta's interval so that neither polynomial has
another root inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

from .exact import AlgebraicNumber, Polynomial, multiplicity_at, refine
from .graph import WeightedGraph, components, delete_vertices, frontier, induced_subgraph
from .matchpoly import (
    CONTRACTION_FINITE,
    CONTRACTION_MINUS_INF,
    CONTRACTION_ZERO,
    PreconditionError,
    Verdict,
    contraction_class_at,
    contraction_weight,
    matching_polynomial,
    mu_minus,
    verdict,
)

SUBSET_ENUMERATION_MAX = 20


class SignClass(Enum):
    NEG = "neg"
    ZERO = "zero"
    POS = "pos"
    INF = "inf"

    @property
    def symbol(self) -> str:
        return {"neg": "-", "zero": "0", "pos": "+", "inf": "inf"}[self.value]

    @property
    def finite(self) -> bool:
        return self is not SignClass.INF

    def __str__(self) -> str:
        return self.symbol


class InvariantViolation(AssertionError):
    """A law that must hold on every instance failed."""


def ratio_class(num: Polynomial, den: Polynomial, theta: AlgebraicNumber) -> SignClass:
    """Class of the limit of ``num / den`` at ``theta``."""
    if num.is_zero():
        return SignClass.ZERO
    a = multiplicity_at(num, theta)
    b = multiplicity_at(den, theta)
    if a > b:
        return SignClass.ZERO
    if a < b:
        return SignClass.INF
    narrowed = refine(refine(theta, num), den)
    right = narrowed.hi
    return SignClass.POS if num.sign_at(right) * den.sign_at(right) > 0 else SignClass.NEG


def ratio_sign(num: Polynomial, den: Polynomial, theta: AlgebraicNumber) -> int:
    """Sign of a finite limit of ``num / den`` at ``theta``."""
    cls = ratio_class(num, den, theta)
    if cls is SignClass.INF:
        raise InvariantViolation("expected a finite limit")
    return {SignClass.NEG: -1, SignClass.ZERO: 0, SignClass.POS: 1}[cls]


def alpha_parts(g: WeightedGraph, i: int) -> tuple[Polynomial, Polynomial]:
    return matching_polynomial(g), mu_minus(g, i)


def alpha_class(g: WeightedGraph, i: int, theta: AlgebraicNumber) -> SignClass:
    """Class of ``alpha_i(G)(theta)``."""
    if i not in g:
        raise PreconditionError(f"vertex {i} not in graph")
    memo = g._root._cache.setdefault("alpha_class", {})
    key = (g._mask, i, theta)
    hit = memo.get(key)
    if hit is not None:
        return hit
    mu, mi = alpha_parts(g, i)
    m = multiplicity_at(mu, theta)
    k = multiplicity_at(mi, theta)
    if k == m - 1:
        cls = SignClass.ZERO
    elif k == m + 1:
        cls = SignClass.INF
    elif k == m:
        cls = ratio_class(mu, mi, theta)
    else:
        raise InvariantViolation(
            f"interlacing breach at vertex {i}: multiplicities {m} and {k} differ by more than 1"
        )
    memo[key] = cls
    return cls


def classes(g: WeightedGraph, theta: AlgebraicNumber) -> dict[int, SignClass]:
    return {v: alpha_class(g, v, theta) for v in g.vertices}


def sign_change_at(g: WeightedGraph, i: int, theta: AlgebraicNumber) -> tuple[SignClass, SignClass]:
    """Classes of ``alpha_i(G)`` at rational points just left and right of theta."""
    mu, mi = alpha_parts(g, i)
    narrowed = refine(refine(theta, mu), mi)
    out = []
    for x in (narrowed.lo, narrowed.hi):
        s = mu.sign_at(x) * mi.sign_at(x)
        out.append(SignClass.POS if s > 0 else SignClass.NEG)
    return out[0], out[1]


# -- value comparisons between two continued fractions --------------------------------

Fraction2 = tuple[Polynomial, Polynomial]


def values_equal(f: Fraction2, h: Fraction2, theta: AlgebraicNumber) -> bool:
    """Whether ``f`` and ``h`` take the same value at theta, infinity included."""
    cf, ch = ratio_class(*f, theta), ratio_class(*h, theta)
    if cf != ch:
        return False
    if cf in (SignClass.ZERO, SignClass.INF):
        return True
    cross = f[0] * h[1] - h[0] * f[1]
    if cross.is_zero():
        return True
    # (f - h) = cross / (f_den * h_den) tends to 0 iff cross vanishes to higher order
    return multiplicity_at(cross, theta) > multiplicity_at(f[1], theta) + multiplicity_at(h[1], theta)


def compare_values(f: Fraction2, h: Fraction2, theta: AlgebraicNumber) -> int:
    """Sign of ``f(theta) - h(theta)`` for two finite values."""
    cross = f[0] * h[1] - h[0] * f[1]
    if cross.is_zero():
        return 0
    return ratio_sign(cross, f[1] * h[1], theta)


# -- the decomposition -----------------------------------------------------------

@dataclass(frozen=True)
class ThetaDecomposition:
    theta: AlgebraicNumber
    classes: Mapping[int, SignClass]
    D: frozenset[int]
    A: frozenset[int]
    N_minus: frozenset[int]
    N_plus: frozenset[int]
    P: frozenset[int]
    critical_components: tuple[frozenset[int], ...]
    m: int

    @property
    def infinite(self) -> frozenset[int]:
        return frozenset(v for v, c in self.classes.items() if c is SignClass.INF)

    def violations(self) -> list[str]:
        out = []
        if not self.A <= self.infinite:
            out.append("frontier of the zero set is not inside the infinity set")
        parts = [self.D, self.A, self.N_minus | self.N_plus, self.P]
        union = frozenset().union(*parts)
        if union != frozenset(self.classes) or sum(len(p) for p in parts) != len(self.classes):
            out.append("D, A, N, P do not partition the vertex set")
        if self.m != len(self.critical_components) - len(self.A):
            out.append("multiplicity differs from critical components minus frontier size")
        return out

    def to_json(self) -> dict:
        return {
            "theta": self.theta.to_json(),
            "m": self.m,
            "classes": {str(v): c.value for v, c in sorted(self.classes.items())},
            "D": sorted(self.D),
            "A": sorted(self.A),
            "N_minus": sorted(self.N_minus),
            "N_plus": sorted(self.N_plus),
            "P": sorted(self.P),
            "critical_components": [sorted(c) for c in self.critical_components],
        }


def decompose(g: WeightedGraph, theta: AlgebraicNumber, *, verify: bool = True) -> ThetaDecomposition:
    """Classify every vertex and assemble D, A, N-, N+, P."""
    if g.n == 0:
        raise PreconditionError("graph is empty")
    cls = classes(g, theta)
    d = frozenset(v for v, c in cls.items() if c is SignClass.ZERO)
    a = frontier(g, d)
    dec = ThetaDecomposition(
        theta=theta,
        classes=cls,
        D=d,
        A=a,
        N_minus=frozenset(v for v, c in cls.items() if c is SignClass.NEG),
        N_plus=frozenset(v for v, c in cls.items() if c is SignClass.POS),
        P=frozenset(v for v, c in cls.items() if c is SignClass.INF) - a,
        critical_components=tuple(components(g, d)),
        m=multiplicity_at(matching_polynomial(g), theta),
    )
    if verify:
        problems = dec.violations()
        if problems:
            raise InvariantViolation("; ".join(problems))
    return dec


# -- structure theorems -----------------------------------------------------------------

def _alpha_after_delete(g: WeightedGraph, i: int, j: int) -> Fraction2:
    """alpha_j(G - i) as (numerator, denominator)."""
    return mu_minus(g, i), mu_minus(g, i, j)


def stability_check(g: WeightedGraph, theta: AlgebraicNumber, i: int) -> Verdict:
    """Deleting a frontier vertex keeps every other vertex's class and value."""
    dec = decompose(g, theta, verify=False)
    if i not in dec.A:
        raise PreconditionError("vertex not in frontier of zero set")
    h = delete_vertices(g, [i])
    class_mismatch = []
    value_mismatch = []
    for j in g.vertices:
        if j == i:
            continue
        before = dec.classes[j]
        after = alpha_class(h, j, theta)
        if before != after:
            class_mismatch.append({"vertex": j, "in_graph": before.value, "after_delete": after.value})
            continue
        if before.finite and not values_equal(_alpha_after_delete(g, i, j), alpha_parts(g, j), theta):
            value_mismatch.append(j)
    dec_h = decompose(h, theta, verify=False)
    sets_ok = (
        dec_h.D == dec.D
        and dec_h.N_minus == dec.N_minus
        and dec_h.N_plus == dec.N_plus
        and dec_h.infinite == dec.infinite - {i}
        and dec_h.A == dec.A - {i}
        and dec_h.P == dec.P
    )
    return verdict(
        "stability",
        not class_mismatch and not value_mismatch and sets_ok,
        vertex=i,
        class_mismatch=class_mismatch,
        value_mismatch=value_mismatch,
        set_equalities=sets_ok,
    )


def _critical_neighbor_counts_ok(
    g_adj: WeightedGraph, frontier_set: Iterable[int], comps: Iterable[frozenset[int]]
) -> tuple[bool, list[int] | None]:
    """For every non-empty S in the frontier: at least |S|+1 components touch S."""
    a = sorted(frontier_set)
    if len(a) > SUBSET_ENUMERATION_MAX:
        raise PreconditionError(f"frontier too large for subset enumeration ({len(a)})")
    comps = list(comps)
    touching = {}
    for v in a:
        nbrs = set(g_adj.neighbors(v))
        touching[v] = frozenset(k for k, c in enumerate(comps) if nbrs & c)
    for size in range(1, len(a) + 1):
        for s in combinations(a, size):
            hit = frozenset().union(*(touching[v] for v in s))
            if len(hit) < size + 1:
                return False, list(s)
    return True, None


def matched_condition_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    """Every non-empty S inside the frontier touches at least |S|+1 critical components."""
    dec = decompose(g, theta, verify=False)
    if dec.m == 0:
        raise PreconditionError("theta is not a root of the matching polynomial")
    ok, witness = _critical_neighbor_counts_ok(g, dec.A, dec.critical_components)
    return verdict("matched-condition", ok, frontier=sorted(dec.A), failing_subset=witness)


def stability2_check(
    g: WeightedGraph,
    theta: AlgebraicNumber,
    j: int,
    r: object,
    lambdas: Mapping[int, object],
) -> Verdict:
    """Reweighting a frontier vertex keeps every continued fraction's value,
    provided the critical components stay attached to the frontier."""
    dec = decompose(g, theta, verify=False)
    if j not in dec.A:
        raise PreconditionError("vertex not in frontier of zero set")
    g2 = g.with_vertex_weights(j, r, lambdas)
    ok, witness = _critical_neighbor_counts_ok(g2, dec.A, dec.critical_components)
    if not ok:
        return Verdict("stability-reweighted", "hypothesis-not-satisfied", {"vertex": j, "failing_subset": witness})
    mismatch = []
    for v in g.vertices:
        if not values_equal(alpha_parts(g2, v), alpha_parts(g, v), theta):
            mismatch.append(v)
    return verdict("stability-reweighted", not mismatch, vertex=j, mismatch=mismatch)


def gallai_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    """A connected graph whose vertices are all in the zero class has theta as a simple root."""
    if g.n == 0 or not g.is_connected():
        raise PreconditionError("graph is not connected")
    dec = decompose(g, theta, verify=False)
    if dec.D != frozenset(g.vertices):
        raise PreconditionError("graph is not critical at theta")
    return verdict("gallai-simple-root", dec.m == 1, m=dec.m)


def multiplicity_formula_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    dec = decompose(g, theta, verify=False)
    expected = len(dec.critical_components) - len(dec.A)
    return verdict("multiplicity-formula", dec.m == expected, m=dec.m,
                   components=len(dec.critical_components), frontier=len(dec.A))


def frontier_inside_infinity_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    dec = decompose(g, theta, verify=False)
    return verdict("frontier-inside-infinity", dec.A <= dec.infinite, outside=sorted(dec.A - dec.infinite))


def critical_structure_check(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    """Critical components are critical on their own, with theta a simple root,
    and no vertex of the N, P part is essential inside that part."""
    dec = decompose(g, theta, verify=False)
    bad_components = []
    for comp in dec.critical_components:
        h = induced_subgraph(g, comp)
        if any(alpha_class(h, v, theta) is not SignClass.ZERO for v in comp):
            bad_components.append({"component": sorted(comp), "reason": "not critical"})
        elif multiplicity_at(matching_polynomial(h), theta) != 1:
            bad_components.append({"component": sorted(comp), "reason": "root not simple"})
    rest = dec.N_minus | dec.N_plus | dec.P
    essential_in_rest = []
    if rest:
        h = induced_subgraph(g, rest)
        essential_in_rest = [v for v in sorted(rest) if alpha_class(h, v, theta) is SignClass.ZERO]
    return verdict(
        "critical-structure",
        not bad_components and not essential_in_rest,
        bad_components=bad_components,
        essential_in_rest=essential_in_rest,
    )


# -- pairwise sign table ------------------------------------------------------------------

def sign_table_check(g: WeightedGraph, theta: AlgebraicNumber, i: int, j: int, *, via_paths: bool = False) -> Verdict:
    """Check the implications tying the contraction weight's class at theta to
    the classes of i and j in G, G - j and G - i."""
    if i == j:
        raise PreconditionError("vertices must be distinct")
    w = contraction_weight(g, i, j, via_paths=via_paths)
    lam = contraction_class_at(w, theta)
    gi = delete_vertices(g, [i])
    gj = delete_vertices(g, [j])
    c = {
        "i_G": alpha_class(g, i, theta),
        "j_G": alpha_class(g, j, theta),
        "i_Gj": alpha_class(gj, i, theta),
        "j_Gi": alpha_class(gi, j, theta),
    }
    a_i_g = alpha_parts(g, i)
    a_j_g = alpha_parts(g, j)
    a_i_gj = _alpha_after_delete(g, j, i)
    a_j_gi = _alpha_after_delete(g, i, j)
    failures: list[str] = []
    applied: list[str] = []
    notes: list[str] = []
    N, Z, P, INF = SignClass.NEG, SignClass.ZERO, SignClass.POS, SignClass.INF

    if lam == CONTRACTION_MINUS_INF:
        applied.append("infinite-weight-forces-poles")
        if not (c["i_Gj"] is INF and c["j_Gi"] is INF):
            failures.append("infinite-weight-forces-poles")
        applied.append("infinite-weight-same-class")
        if c["i_G"] != c["j_G"]:
            failures.append("infinite-weight-same-class")
    elif lam == CONTRACTION_ZERO:
        applied.append("zero-weight-decouples")
        if not (values_equal(a_i_g, a_i_gj, theta) and values_equal(a_j_g, a_j_gi, theta)):
            failures.append("zero-weight-decouples")
    else:
        assert lam == CONTRACTION_FINITE
        # the implications are stated for an ordered pair; apply both orders
        for (x_g, y_g, x_del, y_del, ax_g, ay_g, ax_del, ay_del, tag) in (
            (c["i_G"], c["j_G"], c["i_Gj"], c["j_Gi"], a_i_g, a_j_g, a_i_gj, a_j_gi, "ij"),
            (c["j_G"], c["i_G"], c["j_Gi"], c["i_Gj"], a_j_g, a_i_g, a_j_gi, a_i_gj, "ji"),
        ):
            pair = (x_del, y_del)
            if pair in ((P, P), (N, N)):
                applied.append(f"same-signs-agree[{tag}]")
                if not (x_g == y_g and x_g in (N, Z, P)):
                    failures.append(f"same-signs-agree[{tag}]")
            elif pair == (P, N):
                applied.append(f"opposite-signs-kept[{tag}]")
                if not (x_g is P and y_g is N):
                    failures.append(f"opposite-signs-kept[{tag}]")
            elif pair == (Z, Z):
                applied.append(f"double-zero-poles[{tag}]")
                if not (x_g is INF and y_g is INF):
                    failures.append(f"double-zero-poles[{tag}]")
            elif pair == (Z, P):
                applied.append(f"zero-positive[{tag}]")
                if not (x_g is N and y_g is INF):
                    failures.append(f"zero-positive[{tag}]")
            elif pair == (Z, N):
                applied.append(f"zero-negative[{tag}]")
                if not (x_g is P and y_g is INF):
                    failures.append(f"zero-negative[{tag}]")
            if x_del is INF:
                applied.append(f"pole-preserves-partner[{tag}]")
                if not (values_equal(ay_del, ay_g, theta) and x_g is INF):
                    failures.append(f"pole-preserves-partner[{tag}]")
            # strict orderings
            if x_del is P and x_g is P and y_del is P and y_g is P:
                applied.append(f"positive-ordering[{tag}]")
                if not (compare_values(ax_g, ax_del, theta) < 0 and compare_values(ay_g, ay_del, theta) < 0):
                    failures.append(f"positive-ordering[{tag}]")
            elif x_del is N and x_g is N and y_del is N and y_g is N:
                applied.append(f"negative-ordering[{tag}]")
                if not (compare_values(ax_del, ax_g, theta) < 0 and compare_values(ay_del, ay_g, theta) < 0):
                    failures.append(f"negative-ordering[{tag}]")
            elif x_del is P and x_g is P and y_del is N and y_g is N:
                applied.append(f"mixed-ordering[{tag}]")
                if not (compare_values(ax_del, ax_g, theta) < 0 and compare_values(ay_g, ay_del, theta) < 0):
                    failures.append(f"mixed-ordering[{tag}]")
        if not any("ordering" in a for a in applied):
            notes.append("case not covered by the strict-ordering statements")
    return verdict(
        "sign-table",
        not failures,
        i=i,
        j=j,
        contraction=lam,
        classes={k: v.value for k, v in c.items()},
        applied=sorted(set(applied)),
        failures=failures,
        notes=notes,
    )


def internal_frontier_checks(g: WeightedGraph, theta: AlgebraicNumber) -> Verdict:
    """Zero set non-empty iff theta is a root; poles come from zero neighbors
    after deletion; the frontier sits in the infinity set; deleting a frontier
    vertex keeps the finite non-zero classes and values."""
    dec = decompose(g, theta, verify=False)
    failures = []
    if (dec.m >= 1) != bool(dec.D):
        failures.append("zero-set-iff-root")
    for i in g.vertices:
        h = delete_vertices(g, [i])
        has_zero_neighbor = any(alpha_class(h, j, theta) is SignClass.ZERO for j in g.neighbors(i))
        if (dec.classes[i] is SignClass.INF) != has_zero_neighbor:
            failures.append(f"pole-iff-zero-neighbor[{i}]")
    if not dec.A <= dec.infinite:
        failures.append("frontier-inside-infinity")
    for i in sorted(dec.A):
        h = delete_vertices(g, [i])
        for j in g.vertices:
            if j == i or dec.classes[j] not in (SignClass.NEG, SignClass.POS):
                continue
            if alpha_class(h, j, theta) != dec.classes[j] or not values_equal(
                _alpha_after_delete(g, i, j), alpha_parts(g, j), theta
            ):
                failures.append(f"frontier-delete-keeps-signs[{i},{j}]")
    return verdict("internal-frontier", not failures, failures=failures)
