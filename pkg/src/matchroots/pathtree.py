"""Rooted path trees, sign annotations along them, and sign counts along paths.

The path tree of G at i has one node per simple path starting at i; a node's
children extend its path by one vertex.  The subtree below the path
``i_1 .. i_k`` depends only on the vertex set used and the endpoint, so the
tree's matching polynomials are memoized on that pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import InvariantViolation, SignClass, alpha_class
from .exact import (
    AlgebraicNumber,
    Polynomial,
    as_rational,
    compare,
    format_rational,
    gcd_poly,
    isolate_roots,
    multiplicity_at,
)
from .graph import WeightedGraph, delete_vertices, is_path
from .matchpoly import PreconditionError, Verdict, matching_polynomial, mu_minus, roots, verdict

PATH_TREE_MAX_NODES = 10**5
# above this many nodes the identity is checked on the reduced ratio
FULL_PRODUCT_MAX_NODES = 400


class PathTreeTooLarge(PreconditionError):
    pass


@dataclass
class PathTree:
    """Nodes are paths; ``parent[k]`` is the index of node k's longest proper prefix."""

    graph: WeightedGraph
    paths: list[tuple[int, ...]]
    parent: list[int]
    children: list[list[int]]

    @property
    def root(self) -> tuple[int, ...]:
        return self.paths[0]

    def __len__(self) -> int:
        return len(self.paths)

    def depth(self, k: int) -> int:
        return len(self.paths[k]) - 1

    def as_graph(self) -> WeightedGraph:
        """The tree as a weighted graph on node ids 1..N (node k has id k+1)."""
        g = self.graph
        r = {k + 1: g.offset(p[-1]) for k, p in enumerate(self.paths)}
        edges = {
            (self.parent[k] + 1, k + 1): g.weight(p[-2], p[-1])
            for k, p in enumerate(self.paths)
            if k > 0
        }
        return WeightedGraph(r, edges)


def build_path_tree(g: WeightedGraph, i: int, *, max_nodes: int = PATH_TREE_MAX_NODES) -> PathTree:
    if i not in g:
        raise PreconditionError(f"vertex {i} not in graph")
    paths: list[tuple[int, ...]] = [(i,)]
    parent = [-1]
    children: list[list[int]] = [[]]
    stack = [0]
    while stack:
        k = stack.pop()
        path = paths[k]
        used = set(path)
        # push in reverse so the lowest neighbor is expanded first
        new = []
        for w in g.neighbors(path[-1]):
            if w in used:
                continue
            if len(paths) >= max_nodes:
                raise PathTreeTooLarge(f"path tree exceeds {max_nodes} nodes")
            paths.append(path + (w,))
            parent.append(k)
            children.append([])
            children[k].append(len(paths) - 1)
            new.append(len(paths) - 1)
        stack.extend(reversed(new))
    return PathTree(g, paths, parent, children)


def count_paths_from(g: WeightedGraph, i: int) -> int:
    """Number of simple paths starting at i (the path tree's node count)."""
    memo: dict[tuple[frozenset[int], int], int] = {}

    def walk(used: frozenset[int], end: int) -> int:
        key = (used, end)
        hit = memo.get(key)
        if hit is None:
            hit = 1 + sum(walk(used | {w}, w) for w in g.neighbors(end) if w not in used)
            memo[key] = hit
        return hit

    return walk(frozenset([i]), i)


# -- matching polynomials of the tree ---------------------------------------------------

def tree_polynomials(g: WeightedGraph, i: int) -> tuple[Polynomial, Polynomial]:
    """``(mu(T), mu(T - root))`` for the path tree T of G at i, without building T.

    For a rooted tree with root v and child subtrees T_c,
    ``mu(T - v) = prod mu(T_c)`` and
    ``mu(T) = (x - r_v) prod mu(T_c) + sum_c lambda_vc mu(T_c - c) prod_{c' != c} mu(T_c')``.
    """
    x = Polynomial.x()
    memo: dict[tuple[frozenset[int], int], tuple[Polynomial, Polynomial]] = {}

    def node(used: frozenset[int], end: int) -> tuple[Polynomial, Polynomial]:
        key = (used, end)
        hit = memo.get(key)
        if hit is not None:
            return hit
        kids = [w for w in g.neighbors(end) if w not in used]
        subs = [node(used | {w}, w) for w in kids]
        # prefix[k] * suffix[k + 1] is the product of all full subtrees but the k-th
        prefix = [Polynomial.constant(1)]
        for full, _ in subs:
            prefix.append(prefix[-1] * full)
        suffix = [Polynomial.constant(1)]
        for full, _ in reversed(subs):
            suffix.append(suffix[-1] * full)
        suffix.reverse()
        without_root = prefix[-1]
        full = (x - g.offset(end)) * without_root
        for k, (w, (_, minus_child)) in enumerate(zip(kids, subs)):
            full = full + (prefix[k] * suffix[k + 1] * minus_child).scale(g.weight(end, w))
        memo[key] = (full, without_root)
        return memo[key]

    return node(frozenset([i]), i)


def tree_ratio(g: WeightedGraph, i: int) -> tuple[Polynomial, Polynomial]:
    """``mu(T) / mu(T - root)`` in lowest terms with a monic denominator.

    Uses ``mu(T)/mu(T - v) = x - r_v + sum_c lambda_vc mu(T_c - c)/mu(T_c)``
    with every intermediate ratio reduced, so degrees stay at most n where
    the full products grow with the tree.
    """
    x = Polynomial.x()
    memo: dict[tuple[frozenset[int], int], tuple[Polynomial, Polynomial]] = {}

    def node(used: frozenset[int], end: int) -> tuple[Polynomial, Polynomial]:
        key = (used, end)
        hit = memo.get(key)
        if hit is not None:
            return hit
        num, den = x - g.offset(end), Polynomial.constant(1)
        for w in g.neighbors(end):
            if w in used:
                continue
            # the child's ratio is cnum / cden, so add lambda * cden / cnum
            cnum, cden = node(used | {w}, w)
            num = num * cnum + (den * cden).scale(g.weight(end, w))
            den = den * cnum
            d = gcd_poly(num, den)
            num, den = num.exact_div(d), den.exact_div(d)
        lead = Fraction(den.coeffs[-1])
        memo[key] = (num.scale(1 / lead), den.scale(1 / lead))
        return memo[key]

    return node(frozenset([i]), i)


def godsil_identity_check(g: WeightedGraph, i: int, *, max_nodes: int = PATH_TREE_MAX_NODES) -> Verdict:
    """mu(G) mu(T - root) == mu(G - i) mu(T) for the path tree T at i.

    Small trees are checked on the full products; larger ones on the reduced
    ratio ``mu(T)/mu(T - root)``, which is equivalent since both denominators
    are monic and hence non-zero.
    """
    nodes = count_paths_from(g, i)
    if nodes > max_nodes:
        raise PathTreeTooLarge(f"path tree has {nodes} nodes, limit {max_nodes}")
    if nodes <= FULL_PRODUCT_MAX_NODES:
        mu_t, mu_t_root = tree_polynomials(g, i)
        form = "product"
    else:
        mu_t, mu_t_root = tree_ratio(g, i)
        form = "ratio"
    residual = matching_polynomial(g) * mu_t_root - mu_minus(g, i) * mu_t
    return verdict("path-tree-identity", residual.is_zero(), vertex=i, nodes=nodes, form=form,
                   residual=None if residual.is_zero() else residual.to_json())


# -- sign annotations -------------------------------------------------------------------------

@dataclass
class SignAnnotation:
    tree: PathTree
    theta: AlgebraicNumber
    classes: list[SignClass] = field(default_factory=list)

    def render(self) -> str:
        return render_tree(self.tree, self.classes)

    def to_json(self) -> dict:
        return tree_to_json(self.tree, self.classes)


def node_class(g: WeightedGraph, path: Sequence[int], theta: AlgebraicNumber) -> SignClass:
    """Class of the endpoint's continued fraction once the rest of the path is deleted."""
    return alpha_class(delete_vertices(g, path[:-1]), path[-1], theta)


def annotate_signs(g: WeightedGraph, i: int, theta: AlgebraicNumber, *, tree: PathTree | None = None) -> SignAnnotation:
    tree = tree if tree is not None else build_path_tree(g, i)
    cls = [node_class(g, p, theta) for p in tree.paths]
    for k in range(1, len(tree)):
        if cls[k] is SignClass.ZERO and cls[tree.parent[k]] is not SignClass.INF:
            raise InvariantViolation(
                f"node {'-'.join(map(str, tree.paths[k]))} is zero but its parent is {cls[tree.parent[k]].value}"
            )
    return SignAnnotation(tree, theta, cls)


def _label(path: Sequence[int]) -> str:
    return "-".join(str(v) for v in path)


def render_tree(tree: PathTree, classes: Sequence[SignClass] | None = None) -> str:
    lines = []
    for k in _preorder(tree):
        line = "  " * tree.depth(k) + _label(tree.paths[k])
        if classes is not None:
            line += " " + classes[k].symbol
        lines.append(line)
    return "\n".join(lines)


def _preorder(tree: PathTree) -> list[int]:
    order, stack = [], [0]
    while stack:
        k = stack.pop()
        order.append(k)
        stack.extend(reversed(tree.children[k]))
    return order


def tree_to_json(tree: PathTree, classes: Sequence[SignClass] | None = None, k: int = 0) -> dict:
    # iterative to survive deep trees
    built: dict[int, dict] = {}
    for idx in reversed(_preorder(tree)):
        item: dict = {"path": list(tree.paths[idx])}
        if classes is not None:
            item["class"] = classes[idx].value
        item["children"] = [built.pop(c) for c in tree.children[idx]]
        built[idx] = item
    return built[k]


# -- paths at a time theta ----------------------------------------------------------------

def _check_path(g: WeightedGraph, c: Sequence[int]) -> tuple[int, ...]:
    c = tuple(c)
    if not c or not is_path(g, c):
        raise PreconditionError(f"not a path of the graph: {list(c)}")
    return c


def path_multiplicity_drop(g: WeightedGraph, c: Sequence[int], theta: AlgebraicNumber) -> int:
    """m_theta(G) - m_theta(G - c)."""
    c = _check_path(g, c)
    return multiplicity_at(matching_polynomial(g), theta) - multiplicity_at(mu_minus(g, *c), theta)


def zero_path_check(g: WeightedGraph, c: Sequence[int], theta: AlgebraicNumber) -> bool:
    """Whether c is a 0-path at theta.

    Also enforces that the drop never exceeds 1 and that both ends of a
    0-path are in the zero class.
    """
    drop = path_multiplicity_drop(g, c, theta)
    if drop > 1:
        raise InvariantViolation(f"multiplicity drops by {drop} along path {list(c)}")
    if drop == 1:
        for end in {c[0], c[-1]}:
            if alpha_class(g, end, theta) is not SignClass.ZERO:
                raise InvariantViolation(f"end {end} of a 0-path is not in the zero class")
    return drop == 1


def classes_along(g: WeightedGraph, c: Sequence[int], theta: AlgebraicNumber) -> list[SignClass]:
    """Class of ``alpha_{i_k}(G - i_1 .. i_{k-1})`` for each k."""
    return [node_class(g, c[: k + 1], theta) for k in range(len(c))]


def zeros_minus_poles_check(g: WeightedGraph, c: Sequence[int], theta: AlgebraicNumber) -> Verdict:
    """Zeros minus infinities along c, and along its reverse, both equal the multiplicity drop."""
    c = _check_path(g, c)
    drop = path_multiplicity_drop(g, c, theta)
    counts = []
    for seq in (c, c[::-1]):
        cls = classes_along(g, seq, theta)
        counts.append(cls.count(SignClass.ZERO) - cls.count(SignClass.INF))
    return verdict("path-zeros-minus-poles", counts[0] == drop == counts[1],
                   path=list(c), drop=drop, forward=counts[0], reverse=counts[1])


def _roots_below(g: WeightedGraph, theta: Fraction) -> int:
    mu = matching_polynomial(g)
    return sum(multiplicity_at(mu, t) for t in roots(g) if compare(t, theta) < 0)


def _chain_signs(g: WeightedGraph, c: Sequence[int], theta: Fraction) -> list[int]:
    """Signs of mu(G - i_1..i_{k-1})(theta) / mu(G - i_1..i_k)(theta), k = 1..len(c)."""
    values = [matching_polynomial(g)(theta)]
    for k in range(1, len(c) + 1):
        values.append(mu_minus(g, *c[:k])(theta))
    signs = []
    for k in range(len(c)):
        num, den = values[k], values[k + 1]
        if num == 0 or den == 0:
            which = "G" if (k == 0 and num == 0) else "G - " + ",".join(map(str, c[: k + (1 if den == 0 else 0)]))
            raise PreconditionError(
                f"degenerate time {format_rational(theta)}: mu({which}) vanishes"
            )
        signs.append(1 if (num > 0) == (den > 0) else -1)
    return signs


@dataclass(frozen=True)
class SylvesterCount:
    theta: Fraction
    forward: int
    reverse: int
    roots_below: int
    distinct_roots: int
    verdict: Verdict


def sylvester_count(g: WeightedGraph, c: Sequence[int], theta: object) -> SylvesterCount:
    """Positive terms of the ratio chain along a Hamiltonian path and its reverse."""
    theta = as_rational(theta)
    c = _check_path(g, c)
    if len(c) != g.n or set(c) != set(g.vertices):
        raise PreconditionError("path is not Hamiltonian")
    forward = _chain_signs(g, c, theta).count(1)
    reverse = _chain_signs(g, c[::-1], theta).count(1)
    below = _roots_below(g, theta)
    distinct = len(roots(g))
    v = verdict(
        "sylvester",
        forward == reverse == below and distinct == g.n,
        theta=format_rational(theta),
        path=list(c),
        forward=forward,
        reverse=reverse,
        roots_below=below,
        distinct_roots=distinct,
    )
    return SylvesterCount(theta, forward, reverse, below, distinct, v)


def plus_count(g: WeightedGraph, c: Sequence[int], theta: Fraction) -> int:
    """Positive terms along c in the path tree at a non-degenerate rational time."""
    return _chain_signs(g, c, theta).count(1)


def plus_sign_monotonicity_check(g: WeightedGraph, c: Sequence[int], grid: Sequence[object]) -> Verdict:
    """At each non-degenerate grid time, the positive count along c equals
    the root count of mu(G) below it minus that of mu(G - c); across each
    root the count moves by at most +1, and by exactly +1 at 0-paths."""
    c = _check_path(g, c)
    h = delete_vertices(g, c)
    grid = sorted(as_rational(t) for t in grid)
    failures = []
    for t in grid:
        got = plus_count(g, c, t)
        want = _roots_below(g, t) - _roots_below(h, t)
        if got != want:
            failures.append({"theta": format_rational(t), "plus_count": got, "root_difference": want})
    for theta in isolate_roots(matching_polynomial(g) * mu_minus(g, *c)):
        drop = path_multiplicity_drop(g, c, theta)
        if drop > 1:
            failures.append({"theta": str(theta), "drop": drop})
        elif (drop == 1) != zero_path_check(g, c, theta):
            failures.append({"theta": str(theta), "zero_path_mismatch": drop})
    return verdict("path-plus-count", not failures, path=list(c), grid=[format_rational(t) for t in grid],
                   failures=failures)


def _simple_between(lo: Fraction, hi: Fraction, ok) -> Fraction:
    """A rational with small denominator in (lo, hi) accepted by ``ok``."""
    q = 1
    while True:
        p = (lo * q).__floor__() + 1
        while Fraction(p, q) < hi:
            t = Fraction(p, q)
            if ok(t):
                return t
            p += 1
        q *= 2


def sample_times(g: WeightedGraph, avoid: Sequence[Polynomial] = ()) -> list[Fraction]:
    """Rational points between consecutive distinct roots of mu(G) and one
    beyond each end, chosen off the roots of every polynomial in ``avoid``."""
    rs = roots(g)
    polys = [p for p in avoid if p.degree >= 1] + [matching_polynomial(g)]

    def generic(t: Fraction) -> bool:
        return all(f.sign_at(t) != 0 for f in polys)

    if not rs:
        return [_simple_between(Fraction(-1), Fraction(1), generic)]
    pts = [_simple_between(rs[0].lo - 2, rs[0].lo, generic)]
    for a, b in zip(rs, rs[1:]):
        pts.append(_simple_between(
            a.lo, b.hi, lambda t: compare(a, t) < 0 and compare(b, t) > 0 and generic(t)
        ))
    pts.append(_simple_between(rs[-1].hi, rs[-1].hi + 2, generic))
    return pts


def chain_polynomials(g: WeightedGraph, c: Sequence[int]) -> list[Polynomial]:
    """Every polynomial whose sign enters the chains along c and its reverse."""
    out = [matching_polynomial(g)]
    for seq in (c, c[::-1]):
        out.extend(mu_minus(g, *seq[:k]) for k in range(1, len(seq) + 1))
    return out
