"""Pure-Python subset recurrence, used when the compiled kernel is absent.

Vertices are positions ``0..n-1``; ``neg_r[v]`` is ``-r_v`` and ``lam[v][w]``
the edge weight, all already scaled to integers.  A mask selects the
surviving vertices and the pivot is always its lowest set bit.
"""

from __future__ import annotations


def subset_table(n, neg_r, lam):
    """Coefficient lists for every mask in ``0 .. 2**n - 1``."""
    adj = [sum(1 << w for w in range(n) if lam[v][w]) for v in range(n)]
    table = [None] * (1 << n)
    table[0] = [1]
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        table[mask] = _step(v, rest, neg_r, lam, adj, table.__getitem__)
    return table


def _step(v, rest, neg_r, lam, adj, lookup):
    base = lookup(rest)
    out = [0] + list(base)
    c = neg_r[v]
    if c:
        for k, b in enumerate(base):
            out[k] += c * b
    nbrs = rest & adj[v]
    while nbrs:
        low = nbrs & -nbrs
        w = low.bit_length() - 1
        nbrs ^= low
        sub = lookup(rest ^ low)
        weight = lam[v][w]
        for k, b in enumerate(sub):
            out[k] += weight * b
    return out


class LazyTable:
    """Top-down memoized recurrence; only visits masks that are asked for."""

    def __init__(self, n, neg_r, lam):
        self.n = n
        self.neg_r = neg_r
        self.lam = lam
        self.adj = [sum(1 << w for w in range(n) if lam[v][w]) for v in range(n)]
        self.memo = {0: [1]}

    def __call__(self, mask):
        memo = self.memo
        if mask in memo:
            return memo[mask]
        # explicit stack: recursion depth would reach n
        pending = [mask]
        while pending:
            m = pending[-1]
            if m in memo:
                pending.pop()
                continue
            v = (m & -m).bit_length() - 1
            rest = m ^ (1 << v)
            missing = [rest] if rest not in memo else []
            nbrs = rest & self.adj[v]
            while nbrs:
                low = nbrs & -nbrs
                nbrs ^= low
                if rest ^ low not in memo:
                    missing.append(rest ^ low)
            if missing:
                pending.extend(missing)
                continue
            pending.pop()
            memo[m] = _step(v, rest, self.neg_r, self.lam, self.adj, memo.__getitem__)
        return memo[mask]
