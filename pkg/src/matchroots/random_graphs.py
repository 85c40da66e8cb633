"""Reproducible random instances from a 64-bit xorshift* generator."""

from __future__ import annotations

from fractions import Fraction

from .graph import WeightedGraph

_MASK = (1 << 64) - 1


class XorShift64Star:
    """xorshift64* (Vigna); a zero seed is remapped since the state must be non-zero."""

    def __init__(self, seed: int):
        self.state = (seed & _MASK) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & _MASK

    def below(self, m: int) -> int:
        """Uniform integer in [0, m) by rejection."""
        if m <= 0:
            raise ValueError("m must be positive")
        limit = (1 << 64) - (1 << 64) % m
        while True:
            v = self.next_u64()
            if v < limit:
                return v % m

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def chance(self, p: Fraction) -> bool:
        """True with probability p, decided exactly on 53 random bits."""
        return Fraction(self.next_u64() >> 11, 1 << 53) < p


def _rational_in(rng: XorShift64Star, lo: Fraction, hi: Fraction, max_den: int = 8) -> Fraction:
    """Pick a denominator in 1..max_den, then a numerator so the value lands in [lo, hi]."""
    while True:
        q = rng.integer(1, max_den)
        p_lo = -((-lo * q).__floor__())
        p_hi = (hi * q).__floor__()
        if p_lo <= p_hi:
            return Fraction(rng.integer(p_lo, p_hi), q)


def random_graph(n: int, density: object = Fraction(1, 2), seed: int = 0, weighted: bool = False) -> WeightedGraph:
    """Each pair is an edge with probability ``density``.

    Unit instances use r = 0 and lambda = -1.  Weighted instances draw r in
    [-2, 2] and lambda in [-3, -1/3], both with denominators at most 8.
    """
    if not 0 <= n <= 16:
        raise ValueError("n must be in 0..16")
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ValueError("density must lie in [0, 1]")
    rng = XorShift64Star(seed)
    offsets = {}
    for v in range(1, n + 1):
        offsets[v] = _rational_in(rng, Fraction(-2), Fraction(2)) if weighted else Fraction(0)
    edges = {}
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.chance(density):
                edges[(u, v)] = _rational_in(rng, Fraction(-3), Fraction(-1, 3)) if weighted else Fraction(-1)
    return WeightedGraph(offsets, edges)


def random_connected_graph(n: int, density: object, seed: int, weighted: bool = False) -> WeightedGraph:
    """First connected graph drawn from seeds ``seed, seed + 1, ...``."""
    k = seed
    while True:
        g = random_graph(n, density, k, weighted)
        if g.is_connected():
            return g
        k += 1
