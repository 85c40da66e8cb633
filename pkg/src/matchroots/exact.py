"""Exact rational polynomials, Sturm chains and real algebraic numbers.

A :class:`Polynomial` keeps integer numerators over one positive common
denominator, so most arithmetic runs on Python ints instead of
``Fraction`` objects.  Real roots are represented by :class:`AlgebraicNumber`,
a square-free witness together with an isolating interval whose rational
endpoints are never roots of the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

# Above this length products go through Kronecker substitution.
_KRONECKER_MIN = 24


class ExactError(ValueError):
    """Raised for invalid arguments to the exact kernel."""


def as_rational(value: RationalLike) -> Fraction:
    """Parse ``value`` ("p/q", "p", int or Fraction) into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ExactError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                p, q = text.split("/")
                return Fraction(int(p), int(q))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ExactError(f"not a rational: {value!r}") from exc
    raise ExactError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "p" for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2 + 7) // 8
    bits = nbytes * 8
    big_a = 0
    for c in reversed(a):
        big_a = (big_a << bits) + c
    big_b = 0
    for c in reversed(b):
        big_b = (big_b << bits) + c
    size = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    # Bias every digit into [0, 2^bits) so the bytes slice cleanly.
    bias = 0
    for _ in range(size):
        bias = (bias << bits) + half
    raw = (big_a * big_b + bias).to_bytes(size * nbytes + 1, "little")
    out = []
    for k in range(size):
        digit = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little")
        out.append(digit - half)
    return out


def _mul_ints(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _mul_schoolbook(a, b)
    return _mul_kronecker(a, b)


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    ``Polynomial([c0, c1, ...])`` builds ``c0 + c1 x + ...``; coefficients may
    be ints, Fractions or rational strings.  Instances are immutable and
    hashable.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        fracs = [as_rational(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = lcm(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fracs]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        _strip(nums)
        if not nums:
            self._num: tuple[int, ...] = ()
            self._den = 1
        else:
            g = gcd(_content(nums), den)
            if g > 1:
                nums = [c // g for c in nums]
                den //= g
            self._num = tuple(nums)
            self._den = den
        self._hash = None

    @classmethod
    def from_ints(cls, nums: Iterable[int], den: int = 1) -> "Polynomial":
        """Build ``sum(nums[k] x^k) / den`` without going through Fractions."""
        if den == 0:
            raise ExactError("zero denominator")
        nums = list(nums)
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        poly = cls.__new__(cls)
        poly._set(nums, den)
        return poly

    @classmethod
    def constant(cls, value: RationalLike) -> "Polynomial":
        return cls([value])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls.from_ints([0, 1])

    @classmethod
    def linear_root(cls, root: RationalLike) -> "Polynomial":
        """The monic polynomial ``x - root``."""
        return cls([-as_rational(root), 1])

    # -- access ---------------------------------------------------------------

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._num) - 1

    def is_zero(self) -> bool:
        return not self._num

    def leading_coefficient(self) -> Fraction:
        if not self._num:
            return Fraction(0)
        return Fraction(self._num[-1], self._den)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self._num:
            return "0"
        terms = []
        for k in range(len(self._num) - 1, -1, -1):
            c = self[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                power = "x" if k == 1 else f"x^{k}"
                body = power if mag == 1 else f"{format_rational(mag)}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        """Coefficients lowest degree first, as rational strings."""
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[RationalLike]) -> "Polynomial":
        return cls(data)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other: object) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def _addsub(self, other: "Polynomial", sign: int) -> "Polynomial":
        den = lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        size = max(len(self._num), len(other._num))
        out = [0] * size
        for k, c in enumerate(self._num):
            out[k] = c * fa
        for k, c in enumerate(other._num):
            out[k] += sign * c * fb
        return Polynomial.from_ints(out, den)

    def __add__(self, other: object) -> "Polynomial":
        return self._addsub(self._coerce(other), 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Polynomial":
        return self._addsub(self._coerce(other), -1)

    def __rsub__(self, other: object) -> "Polynomial":
        return self._coerce(other)._addsub(self, -1)

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_ints([-c for c in self._num], self._den)

    def __mul__(self, other: object) -> "Polynomial":
        other = self._coerce(other)
        return Polynomial.from_ints(_mul_ints(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ExactError("negative power")
        result = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor: RationalLike) -> "Polynomial":
        f = as_rational(factor)
        return Polynomial.from_ints([c * f.numerator for c in self._num], self._den * f.denominator)

    def derivative(self) -> "Polynomial":
        return Polynomial.from_ints([k * c for k, c in enumerate(self._num)][1:], self._den)

    def monic(self) -> "Polynomial":
        if not self._num:
            raise ExactError("zero polynomial has no monic form")
        lead = self._num[-1]
        return Polynomial.from_ints(list(self._num), lead)

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``x**k``."""
        if not self._num:
            return self
        return Polynomial.from_ints([0] * k + list(self._num), self._den)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        lead = div[-1]
        dd = len(div) - 1
        if len(rem) - 1 < dd:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for t in range(dd + 1):
                    rem[k + t] -= q * div[t]
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient, asserting that ``other`` divides ``self``."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ExactError("division is not exact")
        return q

    # -- evaluation -------------------------------------------------------------

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self._num):
            acc = acc * x + c
        return acc / self._den

    def sign_at(self, x: RationalLike) -> int:
        """Sign of the value at a rational point, in pure integer arithmetic."""
        return _int_sign_at(self._num, as_rational(x))

    def compose_linear(self, a: RationalLike, b: RationalLike) -> "Polynomial":
        """``p(a*x + b)``."""
        lin = Polynomial([b, a])
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out


def _int_sign_at(nums: Sequence[int], x: Fraction) -> int:
    if not nums:
        return 0
    u, v = x.numerator, x.denominator
    # sum c_k u^k v^(d-k) has the sign of p(u/v) since v > 0.
    acc = 0
    vpow = 1
    for c in reversed(nums):
        acc = acc * u + c * vpow
        vpow *= v
    return (acc > 0) - (acc < 0)


# -- polynomial arithmetic surface ---------------------------------------------

def poly_arithmetic(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ExactError(f"unknown operation {op!r}")


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def _primitive(nums: Sequence[int]) -> list[int]:
    g = _content(nums)
    if g == 0:
        return []
    if nums[-1] < 0:
        g = -g
    return [c // g for c in nums]


def _prem_positive(a: list[int], b: Sequence[int]) -> list[int]:
    """A positive rational multiple of ``a mod b``, reduced to primitive form."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    mag, sgn = abs(lb), (1 if lb > 0 else -1)
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [c * mag for c in a]
        f = sgn * la
        for t in range(db + 1):
            a[shift + t] -= f * b[t]
        _strip(a)
        g = _content(a)
        if g > 1:
            a = [c // g for c in a]
    return a


@lru_cache(maxsize=65536)
def _gcd_ints(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    x, y = list(a), list(b)
    if len(x) < len(y):
        x, y = y, x
    x, y = _primitive(x), _primitive(y)
    while y:
        x, y = y, _primitive(_prem_positive(x, y))
    return tuple(x)


def gcd_poly(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise ExactError("gcd of two zero polynomials is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    g = _gcd_ints(p.numerators, q.numerators)
    return Polynomial.from_ints(list(g), g[-1])


@lru_cache(maxsize=16384)
def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic ``p / gcd(p, p')``: same roots as ``p``, all simple."""
    if p.is_zero():
        raise ExactError("zero polynomial has no square-free part")
    if p.degree == 0:
        return Polynomial.constant(1)
    g = gcd_poly(p, p.derivative())
    return p.exact_div(g).monic()


# -- Sturm chains ----------------------------------------------------------------

@dataclass(frozen=True)
class SturmChain:
    """p, p', then negated remainders, each scaled by a positive constant."""

    polys: tuple[Polynomial, ...]

    def variations(self, x: Fraction) -> int:
        return _variations(_chain_ints(self.polys[0]), as_rational(x))


@lru_cache(maxsize=16384)
def _chain_ints(p: Polynomial) -> tuple[tuple[int, ...], ...]:
    a = list(p.numerators)
    b = [k * c for k, c in enumerate(a)][1:]
    _strip(b)
    chain = [tuple(a)]
    while b:
        chain.append(tuple(b))
        r = _prem_positive(a, b)
        a, b = b, [-c for c in r]
    return tuple(chain)


def sturm_chain(p: Polynomial) -> SturmChain:
    if p.is_zero():
        raise ExactError("Sturm chain of the zero polynomial")
    return SturmChain(tuple(Polynomial.from_ints(list(c)) for c in _chain_ints(p)))


def _variations(chain: Sequence[Sequence[int]], x: Fraction) -> int:
    count = 0
    last = 0
    for nums in chain:
        s = _int_sign_at(nums, x)
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ExactError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def count_roots(p: Polynomial, iv: Interval) -> int:
    """Distinct real roots of ``p`` in the open interval, by Sturm's theorem."""
    if p.is_zero():
        raise ExactError("count_roots of the zero polynomial")
    if p.sign_at(iv.lo) == 0 or p.sign_at(iv.hi) == 0:
        raise ExactError("interval endpoint is a root; perturb the endpoint")
    if p.degree <= 0:
        return 0
    chain = _chain_ints(p)
    return _variations(chain, iv.lo) - _variations(chain, iv.hi)


def _has_root_in(p: Polynomial, iv: Interval) -> bool:
    """For ``p`` known not to vanish at the endpoints."""
    return p.degree >= 1 and count_roots(p, iv) > 0


# -- algebraic numbers -----------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of ``witness``, the only one inside ``interval``."""

    witness: Polynomial
    interval: Interval

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi

    @classmethod
    def from_rational(cls, value: RationalLike) -> "AlgebraicNumber":
        r = as_rational(value)
        return cls(Polynomial.linear_root(r), Interval(r - 1, r + 1))

    def rational_value(self) -> Fraction | None:
        """The exact value when the number is rational, else None."""
        if self.witness.degree == 1:
            return -self.witness[0] / self.witness[1]
        for root in _rational_roots(self.witness):
            if self.lo < root < self.hi:
                return root
        return None

    def __float__(self) -> float:
        value = self.rational_value()
        if value is not None:
            return float(value)
        theta = self
        while theta.interval.width > Fraction(1, 10**12):
            theta = _bisect_once(theta, Polynomial.constant(1))
        return float(theta.interval.mid)

    def to_json(self) -> dict:
        return {
            "witness": self.witness.to_json(),
            "interval": [format_rational(self.lo), format_rational(self.hi)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicNumber":
        lo, hi = data["interval"]
        return cls(Polynomial.from_json(data["witness"]), Interval(as_rational(lo), as_rational(hi)))

    def __str__(self) -> str:
        value = self.rational_value() if self.witness.degree == 1 else None
        if value is not None:
            return format_rational(value)
        return f"root of {self.witness} in ({format_rational(self.lo)}, {format_rational(self.hi)})"


def _rational_roots(p: Polynomial) -> list[Fraction]:
    """Rational roots of a polynomial by the rational root test (small inputs only)."""
    nums = _primitive(list(p.numerators))
    if not nums:
        return []
    roots = []
    low = 0
    while nums[low] == 0:
        low += 1
    if low:
        roots.append(Fraction(0))
    nums = nums[low:]
    if len(nums) <= 1:
        return roots
    a0, an = abs(nums[0]), abs(nums[-1])

    def divisors(m: int) -> list[int]:
        out = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                out.extend({d, m // d})
            d += 1
        return out

    if a0 > 10**12 or an > 10**12:
        return roots
    for u in divisors(a0):
        for v in divisors(an):
            for cand in (Fraction(u, v), Fraction(-u, v)):
                if cand not in roots and _int_sign_at(nums, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _split_point(lo: Fraction, hi: Fraction, polys: Sequence[Polynomial]) -> Fraction:
    s = (lo + hi) / 2
    while any(p.sign_at(s) == 0 for p in polys):
        s = (lo + s) / 2
    return s


def _bisect_once(theta: AlgebraicNumber, other: Polynomial) -> AlgebraicNumber:
    w = theta.witness
    lo, hi = theta.lo, theta.hi
    s = _split_point(lo, hi, (w, other))
    if count_roots(w, Interval(lo, s)) == 1:
        return AlgebraicNumber(w, Interval(lo, s))
    return AlgebraicNumber(w, Interval(s, hi))


def isolate_roots(p: Polynomial, bracket: tuple[Fraction, Fraction] | None = None) -> list[AlgebraicNumber]:
    """One AlgebraicNumber per distinct real root, ascending.

    ``bracket`` is an optional a-priori interval known to contain every real
    root; it is widened by 1 on each side.  Without it a Cauchy bound is used.
    """
    if p.is_zero():
        raise ExactError("isolate_roots of the zero polynomial")
    w = squarefree_part(p)
    if w.degree < 1:
        return []
    if bracket is None:
        lead = abs(w.leading_coefficient())
        bound = 1 + max(abs(c) / lead for c in w.coeffs[:-1])
        lo, hi = -bound - 1, bound + 1
    else:
        lo, hi = as_rational(bracket[0]) - 1, as_rational(bracket[1]) + 1
    while w.sign_at(lo) == 0:
        lo -= 1
    while w.sign_at(hi) == 0:
        hi += 1
    found: list[AlgebraicNumber] = []
    stack = [(lo, hi, count_roots(w, Interval(lo, hi)))]
    while stack:
        a, b, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            found.append(AlgebraicNumber(w, Interval(a, b)))
            continue
        s = _split_point(a, b, (w,))
        left = count_roots(w, Interval(a, s))
        stack.append((s, b, c - left))
        stack.append((a, s, left))
    found.sort(key=lambda t: t.lo)
    return found


def refine(theta: AlgebraicNumber, avoid: Polynomial) -> AlgebraicNumber:
    """Shrink ``theta``'s interval until ``avoid`` has no root in the closed
    interval other than (possibly) ``theta`` itself."""
    if avoid.is_zero():
        raise ExactError("cannot refine against the zero polynomial")
    if avoid.degree < 1:
        return theta
    w = theta.witness
    a = squarefree_part(avoid)
    h = a.exact_div(gcd_poly(a, w))
    if h.degree < 1:
        return theta
    while True:
        iv = theta.interval
        if h.sign_at(iv.lo) != 0 and h.sign_at(iv.hi) != 0 and count_roots(h, iv) == 0:
            return theta
        theta = _bisect_once(theta, h)


@lru_cache(maxsize=131072)
def sign_at(p: Polynomial, theta: AlgebraicNumber) -> int:
    """Sign of ``p`` at the algebraic number ``theta``."""
    if p.is_zero():
        raise ExactError("sign of the zero polynomial")
    if p.degree == 0:
        return 1 if p.numerators[0] > 0 else -1
    g = gcd_poly(p, theta.witness)
    if _has_root_in(g, theta.interval):
        return 0
    narrowed = refine(theta, p)
    return p.sign_at(narrowed.interval.mid)


@lru_cache(maxsize=131072)
def multiplicity_at(p: Polynomial, theta: AlgebraicNumber) -> int:
    """Multiplicity of ``theta`` as a root of ``p`` (0 when it is not a root)."""
    if p.is_zero():
        raise ExactError("multiplicity in the zero polynomial")
    k = 0
    q = p
    w = theta.witness
    iv = theta.interval
    while q.degree >= 1:
        g = gcd_poly(q, w)
        if not _has_root_in(g, iv):
            break
        k += 1
        q = q.exact_div(g)
        # theta stays the unique root of g inside iv, and g is smaller than w
        w = g
    return k


def compare(theta: AlgebraicNumber, r: RationalLike) -> int:
    """-1, 0, +1 as ``theta`` is below, equal to, or above ``r``."""
    r = as_rational(r)
    if r <= theta.lo:
        return 1
    if r >= theta.hi:
        return -1
    w = theta.witness
    if w.sign_at(r) == 0:
        return 0
    if count_roots(w, Interval(theta.lo, r)) == 1:
        return -1
    return 1


def compare_algebraic(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Exact order of two algebraic numbers: -1, 0 or +1."""
    if sign_at(b.witness, a) == 0 and compare(a, b.lo) > 0 and compare(a, b.hi) < 0:
        # a is a root of b's witness inside b's isolating interval
        return 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        if a.interval.width >= b.interval.width:
            a = _bisect_once(a, b.witness)
        else:
            b = _bisect_once(b, a.witness)
