"""Certified interval arithmetic over exact rational endpoints.

Every operation returns an interval that provably contains the true value:
field operations are exact on Fraction endpoints, and the irrational
primitives (integer roots, pi, exp, log, gamma) come from convergent series
with explicit rational remainder bounds, rounded outward onto a dyadic grid.
No floating point is involved anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

DEFAULT_PREC = 128

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _floor_to(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _ceil_to(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @classmethod
    def point(cls, x) -> "Interval":
        f = Fraction(x)
        return cls(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Fraction(x) <= self.hi

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Interval":
        o = _coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = _coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval division by an interval containing 0")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other) / self

    def pow_int(self, k: int) -> "Interval":
        if k < 0:
            return Interval.point(1) / self.pow_int(-k)
        if k == 0:
            return Interval.point(1)
        a, b = self.lo**k, self.hi**k
        if k % 2 == 1:
            return Interval(a, b)
        if self.lo >= 0:
            return Interval(a, b)
        if self.hi <= 0:
            return Interval(b, a)
        return Interval(_ZERO, max(a, b))

    def nth_root(self, k: int, prec: int = DEFAULT_PREC) -> "Interval":
        """Enclosure of the k-th root; requires a nonnegative interval."""
        if self.lo < 0:
            raise ValueError("root of an interval reaching below 0")
        return Interval(nth_root(self.lo, k, prec).lo, nth_root(self.hi, k, prec).hi)

    def round_out(self, bits: int) -> "Interval":
        return Interval(_floor_to(self.lo, bits), _ceil_to(self.hi, bits))

    def decimal_bounds(self, digits: int) -> tuple[str, str]:
        """Decimal strings rounded outward, so the printed pair still encloses."""
        return (_decimal_str(self.lo, digits, down=True),
                _decimal_str(self.hi, digits, down=False))

    def __repr__(self) -> str:
        lo, hi = self.decimal_bounds(12)
        return f"Interval[{lo}, {hi}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


def _decimal_str(f: Fraction, digits: int, down: bool) -> str:
    scale = 10**digits
    num = f.numerator * scale
    q = num // f.denominator if down else -((-num) // f.denominator)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


# ---------------------------------------------------------------------------
# integer and rational roots

def int_nth_root(n: int, k: int) -> int:
    """Largest r with r**k <= n, for n >= 0, k >= 1 (Newton on integers)."""
    if n < 0 or k < 1:
        raise ValueError("int_nth_root needs n >= 0, k >= 1")
    if n == 0 or k == 1:
        return n
    r = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def nth_root(x: Fraction, k: int, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of x**(1/k) for x >= 0 with width at most 2**-prec,
    collapsing to a point when the root is exactly rational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError(f"even real roots need a nonnegative radicand, got {x}")
    if k < 1:
        raise ValueError(f"root order must be >= 1, got {k}")
    if x == 0:
        return Interval.point(0)
    a, b = x.numerator, x.denominator
    ra, rb = int_nth_root(a, k), int_nth_root(b, k)
    if ra**k == a and rb**k == b:
        return Interval.point(Fraction(ra, rb))
    target = a << (k * prec)
    r = int_nth_root(target // b, k)
    while (r + 1) ** k * b <= target:
        r += 1
    while r**k * b > target:
        r -= 1
    scale = 1 << prec
    return Interval(Fraction(r, scale), Fraction(r + 1, scale))


def rational_power(x: Fraction, e: Fraction, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of x**e for rational x >= 0 (x = 0 needs e > 0)."""
    x, e = Fraction(x), Fraction(e)
    if x == 0 and e > 0:
        return Interval.point(0)
    if x <= 0:
        raise ValueError(f"rational_power needs a positive base, got {x}")
    if e < 0:
        inner = rational_power(x, -e, prec + 8)
        return (Interval.point(1) / inner).round_out(prec)
    u, v = e.numerator, e.denominator
    bits = max(x.numerator.bit_length(), x.denominator.bit_length())
    if u > 512 or bits * u > 1 << 20:
        # huge exponents go through exp/log to dodge astronomical powers
        return exp_interval(log_interval(x, prec + 32) * e, prec)
    return nth_root(x**u, v, prec)


# ---------------------------------------------------------------------------
# pi via Machin's formula with alternating-series brackets

_PI_CACHE: dict[int, Interval] = {}


def _atan_inv(x: int, prec: int) -> Interval:
    """Enclosure of arctan(1/x) for integer x >= 2."""
    eps = Fraction(1, 1 << (prec + 4))
    total = _ZERO
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < eps:
            # alternating with decreasing terms: truth within one term of S_k
            return Interval(total - term, total + term)
        total += term if k % 2 == 0 else -term
        k += 1


def pi_interval(prec: int = DEFAULT_PREC) -> Interval:
    if prec not in _PI_CACHE:
        w = prec + 16
        iv = 16 * _atan_inv(5, w) - 4 * _atan_inv(239, w)
        _PI_CACHE[prec] = iv.round_out(prec)
    return _PI_CACHE[prec]


# ---------------------------------------------------------------------------
# logarithm and exponential

_LOG2_CACHE: dict[int, Interval] = {}


def _atanh_series(t: Fraction, prec: int) -> Interval:
    """Enclosure of atanh(t) = t + t^3/3 + ... for 0 <= t < 1/2."""
    eps = Fraction(1, 1 << (prec + 4))
    t2 = t * t
    total = _ZERO
    power = t
    k = 0
    while True:
        term = power / (2 * k + 1)
        if term < eps:
            # geometric tail: sum_{j>k} t^(2j+1)/(2j+1) <= term-ish remainder
            tail = power / ((2 * k + 1) * (1 - t2))
            return Interval(total, total + tail)
        total += term
        power *= t2
        k += 1


def _log2_interval(prec: int) -> Interval:
    if prec not in _LOG2_CACHE:
        _LOG2_CACHE[prec] = (2 * _atanh_series(Fraction(1, 3), prec + 8)).round_out(prec)
    return _LOG2_CACHE[prec]


def log_interval(x, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of the natural log of a positive rational or interval."""
    if isinstance(x, Interval):
        if x.lo <= 0:
            raise ValueError("log of an interval reaching down to 0")
        return Interval(log_interval(x.lo, prec).lo, log_interval(x.hi, prec).hi)
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log needs a positive argument, got {x}")
    if x == 1:
        return Interval.point(0)
    if x < 1:
        return (-log_interval(1 / x, prec + 4)).round_out(prec)
    w = prec + 16
    e = x.numerator.bit_length() - x.denominator.bit_length()
    m = x / Fraction(1 << e) if e >= 0 else x * (1 << -e)
    while m >= 2:
        m /= 2
        e += 1
    while m < 1:
        m *= 2
        e -= 1
    t = (m - 1) / (m + 1)  # in [0, 1/3)
    iv = 2 * _atanh_series(t, w) + e * _log2_interval(w)
    return iv.round_out(prec)


def exp_interval(x, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of exp over a rational or interval argument."""
    if isinstance(x, Interval):
        return Interval(exp_interval(x.lo, prec).lo, exp_interval(x.hi, prec).hi)
    x = Fraction(x)
    halvings = 0
    y = x
    while abs(y) > Fraction(1, 2):
        y /= 2
        halvings += 1
    w = prec + 24 + 2 * halvings
    eps = Fraction(1, 1 << w)
    total = _ONE
    term = _ONE
    k = 0
    while True:
        k += 1
        term = term * y / k
        total += term
        bound = 2 * abs(term)
        if bound < eps:
            break
        if k > 4 * w:
            raise RuntimeError("exp series failed to converge")  # unreachable
    iv = Interval(max(_ZERO, total - bound), total + bound).round_out(w)
    for _ in range(halvings):
        iv = Interval(iv.lo * iv.lo, iv.hi * iv.hi).round_out(w)
    return iv.round_out(prec)


# ---------------------------------------------------------------------------
# gamma via exact half-integer recursion, Stirling series otherwise

_BERNOULLI: list[Fraction] = [Fraction(1)]


def _bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m (B_1 = -1/2 convention)."""
    while len(_BERNOULLI) <= m:
        j = len(_BERNOULLI)
        acc = sum((comb(j + 1, i) * _BERNOULLI[i] for i in range(j)), _ZERO)
        _BERNOULLI.append(-acc / (j + 1))
    return _BERNOULLI[m]


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def loggamma_interval(x: Fraction, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of log(Gamma(x)) for rational x > 0 via the Stirling series.

    The argument is shifted upward until the first omitted Stirling term,
    which bounds the remainder for real positive arguments, drops below the
    target width.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"loggamma needs a positive argument, got {x}")
    w = prec + 32
    shift_to = max(16, w // 8 + 4)
    shift = max(0, shift_to - int(x))
    z = x + shift
    eps = Fraction(1, 1 << w)
    series = _ZERO
    j = 0
    while True:
        j += 1
        nxt = abs(_bernoulli(2 * j + 2)) / ((2 * j + 2) * (2 * j + 1) * z ** (2 * j + 1))
        series += _bernoulli(2 * j) / ((2 * j) * (2 * j - 1) * z ** (2 * j - 1))
        if nxt < eps:
            remainder = nxt
            break
        if j > 8 * w:
            raise RuntimeError("Stirling series failed to converge")  # unreachable
    log_z = log_interval(z, w)
    log_2pi = _log2_interval(w) + log_interval(pi_interval(w), w)
    main = (z - Fraction(1, 2)) * log_z - z + log_2pi / 2
    stirling = main + Interval(series - remainder, series + remainder)
    if shift:
        rising = _ONE
        for i in range(shift):
            rising *= x + i
        stirling = stirling - log_interval(rising, w)
    return stirling.round_out(prec)


def gamma_interval(x: Fraction, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of Gamma(x) for rational x > 0.

    Integer and half-integer arguments reduce exactly through
    Gamma(t+1) = t*Gamma(t) down to Gamma(1/2) = sqrt(pi); everything else
    goes through the certified Stirling path.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"gamma needs a positive argument, got {x}")
    if x.denominator == 1:
        out = 1
        for i in range(2, x.numerator):
            out *= i
        return Interval.point(out)
    if x.denominator == 2:
        m = (x.numerator - 1) // 2  # x = m + 1/2 with m >= 0
        factor = Fraction(_double_factorial(2 * m - 1), 1 << m)
        return (factor * pi_interval(prec + 8).nth_root(2, prec + 8)).round_out(prec)
    return exp_interval(loggamma_interval(x, prec + 16), prec)
