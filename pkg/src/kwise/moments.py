"""Exact p-th moments of weighted sign sums and their Khintchine ratios."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence, Union

from .core import SampleSpace
from .intervals import DEFAULT_PREC, Interval, exp_interval, log_interval, nth_root

Value = Union[Fraction, Interval]


@dataclass(frozen=True, slots=True)
class Weights:
    """Rational weight vector for the sum sum_i a_i x_i; not all zero."""

    a: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.a:
            raise ValueError("weight vector is empty")
        if all(w == 0 for w in self.a):
            raise ValueError("weight vector is identically zero")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def l2sq(self) -> Fraction:
        return sum((w * w for w in self.a), Fraction(0))

    @classmethod
    def all_ones(cls, n: int) -> "Weights":
        return cls((Fraction(1),) * n)

    @classmethod
    def from_strings(cls, parts: Sequence[str]) -> "Weights":
        return cls(tuple(Fraction(s) for s in parts))

    def dot_bits(self, bits: int) -> Fraction:
        """Signed sum for the sign vector encoded by ``bits``."""
        total = -sum(self.a, Fraction(0))
        m = bits
        while m:
            low = m & -m
            total += 2 * self.a[low.bit_length() - 1]
            m ^= low
        return total


@dataclass(frozen=True, slots=True)
class MomentResult:
    """p-th absolute moment of a weighted sign sum, with the scale-free ratio
    moment^(1/p) / l2-norm attached as a certified enclosure."""

    p: Fraction
    value: Value
    ratio: Interval


def _check_p(p) -> Fraction:
    p = Fraction(p)
    if p < 1:
        raise ValueError(f"moment order must be >= 1, got {p}")
    return p


def ratio_from_moment(value: Value, p, l2sq: Fraction,
                      prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of value^(1/p) / sqrt(l2sq).

    For exact rational moments the ratio is a single rational root
    (ratio^(2u) = value^(2v) / l2sq^u for p = u/v), which collapses to a point
    whenever the ratio itself is rational.
    """
    p = _check_p(p)
    if l2sq <= 0:
        raise ValueError("l2sq must be positive")
    u, v = p.numerator, p.denominator
    if isinstance(value, Interval):
        if value.lo < 0:
            raise ValueError("moment enclosure reaches below 0")
        if max(u, v) > 64 and value.lo > 0:
            t = log_interval(value, prec + 32) * Fraction(v, u) \
                - log_interval(l2sq, prec + 32) / 2
            return exp_interval(t, prec)
        radicand = value.pow_int(2 * v) / Interval.point(l2sq).pow_int(u)
        return radicand.nth_root(2 * u, prec)
    if value < 0:
        raise ValueError("moments of |sum| cannot be negative")
    if value == 0:
        return Interval.point(0)
    if max(u, v) > 64:
        # keep radicand sizes sane for extreme rational orders
        t = log_interval(value, prec + 32) * Fraction(v, u) \
            - log_interval(l2sq, prec + 32) / 2
        return exp_interval(t, prec)
    return nth_root(value ** (2 * v) / l2sq**u, 2 * u, prec)


def pth_moment(space: SampleSpace, weights: Weights, p,
               prec: int = DEFAULT_PREC, rel_tol_bits: int = 60) -> MomentResult:
    """E|sum_i a_i x_i|^p over the given law.

    Integer p gives an exact rational value; other rational p gives a
    certified enclosure, retried at doubled precision until the relative
    width drops below 2**-rel_tol_bits.
    """
    p = _check_p(p)
    if weights.n != space.n:
        raise ValueError(f"weight dimension {weights.n} != space dimension {space.n}")
    if p.denominator == 1:
        k = p.numerator
        value = Fraction(0)
        for bits, prob in space.masses.items():
            value += prob * abs(weights.dot_bits(bits)) ** k
        return MomentResult(p, value, ratio_from_moment(value, p, weights.l2sq, prec))
    u, v = p.numerator, p.denominator
    sums = [(abs(weights.dot_bits(bits)) ** u, prob)
            for bits, prob in space.masses.items()]
    work = prec
    while True:
        value = Interval.point(0)
        for powered, prob in sums:
            value = value + prob * nth_root(powered, v, work)
        if value.hi == 0 or value.width * (1 << rel_tol_bits) <= value.hi:
            break
        work *= 2
    return MomentResult(p, value, ratio_from_moment(value, p, weights.l2sq, prec))


def khintchine_ratio(space: SampleSpace, weights: Weights, p,
                     prec: int = DEFAULT_PREC) -> Interval:
    """(E|sum a_i x_i|^p)^(1/p) / ||a||_2 as a certified enclosure."""
    return pth_moment(space, weights, p, prec).ratio


def even_moment_independent(weights: Weights, p) -> Fraction:
    """E(sum a_i x_i)^p under full independence, for even integer p, by the
    all-even multinomial expansion (no 2^n enumeration)."""
    p = Fraction(p)
    if p.denominator != 1 or p.numerator < 2 or p.numerator % 2:
        raise ValueError(f"needs an even integer order >= 2, got {p}")
    k = p.numerator
    fact = [factorial(j) for j in range(k + 1)]
    # g[e] accumulates sum over even exponent patterns of prod a_i^{j_i}/j_i!
    g = [Fraction(0)] * (k + 1)
    g[0] = Fraction(1)
    for ai in weights.a:
        w = {j: ai**j / fact[j] for j in range(2, k + 1, 2)}
        # descending e keeps the g[e-j] reads on the previous coordinate
        for e in range(k, 1, -2):
            acc = Fraction(0)
            for j in range(2, e + 1, 2):
                if g[e - j]:
                    acc += g[e - j] * w[j]
            g[e] += acc
    return g[k] * fact[k]
