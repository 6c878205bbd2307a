"""Bernoulli/Euler polynomials (exact) and float64 special functions.

Exact rationals are :class:`fractions.Fraction`.  The float routines target
about 12 significant digits, which is far tighter than anything downstream
needs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

EULER_GAMMA = 0.57721566490153286061

Rational = Union[int, Fraction]


class DomainError(ValueError):
    pass


class RationalPolynomial:
    """Polynomial with Fraction coefficients in ascending degree, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Rational]):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        x = Fraction(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evalf(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial([x + y for x, y in zip(a, b)])

    def __neg__(self) -> RationalPolynomial:
        return RationalPolynomial([-x for x in self.coeffs])

    def __sub__(self, other: RationalPolynomial) -> RationalPolynomial:
        return self + (-other)

    def __mul__(self, other: RationalPolynomial | Rational) -> RationalPolynomial:
        if not isinstance(other, RationalPolynomial):
            return RationalPolynomial([x * other for x in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def compose_linear(self, a: Rational, b: Rational) -> RationalPolynomial:
        """p(a + b*x)."""
        lin = RationalPolynomial([a, b])
        acc = RationalPolynomial([])
        for c in reversed(self.coeffs):
            acc = acc * lin + RationalPolynomial([c])
        return acc

    def antiderivative(self) -> RationalPolynomial:
        return RationalPolynomial([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"


@lru_cache(maxsize=None)
def bernoulli_poly(ell: int) -> RationalPolynomial:
    """B_ell(x), built from B_ell' = ell * B_{ell-1} and a vanishing mean on [0, 1]."""
    if ell < 0:
        raise DomainError(f"negative index {ell}")
    if ell == 0:
        return RationalPolynomial([1])
    p = bernoulli_poly(ell - 1).antiderivative() * ell
    mean = p.antiderivative()(1)
    return p - RationalPolynomial([mean])


def bernoulli_number(ell: int) -> Fraction:
    return bernoulli_poly(ell)(0)


@lru_cache(maxsize=None)
def euler_poly(n: int) -> RationalPolynomial:
    """E_n(x), from E_n' = n * E_{n-1} and E_n(0) + E_n(1) = 0 (n >= 1)."""
    if n < 0:
        raise DomainError(f"negative index {n}")
    if n == 0:
        return RationalPolynomial([1])
    p = euler_poly(n - 1).antiderivative() * n
    return p - RationalPolynomial([p(1) / 2])


def zeta_value(k: int) -> float:
    """Riemann zeta at an integer k >= 2."""
    if k < 2:
        raise DomainError(f"zeta({k}) is not defined by the convergent series")
    if k % 2 == 0:
        m = k // 2
        b = bernoulli_number(k)
        return float((-1) ** (m + 1) * b / (2 * math.factorial(k))) * (2 * math.pi) ** k
    # direct sum to M - 1, then Euler-Maclaurin for the tail from M
    M = 12
    head = math.fsum(n ** -k for n in range(1, M))
    tail = [M ** (1 - k) / (k - 1), 0.5 * M ** -k]
    rising = k  # k (k+1) ... (k + r - 1) for r = 2j - 1
    for j in range(1, 8):
        r = 2 * j - 1
        if j > 1:
            rising *= (k + r - 2) * (k + r - 1)
        # f^{(r)}(M) = (-1)^r rising * M^{-k-r}
        tail.append(float(bernoulli_number(2 * j)) / math.factorial(2 * j) * rising * M ** (-k - r))
    return head + math.fsum(tail)


def digamma(a: Rational | float) -> float:
    x = float(a)
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"digamma has a pole at {a}")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    x2 = 1.0 / (x * x)
    series = 0.0
    for j in range(8, 0, -1):
        series = series * x2 + float(bernoulli_number(2 * j)) / (2 * j)
    return acc + math.log(x) - 0.5 / x - series * x2


def digamma_const(a: Rational | float) -> float:
    """C_a = -gamma - psi(a)."""
    return -EULER_GAMMA - digamma(a)


_SERIES_CUTOFF = 30.0


def _bessel_i_series(j: int, x: float) -> float:
    half = 0.5 * x
    term = half ** j / math.factorial(j)
    total = term
    q = half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + j))
        total += term
        if term < 1e-17 * total:
            return total


def _bessel_i_asymptotic_scaled(j: int, x: float) -> float:
    """e^{-x} I_j(x) from the large-argument expansion, truncated at its smallest term."""
    mu = 4.0 * j * j
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        nxt = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(nxt) >= abs(term) or k > 200:
            break
        term = nxt
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i_scaled(j: int, x: float) -> float:
    """e^{-x} I_j(x) for integer j (I_{-j} = I_j) and x > 0."""
    j = abs(j)
    if x <= 0:
        raise DomainError("bessel_i needs x > 0")
    if x <= _SERIES_CUTOFF:
        return _bessel_i_series(j, x) * math.exp(-x)
    return _bessel_i_asymptotic_scaled(j, x)


def bessel_i(j: int, x: float) -> float:
    """Modified Bessel function I_j(x) of integer order."""
    j = abs(j)
    if x <= 0:
        raise DomainError("bessel_i needs x > 0")
    if x <= _SERIES_CUTOFF:
        return _bessel_i_series(j, x)
    return _bessel_i_asymptotic_scaled(j, x) * math.exp(x)


def logistic_cdf(x: float) -> float:
    """CDF of the logistic law with mean 0 and scale 1/pi."""
    t = math.pi * x
    if t >= 0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


def logistic_pdf(x: float) -> float:
    e = math.exp(-math.pi * abs(x))
    return math.pi * e / (1.0 + e) ** 2
