"""Numerical Euler-Maclaurin engine on the positive real ray.

The left-hand sums are accumulated term by term until a tail bound from the
caller's exponential majorant drops below the working precision, so the
engine never relies on the expansion it is measuring.  Arithmetic is done in
mpmath at ``DPS`` digits so that remainders down to ~1e-20 are measurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import mpmath as mp

from .special import DomainError, bernoulli_poly, digamma_const, euler_poly

DPS = 30
MAX_TERMS = 2_000_000
NOISE = mp.mpf(10) ** (-(DPS - 6))


class DecayViolationError(ArithmeticError):
    pass


class EMResult(NamedTuple):
    sum: float
    expansion: float
    remainder: float


@dataclass(frozen=True)
class ExpansionInput:
    """f on the positive ray together with its data at 0.

    ``taylor`` holds f^{(n)}(0) for n = 0, 1, ... or, when ``pole`` is true,
    the Laurent coefficients b_{-1}, b_0, b_1, ... of f at 0.  The decay
    certificate is |f(x)| <= decay_const * exp(-decay_rate * x) for x >= decay_from.
    """

    f: Callable[[mp.mpf], mp.mpf]
    taylor: Sequence[Fraction]
    shift: Fraction
    order: int
    decay_const: float
    decay_rate: float
    decay_from: float = 0.0
    pole: bool = False
    name: str = ""
    _integral: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("order must be >= 0")
        if self.decay_rate <= 0 or self.decay_const <= 0:
            raise DecayViolationError("decay certificate needs positive constant and rate")
        needed = self.order + (1 if self.pole else 0)
        if len(self.taylor) < needed:
            raise ValueError(f"{needed} Taylor/Laurent coefficients needed, got {len(self.taylor)}")
        self._check_taylor()

    def _local(self, x: mp.mpf) -> mp.mpf:
        """Truncated Taylor (or Laurent) sum at x."""
        if self.pole:
            return sum(mp.mpf(b.numerator) / b.denominator * x ** (i - 1) for i, b in enumerate(self.taylor))
        return sum(mp.mpf(t.numerator) / t.denominator * x ** i / mp.factorial(i) for i, t in enumerate(self.taylor))

    def _check_taylor(self) -> None:
        with mp.workdps(DPS):
            h = mp.mpf("1e-3")
            exact = self.f(h)
            approx = self._local(h)
            scale = max(abs(exact), mp.mpf(1))
            if abs(exact - approx) > mp.mpf("1e-6") * scale:
                raise ValueError(f"Taylor data inconsistent with f near 0 ({self.name or 'unnamed'})")

    def integral(self) -> mp.mpf:
        """int_0^inf f, or the regularized integral of f - b_{-1} e^{-x}/x in the pole case."""
        if not self._integral:
            with mp.workdps(DPS):
                self._integral.append(mp.quad(self._integrand(), [0, 1, mp.inf]))
        return self._integral[0]

    def _integrand(self) -> Callable[[mp.mpf], mp.mpf]:
        if not self.pole:
            return self.f
        b = mp.mpf(self.taylor[0].numerator) / self.taylor[0].denominator

        def g(x: mp.mpf) -> mp.mpf:
            if x < mp.mpf("1e-6"):
                # local series of f minus that of b e^{-x}/x, avoiding cancellation
                return (self._local(x) - b / x) - b * mp.expm1(-x) / x
            return self.f(x) - b * mp.exp(-x) / x

        return g


def _accumulate(inp: ExpansionInput, w: mp.mpf, alternating: bool) -> mp.mpf:
    a = mp.mpf(inp.shift.numerator) / inp.shift.denominator
    C, c = mp.mpf(inp.decay_const), mp.mpf(inp.decay_rate)
    ratio = mp.exp(-c * w)
    majorant = C * mp.exp(-c * w * a)  # C e^{-c x_m}, updated by the ratio
    slack = 1 + NOISE
    tol = NOISE * mp.mpf("1e-4")
    total = mp.mpf(0)
    m = 0
    while True:
        x = w * (m + a)
        t = inp.f(x)
        if x >= inp.decay_from and abs(t) > majorant * slack:
            raise DecayViolationError(f"|f({mp.nstr(x, 8)})| exceeds the certified majorant")
        total += -t if alternating and m % 2 else t
        m += 1
        majorant *= ratio
        if w * (m + a) >= inp.decay_from and majorant / (1 - ratio) <= tol * max(abs(total), 1):
            return total
        if m > MAX_TERMS:
            raise DecayViolationError(f"tail bound did not converge within {MAX_TERMS} terms")


def _mp(q: Fraction) -> mp.mpf:
    return mp.mpf(q.numerator) / q.denominator


def _expansion_plain(inp: ExpansionInput, w: mp.mpf) -> mp.mpf:
    a = inp.shift
    out = inp.integral() / w
    for n in range(inp.order):
        out -= _mp(bernoulli_poly(n + 1)(a) * inp.taylor[n]) / mp.factorial(n + 1) * w ** n
    return out


def _expansion_alternating(inp: ExpansionInput, w: mp.mpf) -> mp.mpf:
    a = inp.shift
    out = mp.mpf(0)
    for n in range(inp.order):
        out += _mp(euler_poly(n)(a) * inp.taylor[n]) / mp.factorial(n) * w ** n
    return out / 2


def _expansion_pole(inp: ExpansionInput, w: mp.mpf) -> mp.mpf:
    a = inp.shift
    b = [_mp(t) for t in inp.taylor]
    out = -b[0] * mp.log(w) / w + b[0] * mp.mpf(digamma_const(a)) / w + inp.integral() / w
    for n in range(inp.order):
        out -= _mp(bernoulli_poly(n + 1)(a)) * b[n + 1] * w ** n / (n + 1)
    return out


def _run(inp: ExpansionInput, w: float, alternating: bool, expansion) -> tuple[mp.mpf, mp.mpf]:
    if w <= 0:
        raise DomainError("w must be positive")
    with mp.workdps(DPS):
        ww = mp.mpf(w)
        s = _accumulate(inp, ww, alternating)
        e = expansion(inp, ww)
        return s, e


def _result(s: mp.mpf, e: mp.mpf) -> EMResult:
    return EMResult(float(s), float(e), float(s - e))


def em_expand(inp: ExpansionInput, w: float) -> EMResult:
    """sum_{m>=0} f(w(m+a)) against (1/w) int f - sum_{n<N} B_{n+1}(a) f^{(n)}(0) w^n / (n+1)!."""
    if inp.pole:
        raise ValueError("use em_expand_pole for Laurent data")
    return _result(*_run(inp, w, False, _expansion_plain))


def em_expand_alternating(inp: ExpansionInput, w: float) -> EMResult:
    """sum_{m>=0} (-1)^m f(w(m+a)) against (1/2) sum_{n<N} E_n(a) f^{(n)}(0) w^n / n!."""
    if inp.pole:
        raise ValueError("alternating expansion takes Taylor data")
    return _result(*_run(inp, w, True, _expansion_alternating))


def em_expand_pole(inp: ExpansionInput, w: float) -> EMResult:
    """Sum for f with a simple pole at 0; the expansion carries -b_{-1} log(w)/w and b_{-1} C_a / w."""
    if not inp.pole:
        raise ValueError("em_expand_pole needs Laurent data (pole=True)")
    a = inp.shift
    if a <= 0 and a.denominator == 1:
        raise DomainError(f"shift {a} is a non-positive integer")
    if inp.taylor[0] == 0:
        raise ValueError("b_{-1} must be non-zero")
    return _result(*_run(inp, w, False, _expansion_pole))


def em_difference(first: ExpansionInput, second: ExpansionInput, w: float) -> EMResult:
    """Plain expansion of first minus second (same f, different shifts)."""
    s1, e1 = _run(first, w, False, _expansion_plain)
    s2, e2 = _run(second, w, False, _expansion_plain)
    with mp.workdps(DPS):
        return _result(s1 - s2, e1 - e2)


# -- remainder order fits ----------------------------------------------------


@dataclass(frozen=True)
class OrderFit:
    slope: float
    ws: tuple[float, ...]
    remainders: tuple[float, ...]
    below_noise: tuple[bool, ...]


def fit_remainder_order(ws: Sequence[float], run: Callable[[float], EMResult]) -> OrderFit:
    """Least-squares slope of log|remainder| against log w.

    Remainders at or below the working-precision floor carry no slope
    information; if fewer than two points are above it the order is
    reported as infinite (the remainder is beyond every power of w).
    """
    rems, below = [], []
    for w in ws:
        r = run(w)
        floor = float(NOISE) * max(1.0, abs(r.sum)) * 100
        rems.append(r.remainder)
        below.append(abs(r.remainder) <= floor)
    pts = [(math.log(w), math.log(abs(r))) for w, r, b in zip(ws, rems, below) if not b]
    if len(pts) < 2:
        return OrderFit(math.inf, tuple(ws), tuple(rems), tuple(below))
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    slope = sum((x - mx) * (y - my) for x, y in pts) / sum((x - mx) ** 2 for x, _ in pts)
    return OrderFit(slope, tuple(ws), tuple(rems), tuple(below))


# -- documented test integrands ----------------------------------------------


def _gauss_taylor(power: int, scale: Fraction, count: int) -> list[Fraction]:
    """Derivatives at 0 of x^power * exp(-scale x^2)."""
    out = [Fraction(0)] * count
    k = 0
    while power + 2 * k < count:
        n = power + 2 * k
        out[n] = Fraction(math.factorial(n)) * (-scale) ** k / math.factorial(k)
        k += 1
    return out


def exponential_case(order: int, shift: Fraction = Fraction(1)) -> ExpansionInput:
    """f(x) = e^{-x}."""
    return ExpansionInput(lambda x: mp.exp(-x),
                          [Fraction((-1) ** n) for n in range(order + 2)],
                          Fraction(shift), order, 1.0, 1.0, name="exponential")


def gaussian_moment_case(order: int, shift: Fraction = Fraction(1, 2)) -> ExpansionInput:
    """f(x) = x^2 e^{-x^2/2}; max of x^2 e^{-x^2/2 + x} is 4 (at x = 2)."""
    return ExpansionInput(lambda x: x * x * mp.exp(-x * x / 2), _gauss_taylor(2, Fraction(1, 2), order + 4),
                          Fraction(shift), order, 4.0, 1.0, name="gaussian-moment")


def narrow_gaussian_moment_case(order: int, shift: Fraction) -> ExpansionInput:
    """f(x) = x^2 e^{-3x^2}; max of x^2 e^{-3x^2 + x} is below 1/4 (at x = 2/3)."""
    return ExpansionInput(lambda x: x * x * mp.exp(-3 * x * x), _gauss_taylor(2, Fraction(3), order + 4),
                          Fraction(shift), order, 0.25, 1.0, name="narrow-gaussian-moment")


def gaussian_case(order: int, shift: Fraction = Fraction(1, 2)) -> ExpansionInput:
    """f(x) = e^{-x^2/2}; max of e^{-x^2/2 + x} is e^{1/2} < 1.7."""
    return ExpansionInput(lambda x: mp.exp(-x * x / 2), _gauss_taylor(0, Fraction(1, 2), order + 4),
                          Fraction(shift), order, 1.7, 1.0, name="gaussian")


def _coth_laurent(count: int) -> list[Fraction]:
    """Laurent coefficients b_{-1}, b_0, ... of 1/(e^{2x} - 1) = sum_n B_n 2^{n-1} x^{n-1} / n!."""
    return [bernoulli_poly(n)(0) * Fraction(2) ** (n - 1) / math.factorial(n) for n in range(count)]


def pole_case(order: int, shift: Fraction = Fraction(1)) -> ExpansionInput:
    """f(x) = e^{-2x} / (1 - e^{-2x}) with a simple pole of residue 1/2 at 0.

    For x >= 1: f(x) <= e^{-2x} / (1 - e^{-2}) < 1.16 e^{-2x}.
    """
    return ExpansionInput(lambda x: 1 / mp.expm1(2 * x), _coth_laurent(order + 4), Fraction(shift), order,
                          1.16, 2.0, decay_from=1.0, pole=True, name="pole")


CASES = {
    "exponential": ("plain", exponential_case),
    "gaussian-moment": ("plain", gaussian_moment_case),
    "alternating-exponential": ("alternating", lambda N: exponential_case(N, Fraction(0))),
    "alternating-gaussian": ("alternating", gaussian_case),
    "pole": ("pole", pole_case),
}


def run_case(name: str, order: int, w: float) -> EMResult:
    kind, factory = CASES[name]
    inp = factory(order)
    if kind == "alternating":
        return em_expand_alternating(inp, w)
    if kind == "pole":
        return em_expand_pole(inp, w)
    return em_expand(inp, w)


def narrow_gaussian_difference(order: int, w: float) -> EMResult:
    """x^2 e^{-3x^2} summed at shift 1/3 minus shift 2/3."""
    return em_difference(narrow_gaussian_moment_case(order, Fraction(1, 3)),
                         narrow_gaussian_moment_case(order, Fraction(2, 3)), w)
