"""Closed-form main terms for the rank moments and a Tauberian (Ingham) translator.

Float evaluators return :class:`AsymptoticEstimate`.  The ``*_symbolic``
helpers build the same expressions in sympy with exact constants, so that
two routes to a main term can be compared as functions of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import sympy as sp

from .special import (
    DomainError,
    bernoulli_poly,
    bessel_i,
    bessel_i_scaled,
    zeta_value,
)

HALF = Fraction(1, 2)


class FormulaTag(str, Enum):
    U_MOMENT = "u_2k"
    V_MOMENT = "v_2k"
    DM_MOMENT = "dm_k"
    U_ABSOLUTE = "u_k+"
    V_ABSOLUTE = "v_k+"
    INGHAM = "ingham"
    POCHHAMMER = "pochhammer"
    CRANK_MOMENT = "C_2j"
    BESSEL_U = "u(m,n) bessel"
    LEMMA_DISCRIMINANT = "discriminant"


class UnsupportedOrderError(ValueError):
    pass


@dataclass(frozen=True)
class AsymptoticEstimate:
    value: float
    formula_tag: FormulaTag
    parameters: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise OverflowError(f"{self.formula_tag.value} main term is not finite at {self.parameters}")

    def __float__(self) -> float:
        return self.value


def _b2k_half(k: int) -> Fraction:
    """(-1)^k B_{2k}(1/2); positive for every k >= 0."""
    return (-1) ** k * bernoulli_poly(2 * k)(HALF)


def main_term_u_moment(k: int, n: float) -> AsymptoticEstimate:
    """Main term of u_{2k}(n)."""
    if n <= 0:
        raise DomainError("n must be positive")
    c = float(_b2k_half(k)) * 2.0 ** (2 * k - 3) * 3.0 ** (k - 0.75)
    value = c * n ** (k - 1.25) * math.exp(2 * math.pi * math.sqrt(n / 3))
    return AsymptoticEstimate(value, FormulaTag.U_MOMENT, {"k": k, "n": n})


def main_term_v_moment(k: int, n: float) -> AsymptoticEstimate:
    """Main term of v_{2k}(n)."""
    if n <= 0:
        raise DomainError("n must be positive")
    c = float(_b2k_half(k)) * 2.0 ** (2 * k - 2) * 3.0 ** (k - 1.75)
    value = c * n ** (k - 1.25) * math.exp(2 * math.pi * math.sqrt(n / 3))
    return AsymptoticEstimate(value, FormulaTag.V_MOMENT, {"k": k, "n": n})


def main_term_dm_moment(k: int, n: float) -> AsymptoticEstimate:
    """Main term of dm_k(n) (k indexes the moment directly here)."""
    if n <= 0 or (k >= 1 and n <= 1):
        raise DomainError(f"dm_k main term needs n > 1 for k >= 1 (got k={k}, n={n})")
    value = math.log(n) ** k * n ** (k / 2 - 1) * math.exp(math.pi * math.sqrt(n)) / (16 * math.pi ** k)
    return AsymptoticEstimate(value, FormulaTag.DM_MOMENT, {"k": k, "n": n})


def _abs_constant(k: int) -> float:
    if k < 2:
        raise UnsupportedOrderError(f"absolute-moment main term needs k >= 2 (zeta({k}) diverges or degenerates)")
    return (1 - 2.0 ** (1 - k)) * math.factorial(k) * zeta_value(k) / math.pi ** k


def main_term_abs_u(k: int, n: float) -> AsymptoticEstimate:
    """Main term of u_k^+(n)."""
    value = 3.0 ** (k / 2 - 0.75) * _abs_constant(k) / 4 * n ** (k / 2 - 1.25) * math.exp(2 * math.pi * math.sqrt(n / 3))
    return AsymptoticEstimate(value, FormulaTag.U_ABSOLUTE, {"k": k, "n": n})


def main_term_abs_v(k: int, n: float) -> AsymptoticEstimate:
    """Main term of v_k^+(n)."""
    value = 3.0 ** (k / 2 - 1.75) * _abs_constant(k) / 2 * n ** (k / 2 - 1.25) * math.exp(2 * math.pi * math.sqrt(n / 3))
    return AsymptoticEstimate(value, FormulaTag.V_ABSOLUTE, {"k": k, "n": n})


def logistic_moment(k: int) -> Fraction:
    """E[X^k] for the logistic law of scale 1/pi: (2^k - 2)|B_k| (zero for odd k)."""
    if k % 2:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    return (2 ** k - 2) * abs(bernoulli_poly(k)(0))


def logistic_abs_moment(k: int) -> float:
    """E[|X|^k] = 2 k! (1 - 2^{1-k}) zeta(k) / pi^k, for k >= 2."""
    return 2 * _abs_constant(k)


# -- Tauberian translation ---------------------------------------------------


@dataclass(frozen=True)
class TauberianInput:
    """B(e^{-t}) ~ lam * log(1/t)^alpha * t^beta * exp(gamma / t) as t -> 0+.

    Fields may be floats or exact sympy numbers; :func:`ingham_translate`
    evaluates in floating point, :func:`ingham_symbolic` keeps them exact.
    """

    lam: Any
    alpha: Any
    beta: Any
    gamma: Any

    def __post_init__(self) -> None:
        if float(self.gamma) <= 0:
            raise DomainError("gamma must be positive")


def ingham_translate(t: TauberianInput, n: float) -> AsymptoticEstimate:
    """Coefficient main term b_n from the singular behaviour of B(e^{-t})."""
    lam, alpha, beta, gamma = (float(x) for x in (t.lam, t.alpha, t.beta, t.gamma))
    if n <= 0 or (alpha != 0 and n <= 1):
        raise DomainError(f"n={n} outside the translator's domain")
    c = lam * gamma ** (beta / 2 + 0.25) / (2.0 ** (alpha + 1) * math.sqrt(math.pi))
    value = c * math.log(n) ** alpha * n ** (-beta / 2 - 0.75) * math.exp(2 * math.sqrt(gamma * n))
    return AsymptoticEstimate(value, FormulaTag.INGHAM, {"n": n, "lam": lam, "alpha": alpha, "beta": beta, "gamma": gamma})


N_SYM = sp.Symbol("n", positive=True)


def ingham_symbolic(t: TauberianInput) -> sp.Expr:
    lam, alpha, beta, gamma = (sp.nsimplify(x) if not isinstance(x, sp.Basic) else x
                               for x in (t.lam, t.alpha, t.beta, t.gamma))
    n = N_SYM
    return (lam * gamma ** (beta / 2 + sp.Rational(1, 4)) / (2 ** (alpha + 1) * sp.sqrt(sp.pi))
            * sp.log(n) ** alpha * n ** (-beta / 2 - sp.Rational(3, 4)) * sp.exp(2 * sp.sqrt(gamma * n)))


def _sym(q: Fraction) -> sp.Rational:
    return sp.Rational(q.numerator, q.denominator)


def generating_function_main_term(family: str, k: int) -> TauberianInput:
    """Exact (lam, alpha, beta, gamma) of the w -> 0 main term of the k-th moment generating function.

    unimodal/durfee: c (-1)^k B_2k(1/2) (w/2pi)^{1-2k} e^{pi^2/(3w)} with c = 1/2, 1/3 (k indexes u_2k);
    semistrict: (1/(4 sqrt(pi))) Log(1/w)^k w^{1/2-k} e^{pi^2/(4w)};
    partition: 1/(q)_inf ~ sqrt(w/(2 pi)) e^{pi^2/(6w)} (k ignored).
    """
    pi = sp.pi
    if family in ("unimodal", "durfee"):
        c = sp.Rational(1, 2) if family == "unimodal" else sp.Rational(1, 3)
        lam = c * _sym(_b2k_half(k)) * (2 * pi) ** (2 * k - 1)
        return TauberianInput(lam, sp.Integer(0), sp.Integer(1 - 2 * k), pi ** 2 / 3)
    if family == "semistrict":
        return TauberianInput(1 / (4 * sp.sqrt(pi)), sp.Integer(k), sp.Rational(1, 2) - k, pi ** 2 / 4)
    if family == "partition":
        return TauberianInput(1 / sp.sqrt(2 * pi), sp.Integer(0), sp.Rational(1, 2), pi ** 2 / 6)
    raise ValueError(f"unknown family {family!r}")


def theorem_main_term_symbolic(family: str, k: int) -> sp.Expr:
    """The displayed n-asymptotic of the k-th moment (u_2k, v_2k, dm_k) as an exact sympy expression."""
    n, pi = N_SYM, sp.pi
    if family == "unimodal":
        return (_sym(_b2k_half(k)) * sp.Integer(2) ** (2 * k - 3) * sp.Integer(3) ** (k - sp.Rational(3, 4))
                * n ** (k - sp.Rational(5, 4)) * sp.exp(2 * pi * sp.sqrt(n / 3)))
    if family == "durfee":
        return (_sym(_b2k_half(k)) * sp.Integer(2) ** (2 * k - 2) * sp.Integer(3) ** (k - sp.Rational(7, 4))
                * n ** (k - sp.Rational(5, 4)) * sp.exp(2 * pi * sp.sqrt(n / 3)))
    if family == "semistrict":
        return sp.log(n) ** k * n ** (sp.Rational(k, 2) - 1) * sp.exp(pi * sp.sqrt(n)) / (16 * pi ** k)
    if family == "partition":
        return sp.exp(pi * sp.sqrt(2 * n / 3)) / (4 * n * sp.sqrt(3))
    raise ValueError(f"unknown family {family!r}")


# -- q -> 1 behaviour of products --------------------------------------------


def pochhammer_main_term(w: float) -> float:
    """sqrt(2 pi / w) exp(-pi^2 / (6 w)), the w -> 0 behaviour of (e^-w; e^-w)_inf."""
    return math.sqrt(2 * math.pi / w) * math.exp(-math.pi ** 2 / (6 * w))


def pochhammer_value(w: float) -> float:
    """(e^-w; e^-w)_inf by direct product in log space."""
    total = 0.0
    j = 1
    while True:
        x = math.exp(-w * j)
        if x < 1e-18:
            return math.exp(total)
        total += math.log1p(-x)
        j += 1


def crank_moment_main_term(j: int, w: float) -> float:
    """(-1)^j B_2j(1/2) (w / 2pi)^{1/2 - 2j} exp(pi^2 / (6w))."""
    return float(_b2k_half(j)) * (w / (2 * math.pi)) ** (0.5 - 2 * j) * math.exp(math.pi ** 2 / (6 * w))


# -- Bessel expansion of u(m, n) ---------------------------------------------


def bessel_x(j: int, n: float) -> float:
    """X_j(n) = (2 sqrt(3n))^{-j} I_j(2 pi sqrt(n/3))."""
    return (2 * math.sqrt(3 * n)) ** -j * bessel_i(j, 2 * math.pi * math.sqrt(n / 3))


def bessel_x_scaled(j: int, n: float) -> float:
    """X_j(n) exp(-2 pi sqrt(n/3)), safe for large n."""
    return (2 * math.sqrt(3 * n)) ** -j * bessel_i_scaled(j, 2 * math.pi * math.sqrt(n / 3))


def bessel_expansion_u(m: int, n: int) -> float:
    """Three-term Bessel approximation of u(m, n)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    pi = math.pi
    return (pi ** 2 / 2 * bessel_x(3, n) + pi ** 3 / 3 * bessel_x(4, n)
            + pi ** 4 / 72 * (59 - 36 * m * m) * bessel_x(5, n))


def discriminant_main_term(n: int) -> float:
    """(pi^6 / 2) X_3(n) X_5(n), the leading term of u(m,n)^2 - u(m-1,n) u(m+1,n)."""
    return math.pi ** 6 / 2 * bessel_x(3, n) * bessel_x(5, n)
