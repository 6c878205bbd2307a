"""Coefficientwise checks of the decompositions U = C G1 + H1, V = C G2 + H2, D = D* + corr.

Both sides are assembled with the generic series arithmetic; the left sides
are the defining sums over the peak, the right sides are products and
partial theta sums.  A mismatch is reported, not raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .series import (
    BivariateSeries,
    ZetaLaurent,
    pochhammer_infinite,
    series_invert,
    series_mul,
)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    order: int
    holds: bool
    first_mismatch: int | None = None
    lhs: ZetaLaurent | None = None
    rhs: ZetaLaurent | None = None

    def to_dict(self) -> dict:
        out = {"identity": self.name, "order": self.order, "holds": self.holds}
        if not self.holds:
            out["first_mismatch_q_order"] = self.first_mismatch
            out["lhs"] = self.lhs.to_dict() if self.lhs else {}
            out["rhs"] = self.rhs.to_dict() if self.rhs else {}
        return out


def compare(name: str, lhs: BivariateSeries, rhs: BivariateSeries) -> IdentityReport:
    for n, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return IdentityReport(name, lhs.order, False, n, a, b)
    return IdentityReport(name, lhs.order, True)


# -- building blocks ---------------------------------------------------------


def q_pochhammer_inf(N: int) -> BivariateSeries:
    """(q; q)_inf."""
    return pochhammer_infinite([(0, 1, 1)], N)


def crank_series(N: int) -> BivariateSeries:
    """C(zeta; q) = (q)_inf / (zeta q, zeta^-1 q)_inf."""
    s = q_pochhammer_inf(N)
    for d in range(1, N + 1):
        s = s.div_binomial(1, 1, d).div_binomial(1, -1, d)
    return s


def _theta(N: int, terms: Callable[[int], list[tuple[int, int, int]]], min_exp: Callable[[int], int]) -> BivariateSeries:
    out = []
    n = 0
    while min_exp(n) <= N:
        out.extend(terms(n))
        n += 1
    return BivariateSeries.from_terms(N, out)


def g1_series(N: int) -> BivariateSeries:
    theta = _theta(
        N,
        lambda n: [(2 * n + 1, n * (n + 1) // 2, (-1) ** n)],
        lambda n: n * (n + 1) // 2,
    )
    return series_mul(series_invert(q_pochhammer_inf(N)), theta)


def h1_series(N: int) -> BivariateSeries:
    def terms(n: int) -> list[tuple[int, int, int]]:
        s, e = (-1) ** n, n * (3 * n + 1) // 2
        # (1 - zeta) zeta^{3n} q^e (1 - zeta^2 q^{2n+1})
        return [
            (3 * n, e, s),
            (3 * n + 1, e, -s),
            (3 * n + 2, e + 2 * n + 1, -s),
            (3 * n + 3, e + 2 * n + 1, s),
        ]

    return _theta(N, terms, lambda n: n * (3 * n + 1) // 2)


def g2_series(N: int) -> BivariateSeries:
    def terms(n: int) -> list[tuple[int, int, int]]:
        e = 3 * n * n + 2 * n
        return [(3 * n + 1, e, 1), (3 * n + 2, e + 2 * n + 1, -1)]

    theta = _theta(N, terms, lambda n: 3 * n * n + 2 * n)
    return series_mul(series_invert(q_pochhammer_inf(N)), theta)


def h2_series(N: int) -> BivariateSeries:
    def terms(n: int) -> list[tuple[int, int, int]]:
        e = n * n + n
        return [(n, e, 1), (n + 1, e, -1)]

    return _theta(N, terms, lambda n: n * n + n)


def unimodal_series(N: int) -> BivariateSeries:
    """U(zeta; q) = sum_n q^n / (zeta q, zeta^-1 q)_n."""
    term = BivariateSeries.one(N)
    total = term
    for n in range(1, N + 1):
        term = term.shift_q(1).div_binomial(1, 1, n).div_binomial(1, -1, n)
        total = total + term
    return total


def durfee_series(N: int) -> BivariateSeries:
    """V(zeta; q) = sum_n (q^{n+1})_n q^n / (zeta q, zeta^-1 q)_n, each term built afresh."""
    total = BivariateSeries.one(N)
    for n in range(1, N + 1):
        term = BivariateSeries.monomial(N, 0, n)
        for i in range(n + 1, 2 * n + 1):
            if i > N:
                break
            term = term.mul_binomial(1, 0, i)
        for d in range(1, n + 1):
            term = term.div_binomial(1, 1, d).div_binomial(1, -1, d)
        total = total + term
    return total


def semistrict_series(N: int) -> BivariateSeries:
    """D(zeta; q) = sum_n q^{n+1} (-zeta^-1 q)_n / (zeta q)_n."""
    total = BivariateSeries.zero(N)
    if N == 0:
        return total
    term = BivariateSeries.monomial(N, 0, 1)
    total = total + term
    for n in range(1, N):
        term = term.shift_q(1).mul_binomial(-1, -1, n).div_binomial(1, 1, n)
        total = total + term
    return total


def d_star_series(N: int) -> BivariateSeries:
    """D*(zeta; q) = q (-zeta^-1 q)_inf / (zeta (1 + zeta^-2 q) (zeta q)_inf)."""
    s = pochhammer_infinite([(-1, 1, -1)], N)
    for d in range(1, N + 1):
        s = s.div_binomial(1, 1, d)
    return s.div_binomial(-1, -2, 1).shift_zeta(-1).shift_q(1) if N >= 1 else BivariateSeries.zero(N)


def d_correction_series(N: int) -> BivariateSeries:
    """q (1 - zeta^-1) / (1 + zeta^-2 q)."""
    num = BivariateSeries.from_terms(N, [(0, 1, 1), (-1, 1, -1)])
    return num.div_binomial(-1, -2, 1)


def _perturbed(s: BivariateSeries, at: int | None) -> BivariateSeries:
    if at is None or at > s.order:
        return s
    return s + BivariateSeries.monomial(s.order, 1, at)


# -- the identities ----------------------------------------------------------


def verify_identity_U(N: int, perturb: int | None = None) -> IdentityReport:
    """U = C G1 + H1 to order N; ``perturb`` adds zeta q^perturb to G1 (detector self-test)."""
    rhs = series_mul(crank_series(N), _perturbed(g1_series(N), perturb)) + h1_series(N)
    return compare("U", unimodal_series(N), rhs)


def verify_identity_V(N: int, perturb: int | None = None) -> IdentityReport:
    rhs = series_mul(crank_series(N), _perturbed(g2_series(N), perturb)) + h2_series(N)
    return compare("V", durfee_series(N), rhs)


def verify_identity_D(N: int, perturb: int | None = None) -> IdentityReport:
    rhs = _perturbed(d_star_series(N), perturb) + d_correction_series(N)
    return compare("D", semistrict_series(N), rhs)


IDENTITIES = {"U": verify_identity_U, "V": verify_identity_V, "D": verify_identity_D}
