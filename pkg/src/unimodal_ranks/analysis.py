"""Exact moments, limit-law comparisons and log-concavity scans over rank tables."""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import asymptotics as asy
from .special import logistic_cdf
from .tables import Family, RankTable


class Kind(str, Enum):
    SIGNED = "signed"
    ABSOLUTE = "absolute"


class Verdict(str, Enum):
    MONOTONE = "monotone-toward-1"
    WITHIN = "within-tolerance"
    FAIL = "fail"


class GridError(ValueError):
    pass


def _check_grid(table: RankTable, grid: Sequence[int]) -> None:
    if max(grid) > table.order:
        raise GridError(f"n={max(grid)} exceeds the {table.family.value} table order {table.order}; "
                        f"run `table --family {table.family.value} --order {max(grid)}` first")


# -- moments -----------------------------------------------------------------


@dataclass(frozen=True)
class MomentVector:
    family: Family
    k: int
    kind: Kind
    values: dict[int, int]

    def __getitem__(self, n: int) -> int:
        return self.values[n]


def row_moment(table: RankTable, n: int, k: int, kind: Kind | str = Kind.SIGNED) -> int:
    absolute = Kind(kind) is Kind.ABSOLUTE
    total = 0
    for m, c in table.row(n).items():
        total += (abs(m) if absolute else m) ** k * c
    return total


def moments(table: RankTable, k: int, kind: Kind | str = Kind.SIGNED) -> MomentVector:
    """Exact sum_m m^k f(m, n) (or |m|^k) for every n of the table."""
    if k < 0:
        raise ValueError("k must be >= 0")
    kind = Kind(kind)
    return MomentVector(table.family, k, kind, {n: row_moment(table, n, k, kind) for n in range(table.order + 1)})


# -- convergence reports -----------------------------------------------------


@dataclass(frozen=True)
class ConvergenceReport:
    label: str
    grid: tuple[int, ...]
    exact: tuple[float, ...]
    main: tuple[float, ...]
    ratios: tuple[float, ...]
    tolerance: float | None
    verdict: Verdict = field(init=False)

    def __post_init__(self) -> None:
        if not all(math.isfinite(r) for r in self.ratios):
            raise ArithmeticError(f"{self.label}: non-finite ratio")
        object.__setattr__(self, "verdict", _verdict(self.ratios, self.tolerance))

    @property
    def deviations(self) -> tuple[float, ...]:
        return tuple(abs(r - 1) for r in self.ratios)

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.MONOTONE

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "grid": list(self.grid),
            "ratios": list(self.ratios),
            "tolerance": self.tolerance,
            "verdict": self.verdict.value,
        }


def _verdict(ratios: Sequence[float], tolerance: float | None) -> Verdict:
    """Final deviation within tolerance and |ratio - 1| non-increasing over the last three points."""
    dev = [abs(r - 1) for r in ratios]
    within = tolerance is None or dev[-1] <= tolerance
    tail = dev[-3:]
    trend = all(b <= a for a, b in zip(tail, tail[1:]))
    if within and trend:
        return Verdict.MONOTONE
    if within:
        return Verdict.WITHIN
    return Verdict.FAIL


def ratio_report(label: str, grid: Sequence[int], exact: Sequence[float], main: Sequence[float],
                 tolerance: float | None) -> ConvergenceReport:
    ratios = tuple(e / m for e, m in zip(exact, main))
    return ConvergenceReport(label, tuple(grid), tuple(exact), tuple(main), ratios, tolerance)


def _int_ratio(a: int, b: int) -> float:
    """a / b for big integers without overflow."""
    return float(Fraction(a, b))


def moment_main_term(family: Family | str, k: int, kind: Kind | str, n: int) -> float:
    family, kind = Family(family), Kind(kind)
    if family is Family.SEMISTRICT:
        return asy.main_term_dm_moment(k, n).value
    if family not in (Family.UNIMODAL, Family.DURFEE):
        raise ValueError(f"no moment main term for {family.value}")
    unimodal = family is Family.UNIMODAL
    if kind is Kind.ABSOLUTE and k % 2:
        fn = asy.main_term_abs_u if unimodal else asy.main_term_abs_v
        return fn(k, n).value
    if k % 2:
        raise ValueError("signed odd moments of symmetric families vanish identically")
    fn = asy.main_term_u_moment if unimodal else asy.main_term_v_moment
    return fn(k // 2, n).value


def convergence_ratio(table: RankTable, k: int, kind: Kind | str, n_grid: Sequence[int],
                      tolerance: float | None = None,
                      main_term: Callable[[int], float] | None = None) -> ConvergenceReport:
    """Exact k-th (absolute) moment over its main term along n_grid.

    k is the power of m, so the unimodal main term for k = 2 is the u_2 formula.
    """
    _check_grid(table, n_grid)
    kind = Kind(kind)
    exact = [row_moment(table, n, k, kind) for n in n_grid]
    main = [main_term(n) if main_term else moment_main_term(table.family, k, kind, n) for n in n_grid]
    label = f"{table.family.value} {'|m|' if kind is Kind.ABSOLUTE else 'm'}^{k}"
    return ratio_report(label, n_grid, [float(e) for e in exact], main, tolerance)


def absolute_signed_ratio(table: RankTable, k: int, n_grid: Sequence[int]) -> ConvergenceReport:
    """dm_k^+(n) / dm_k(n) along n_grid (trend-only)."""
    _check_grid(table, n_grid)
    ab = [row_moment(table, n, k, Kind.ABSOLUTE) for n in n_grid]
    sg = [row_moment(table, n, k, Kind.SIGNED) for n in n_grid]
    return ConvergenceReport(f"{table.family.value} |m|^{k} / m^{k}", tuple(n_grid), tuple(map(float, ab)),
                             tuple(map(float, sg)), tuple(_int_ratio(a, s) for a, s in zip(ab, sg)), None)


def normalization(family: Family | str, n: int) -> float:
    """Scale dividing the rank in the limit laws: sqrt(3n), or sqrt(n) log(n) / pi for semistrict."""
    family = Family(family)
    if family is Family.SEMISTRICT:
        return math.sqrt(n) * math.log(n) / math.pi
    return math.sqrt(3 * n)


def normalized_moment_limit(table: RankTable, k: int, n_grid: Sequence[int],
                            tolerance: float | None = None) -> ConvergenceReport:
    """Normalized k-th moment over its limit constant.

    Symmetric families tend to the logistic moment (2^k - 2)|B_k|, semistrict to 1.
    For odd k on a symmetric family the limit is 0 and the exact value is 0, so
    the reported ratio is set to 1 only if every normalized moment vanishes.
    """
    _check_grid(table, n_grid)
    exact = []
    for n in n_grid:
        total = table.row(n).total()
        exact.append(_int_ratio(row_moment(table, n, k), total) / normalization(table.family, n) ** k)
    if table.family is Family.SEMISTRICT:
        const = 1.0
    else:
        const = float(asy.logistic_moment(k))
    label = f"{table.family.value} normalized m^{k}"
    if const == 0:
        ratios = tuple(1.0 if e == 0 else math.inf for e in exact)
        return ConvergenceReport(label, tuple(n_grid), tuple(exact), tuple(0.0 for _ in exact),
                                 ratios if all(r == 1 for r in ratios) else tuple(2.0 for _ in exact), tolerance)
    return ratio_report(label, n_grid, exact, [const] * len(exact), tolerance)


# -- distributions -----------------------------------------------------------


@dataclass(frozen=True)
class StepCDF:
    """Right-continuous step CDF: value cumulative[i] on [points[i], points[i+1])."""

    points: tuple[float, ...]
    cumulative: tuple[Fraction, ...]

    def __call__(self, x: float) -> Fraction:
        i = bisect.bisect_right(self.points, x)
        return self.cumulative[i - 1] if i else Fraction(0)

    def left(self, x: float) -> Fraction:
        i = bisect.bisect_left(self.points, x)
        return self.cumulative[i - 1] if i else Fraction(0)


def empirical_cdf(table: RankTable, n: int, scale: float | None = None) -> StepCDF:
    """Distribution of rank / scale over the size-n objects (scale defaults to the family normalization)."""
    row = table.row(n)
    total = row.total()
    if total <= 0:
        raise ValueError(f"row {n} has no mass")
    if scale is None:
        scale = normalization(table.family, n) if n > 1 else 1.0
    points, cum, acc = [], [], 0
    for m, c in row.items():
        if c == 0:
            continue
        acc += c
        points.append(m / scale)
        cum.append(Fraction(acc, total))
    return StepCDF(tuple(points), tuple(cum))


class Target(str, Enum):
    LOGISTIC = "logistic"
    POINT_MASS = "point-mass-at-1"


def ks_distance_cdf(cdf: StepCDF, target: Target | str) -> float:
    """sup_x |G(x) - F(x)|, evaluated at the jumps of G."""
    target = Target(target)
    if target is Target.POINT_MASS:
        return float(max(cdf.left(1.0), 1 - cdf(1.0)))
    best = 0.0
    prev = 0.0
    for x, c in zip(cdf.points, cdf.cumulative):
        f = logistic_cdf(x)
        best = max(best, abs(prev - f), abs(float(c) - f))
        prev = float(c)
    return best


def ks_distance(table: RankTable, n: int, target: Target | str) -> float:
    return ks_distance_cdf(empirical_cdf(table, n), target)


# -- log-concavity -----------------------------------------------------------


@dataclass(frozen=True)
class RegionRule:
    name: str
    n_min: int
    margin: int  # |m| <= n - margin

    def m_bound(self, n: int) -> int:
        return n - self.margin


RULES = {
    "conjecture-4.1": (Family.UNIMODAL, RegionRule("conjecture-4.1", 37, 23)),
    "conjecture-N": (Family.PARTITION_RANK, RegionRule("conjecture-N", 123, 72)),
    "conjecture-M": (Family.PARTITION_CRANK, RegionRule("conjecture-M", 125, 71)),
}


@dataclass(frozen=True)
class LogConcavityReport:
    family: Family
    rule: str
    n_range: tuple[int, int]
    margin: int | None
    checked: int
    violations: tuple[tuple[int, int], ...]

    @property
    def certified(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "rule": self.rule,
            "n_range": list(self.n_range),
            "m_rule": f"|m| <= n - {self.margin}" if self.margin is not None else "all m",
            "checked": self.checked,
            "violations": [list(v) for v in self.violations],
            "certified": self.certified,
        }


def _scan_row(table: RankTable, n: int, m_bound: int | None) -> list[tuple[int, int, bool]]:
    row = table.row(n)
    if m_bound is None:
        if row.is_zero():
            return []
        ms = range(row.lo, row.hi + 1)
    else:
        ms = range(-m_bound, m_bound + 1)
    return [(n, m, row[m] * row[m] > row[m - 1] * row[m + 1]) for m in ms]


def scan_rows(table: RankTable, n_range: tuple[int, int], margin: int | None,
              threads: int = 1) -> Iterator[tuple[int, int, bool]]:
    """(n, m, strict inequality holds) in (n, m) order; threads do not affect the order."""
    lo, hi = n_range
    _check_grid(table, [hi])
    bound = (lambda n: n - margin) if margin is not None else (lambda n: None)
    ns = range(lo, hi + 1)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            chunks = list(pool.map(lambda n: _scan_row(table, n, bound(n)), ns))
    else:
        chunks = (_scan_row(table, n, bound(n)) for n in ns)
    for chunk in chunks:
        yield from chunk


def logconcavity_scan(table: RankTable, rule: str = "conjecture-4.1", n_range: tuple[int, int] | None = None,
                      margin: int | None = None, threads: int = 1) -> LogConcavityReport:
    """Check f(m,n)^2 > f(m-1,n) f(m+1,n) exactly over a region.

    Named rules fix the family and the region |m| <= n - margin for n >= n_min;
    ``n_range`` then only sets the upper end (and may raise the lower one).
    ``rule="custom"`` uses ``n_range`` and ``margin`` as given (margin None: whole support).
    """
    if rule == "custom":
        if n_range is None:
            raise ValueError("custom rule needs n_range")
    else:
        if rule not in RULES:
            raise ValueError(f"unknown rule {rule!r}")
        family, region = RULES[rule]
        if table.family is not family:
            raise ValueError(f"{rule} concerns {family.value} tables, got {table.family.value}")
        margin = region.margin
        hi = n_range[1] if n_range else table.order
        lo = max(region.n_min, n_range[0]) if n_range else region.n_min
        n_range = (lo, hi)
    checked, bad = 0, []
    for n, m, ok in scan_rows(table, n_range, margin, threads):
        checked += 1
        if not ok:
            bad.append((n, m))
    return LogConcavityReport(table.family, rule, tuple(n_range), margin, checked, tuple(bad))


# -- discriminant ------------------------------------------------------------


def discriminant(table: RankTable, m: int, n: int) -> int:
    return table(m, n) ** 2 - table(m - 1, n) * table(m + 1, n)


def lemma42_discriminant_check(table: RankTable, m: int, n_grid: Sequence[int],
                               tolerance: float | None = None) -> ConvergenceReport:
    """Exact discriminant at fixed m over (pi^6/2) X_3(n) X_5(n)."""
    if abs(m) > 3:
        raise ValueError("the Bessel main term is meant for small |m|")
    _check_grid(table, n_grid)
    exact = [float(discriminant(table, m, n)) for n in n_grid]
    main = [asy.discriminant_main_term(n) for n in n_grid]
    return ratio_report(f"{table.family.value} discriminant m={m}", n_grid, exact, main, tolerance)
