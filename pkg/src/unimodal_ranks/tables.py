"""Exact rank tables f(m, n) for unimodal, Durfee, semi-strict sequences and partitions.

The builders expand the generating functions term by term.  The inner loop
works on rows packed into single Python integers (Kronecker substitution,
zeta -> 2^B), so that one shift-and-add of a big integer updates a whole
zeta-row.  Row j is stored with offset j, i.e. the coefficient of zeta^m sits
in slot m + j; all families in scope satisfy |m| <= j.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Sequence

from .series import ZERO, ZetaLaurent

log = logging.getLogger(__name__)


class Family(str, Enum):
    UNIMODAL = "unimodal"
    DURFEE = "durfee"
    SEMISTRICT = "semistrict"
    PARTITION_RANK = "partition-rank"
    PARTITION_CRANK = "partition-crank"

    @property
    def symmetric(self) -> bool:
        return self is not Family.SEMISTRICT


@dataclass(frozen=True)
class RankTable:
    """rows[n] is the Laurent polynomial sum_m f(m, n) zeta^m, for 0 <= n <= order."""

    family: Family
    order: int
    rows: tuple[ZetaLaurent, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} rows, got {len(self.rows)}")

    def row(self, n: int) -> ZetaLaurent:
        if not 0 <= n <= self.order:
            raise IndexError(f"n={n} outside table of order {self.order}")
        return self.rows[n]

    def __call__(self, m: int, n: int) -> int:
        return self.row(n)[m]

    def totals(self) -> list[int]:
        return [r.total() for r in self.rows]

    def support(self, n: int) -> tuple[int, int] | None:
        r = self.row(n)
        if r.is_zero():
            return None
        return r.lo, r.hi

    def truncate(self, order: int) -> RankTable:
        if order > self.order:
            raise ValueError(f"table has order {self.order} < {order}")
        return RankTable(self.family, order, self.rows[: order + 1])

    def __iter__(self) -> Iterator[ZetaLaurent]:
        return iter(self.rows)


# -- kernels -----------------------------------------------------------------


class _PackedRows:
    """Truncated bivariate series; row j is an int with zeta^m at bit offset (m + j) * bits."""

    def __init__(self, order: int, bits: int):
        self.order = order
        self.bits = bits
        self.rows = [0] * (order + 1)

    def set_monomial(self, m: int, j: int, c: int = 1) -> None:
        self.rows[j] = c << ((m + j) * self.bits)

    def shift_q(self, d: int, start: int) -> None:
        """Multiply by q^d; rows below ``start`` are known to be zero."""
        rows, sh = self.rows, d * self.bits
        for j in range(self.order, max(start, 0) + d - 1, -1):
            src = rows[j - d]
            rows[j] = src << sh if src else 0
        for j in range(max(start, 0), min(start + d, self.order + 1)):
            rows[j] = 0

    def mul_binomial(self, sign: int, e: int, d: int, start: int) -> None:
        """Multiply by (1 - sign zeta^e q^d)."""
        rows, sh = self.rows, (d + e) * self.bits
        for j in range(self.order, start + d - 1, -1):
            src = rows[j - d]
            if src:
                if sign > 0:
                    rows[j] -= src << sh
                else:
                    rows[j] += src << sh

    def div_binomial(self, sign: int, e: int, d: int, start: int) -> None:
        """Divide by (1 - sign zeta^e q^d), d >= 1."""
        rows, sh = self.rows, (d + e) * self.bits
        for j in range(start + d, self.order + 1):
            src = rows[j - d]
            if src:
                if sign > 0:
                    rows[j] += src << sh
                else:
                    rows[j] -= src << sh

    def add_into(self, acc: list[int], start: int) -> None:
        rows = self.rows
        for j in range(start, self.order + 1):
            if rows[j]:
                acc[j] += rows[j]


class _ScalarRows:
    """Same interface at zeta = 1: plain integer coefficients."""

    def __init__(self, order: int, bits: int = 0):
        self.order = order
        self.rows = [0] * (order + 1)

    def set_monomial(self, m: int, j: int, c: int = 1) -> None:
        self.rows[j] = c

    def shift_q(self, d: int, start: int) -> None:
        rows = self.rows
        for j in range(self.order, max(start, 0) + d - 1, -1):
            rows[j] = rows[j - d]
        for j in range(max(start, 0), min(start + d, self.order + 1)):
            rows[j] = 0

    def mul_binomial(self, sign: int, e: int, d: int, start: int) -> None:
        rows = self.rows
        for j in range(self.order, start + d - 1, -1):
            rows[j] -= sign * rows[j - d]

    def div_binomial(self, sign: int, e: int, d: int, start: int) -> None:
        rows = self.rows
        for j in range(start + d, self.order + 1):
            rows[j] += sign * rows[j - d]

    def add_into(self, acc: list[int], start: int) -> None:
        rows = self.rows
        for j in range(start, self.order + 1):
            acc[j] += rows[j]


Kernel = Callable[[int, int], "_PackedRows | _ScalarRows"]
Progress = Callable[[int, int], None]


def _unimodal(N: int, kernel: Kernel, bits: int, progress: Progress | None) -> list[int]:
    # sum_c q^c / (zeta q, zeta^-1 q)_c
    t = kernel(N, bits)
    t.set_monomial(0, 0)
    acc = [0] * (N + 1)
    t.add_into(acc, 0)
    for c in range(1, N + 1):
        t.shift_q(1, c - 1)
        t.div_binomial(1, 1, c, c)
        t.div_binomial(1, -1, c, c)
        t.add_into(acc, c)
        if progress:
            progress(c, N)
    return acc


def _durfee(N: int, kernel: Kernel, bits: int, progress: Progress | None) -> list[int]:
    # sum_n (q^{n+1})_n q^n / (zeta q, zeta^-1 q)_n; term_n / term_{n-1} =
    # q (1 - q^{2n-1})(1 - q^{2n}) / ((1 - q^n)(1 - zeta q^n)(1 - zeta^-1 q^n))
    t = kernel(N, bits)
    t.set_monomial(0, 0)
    acc = [0] * (N + 1)
    t.add_into(acc, 0)
    for n in range(1, N + 1):
        t.shift_q(1, n - 1)
        t.mul_binomial(1, 0, 2 * n - 1, n)
        t.mul_binomial(1, 0, 2 * n, n)
        t.div_binomial(1, 0, n, n)
        t.div_binomial(1, 1, n, n)
        t.div_binomial(1, -1, n, n)
        t.add_into(acc, n)
        if progress:
            progress(n, N)
    return acc


def _semistrict(N: int, kernel: Kernel, bits: int, progress: Progress | None) -> list[int]:
    # sum_n q^{n+1} (-zeta^-1 q)_n / (zeta q)_n
    t = kernel(N, bits)
    acc = [0] * (N + 1)
    if N == 0:
        return acc
    t.set_monomial(0, 1)
    t.add_into(acc, 1)
    for n in range(1, N):
        t.shift_q(1, n)
        t.mul_binomial(-1, -1, n, n + 1)
        t.div_binomial(1, 1, n, n + 1)
        t.add_into(acc, n + 1)
        if progress:
            progress(n, N)
    return acc


def _crank(N: int, kernel: Kernel, bits: int, progress: Progress | None) -> list[int]:
    # (q)_inf / (zeta q, zeta^-1 q)_inf
    t = kernel(N, bits)
    t.set_monomial(0, 0)
    for d in range(1, N + 1):
        t.mul_binomial(1, 0, d, 0)
    for d in range(1, N + 1):
        t.div_binomial(1, 1, d, 0)
        t.div_binomial(1, -1, d, 0)
        if progress:
            progress(d, N)
    acc = [0] * (N + 1)
    t.add_into(acc, 0)
    return acc


def _dyson_rank(N: int, kernel: Kernel, bits: int, progress: Progress | None) -> list[int]:
    # sum_n q^{n^2} / (zeta q, zeta^-1 q)_n
    t = kernel(N, bits)
    t.set_monomial(0, 0)
    acc = [0] * (N + 1)
    t.add_into(acc, 0)
    n = 1
    while n * n <= N:
        t.shift_q(2 * n - 1, (n - 1) ** 2)
        t.div_binomial(1, 1, n, n * n)
        t.div_binomial(1, -1, n, n * n)
        t.add_into(acc, n * n)
        if progress:
            progress(n * n, N)
        n += 1
    return acc


_RECIPES = {
    Family.UNIMODAL: _unimodal,
    Family.DURFEE: _durfee,
    Family.SEMISTRICT: _semistrict,
    Family.PARTITION_CRANK: _crank,
    Family.PARTITION_RANK: _dyson_rank,
}


def row_totals(family: Family | str, N: int) -> list[int]:
    """f(n) = sum_m f(m, n) for n <= N, from the generating function at zeta = 1."""
    family = Family(family)
    return _RECIPES[family](N, _ScalarRows, 0, None)


def _unpack_row(x: int, j: int, bits: int) -> ZetaLaurent:
    if not x:
        return ZERO
    nslots = 2 * j + 1
    width = bits // 8
    raw = x.to_bytes(nslots * width + 1, "little", signed=True)
    full, half = 1 << bits, 1 << (bits - 1)
    out = []
    carry = 0
    frm = int.from_bytes
    for i in range(nslots):
        v = frm(raw[i * width:(i + 1) * width], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out.append(v)
    return ZetaLaurent.make(-j, out)


def _slot_bits(totals: Sequence[int]) -> int:
    # every coefficient is bounded by its row total (all entries are nonnegative
    # except the crank's M(0, 1) = -1); one sign bit plus a byte of slack
    need = max((abs(t).bit_length() for t in totals), default=1) + 2
    return 8 * (need // 8 + 2)


def _log_progress(family: Family) -> Progress:
    step = 100

    def report(n: int, N: int) -> None:
        if n % step == 0 or n == N:
            log.info("%s: %d/%d", family.value, n, N)

    return report


def build_table(family: Family | str, N: int, progress: bool = False) -> RankTable:
    """Build the exact table for ``family`` up to order N (no caching)."""
    family = Family(family)
    if N < 0:
        raise ValueError(f"order must be >= 0, got {N}")
    totals = row_totals(family, N)
    bits = _slot_bits(totals)
    packed = _RECIPES[family](N, _PackedRows, bits, _log_progress(family) if progress else None)
    rows = tuple(_unpack_row(x, j, bits) for j, x in enumerate(packed))
    for n, (r, t) in enumerate(zip(rows, totals)):
        if r.total() != t:
            raise ArithmeticError(f"{family.value}: row {n} total {r.total()} != {t}")
    return RankTable(family, N, rows)


def build_unimodal_table(N: int) -> RankTable:
    return build_table(Family.UNIMODAL, N)


def build_durfee_table(N: int) -> RankTable:
    return build_table(Family.DURFEE, N)


def build_semistrict_table(N: int) -> RankTable:
    return build_table(Family.SEMISTRICT, N)


def build_crank_table(N: int) -> RankTable:
    return build_table(Family.PARTITION_CRANK, N)


def build_partition_rank_table(N: int) -> RankTable:
    return build_table(Family.PARTITION_RANK, N)


def partition_counts(N: int) -> list[int]:
    """p(n) for n <= N by the usual coin-change dynamic programme."""
    p = [1] + [0] * N
    for part in range(1, N + 1):
        for n in range(part, N + 1):
            p[n] += p[n - part]
    return p
