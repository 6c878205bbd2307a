"""Exact truncated power series in q whose coefficients are Laurent polynomials in zeta.

Everything here is exact integer arithmetic.  A :class:`BivariateSeries`
carries its truncation order and refuses to combine with a series of a
different order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class OrderMismatchError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class DivergentProductError(ValueError):
    pass


@dataclass(frozen=True)
class ZetaLaurent:
    """Laurent polynomial sum_i coeffs[i] * zeta**(lo + i) with integer coefficients.

    Instances are always canonical: no leading/trailing zeros, and the zero
    polynomial is ``ZetaLaurent(0, ())``.  Use :meth:`make` to build from raw data.
    """

    lo: int = 0
    coeffs: tuple[int, ...] = ()

    @classmethod
    def make(cls, lo: int, coeffs: Iterable[int]) -> ZetaLaurent:
        c = list(coeffs)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        end = len(c)
        while end > start and c[end - 1] == 0:
            end -= 1
        if start == end:
            return ZERO
        return cls(lo + start, tuple(c[start:end]))

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> ZetaLaurent:
        return cls.make(exponent, (coefficient,))

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> ZetaLaurent:
        d = {m: c for m, c in d.items() if c}
        if not d:
            return ZERO
        lo, hi = min(d), max(d)
        return cls.make(lo, (d.get(m, 0) for m in range(lo, hi + 1)))

    @property
    def hi(self) -> int:
        """Largest exponent present (lo - 1 for the zero polynomial)."""
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, m: int) -> int:
        i = m - self.lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs for nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.lo + i, c

    def to_dict(self) -> dict[int, int]:
        return dict(self.items())

    def total(self) -> int:
        """Value at zeta = 1."""
        return sum(self.coeffs)

    def __add__(self, other: ZetaLaurent) -> ZetaLaurent:
        if not isinstance(other, ZetaLaurent):
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        off = self.lo - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] = c
        off = other.lo - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return ZetaLaurent.make(lo, out)

    def __neg__(self) -> ZetaLaurent:
        return ZetaLaurent(self.lo, tuple(-c for c in self.coeffs))

    def __sub__(self, other: ZetaLaurent) -> ZetaLaurent:
        if not isinstance(other, ZetaLaurent):
            return NotImplemented
        return self + (-other)

    def scale(self, k: int) -> ZetaLaurent:
        if k == 0 or not self.coeffs:
            return ZERO
        return ZetaLaurent(self.lo, tuple(k * c for c in self.coeffs))

    def __mul__(self, other: ZetaLaurent | int) -> ZetaLaurent:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, ZetaLaurent):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    out[i + j] += ai * bj
        return ZetaLaurent.make(self.lo + other.lo, out)

    __rmul__ = __mul__

    def shift(self, e: int) -> ZetaLaurent:
        """Multiply by zeta**e."""
        if not self.coeffs:
            return self
        return ZetaLaurent(self.lo + e, self.coeffs)

    def reflect(self) -> ZetaLaurent:
        """Substitute zeta -> 1/zeta."""
        if not self.coeffs:
            return self
        return ZetaLaurent(-self.hi, self.coeffs[::-1])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "ZetaLaurent(0)"
        terms = " + ".join(f"{c}*z^{m}" for m, c in self.items())
        return f"ZetaLaurent({terms})"


ZERO = ZetaLaurent(0, ())
ONE = ZetaLaurent(0, (1,))


class BivariateSeries:
    """sum_{n=0}^{order} c_n q^n + O(q^{order+1}) with ZetaLaurent coefficients c_n."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[ZetaLaurent] = ()):
        if order < 0:
            raise ValueError(f"order must be >= 0, got {order}")
        c = list(coeffs)[: order + 1]
        c.extend([ZERO] * (order + 1 - len(c)))
        self.order = order
        self.coeffs: tuple[ZetaLaurent, ...] = tuple(c)

    # constructors

    @classmethod
    def zero(cls, order: int) -> BivariateSeries:
        return cls(order)

    @classmethod
    def one(cls, order: int) -> BivariateSeries:
        return cls(order, [ONE])

    @classmethod
    def monomial(cls, order: int, zeta_exp: int, q_exp: int, coefficient: int = 1) -> BivariateSeries:
        c = [ZERO] * (order + 1)
        if 0 <= q_exp <= order:
            c[q_exp] = ZetaLaurent.monomial(zeta_exp, coefficient)
        return cls(order, c)

    @classmethod
    def from_terms(cls, order: int, terms: Iterable[tuple[int, int, int]]) -> BivariateSeries:
        """Build from (zeta exponent, q exponent, coefficient) triples; q exponents above order are dropped."""
        rows: list[dict[int, int]] = [{} for _ in range(order + 1)]
        for e, n, c in terms:
            if 0 <= n <= order:
                rows[n][e] = rows[n].get(e, 0) + c
        return cls(order, [ZetaLaurent.from_dict(r) for r in rows])

    @classmethod
    def from_q_coefficients(cls, order: int, values: Sequence[int]) -> BivariateSeries:
        """A zeta-free series sum values[n] q^n."""
        return cls(order, [ZetaLaurent.make(0, (v,)) for v in values])

    # accessors

    def __getitem__(self, n: int) -> ZetaLaurent:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self) -> Iterator[ZetaLaurent]:
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        nz = sum(1 for c in self.coeffs if c)
        return f"BivariateSeries(order={self.order}, nonzero_rows={nz})"

    def valuation(self) -> int | None:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def at_zeta_one(self) -> list[int]:
        return [c.total() for c in self.coeffs]

    def truncate(self, order: int) -> BivariateSeries:
        if order > self.order:
            raise OrderMismatchError(f"cannot extend order {self.order} to {order}")
        return BivariateSeries(order, self.coeffs[: order + 1])

    # arithmetic

    def _check(self, other: BivariateSeries) -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        return series_add(self, other)

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        self._check(other)
        return BivariateSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: BivariateSeries) -> BivariateSeries:
        return series_mul(self, other)

    def scale(self, k: int) -> BivariateSeries:
        return BivariateSeries(self.order, [a.scale(k) for a in self.coeffs])

    def shift_zeta(self, e: int) -> BivariateSeries:
        return BivariateSeries(self.order, [a.shift(e) for a in self.coeffs])

    def shift_q(self, d: int) -> BivariateSeries:
        """Multiply by q**d (d >= 0), dropping terms beyond the order."""
        if d < 0:
            raise ValueError("negative q shift")
        return BivariateSeries(self.order, [ZERO] * d + list(self.coeffs[: self.order + 1 - d]))

    def reflect(self) -> BivariateSeries:
        return BivariateSeries(self.order, [a.reflect() for a in self.coeffs])

    def invert(self) -> BivariateSeries:
        return series_invert(self)

    def mul_binomial(self, sign: int, zeta_exp: int, q_exp: int) -> BivariateSeries:
        """Multiply by (1 - sign * zeta^zeta_exp * q^q_exp)."""
        c = list(self.coeffs)
        if q_exp == 0:
            factor = ONE - ZetaLaurent.monomial(zeta_exp, sign)
            return BivariateSeries(self.order, [x * factor for x in c])
        for j in range(self.order, q_exp - 1, -1):
            src = c[j - q_exp]
            if src:
                c[j] = c[j] - src.shift(zeta_exp).scale(sign)
        return BivariateSeries(self.order, c)

    def div_binomial(self, sign: int, zeta_exp: int, q_exp: int) -> BivariateSeries:
        """Divide by (1 - sign * zeta^zeta_exp * q^q_exp), q_exp >= 1."""
        if q_exp < 1:
            raise NotInvertibleError("binomial with q-valuation 0 is not a unit 1 + O(q)")
        c = list(self.coeffs)
        for j in range(q_exp, self.order + 1):
            src = c[j - q_exp]
            if src:
                c[j] = c[j] + src.shift(zeta_exp).scale(sign)
        return BivariateSeries(self.order, c)


def series_add(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    a._check(b)
    return BivariateSeries(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])


def series_mul(a: BivariateSeries, b: BivariateSeries) -> BivariateSeries:
    a._check(b)
    N = a.order
    out = [ZERO] * (N + 1)
    bnz = [(j, y) for j, y in enumerate(b.coeffs) if y]
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in bnz:
            if i + j > N:
                break
            out[i + j] = out[i + j] + x * y
    return BivariateSeries(N, out)


def series_invert(a: BivariateSeries) -> BivariateSeries:
    """Multiplicative inverse of a series with constant term exactly 1."""
    if a.coeffs[0] != ONE:
        raise NotInvertibleError(f"constant term {a.coeffs[0]!r} is not the unit 1")
    N = a.order
    anz = [(j, x) for j, x in enumerate(a.coeffs) if j and x]
    inv = [ONE] + [ZERO] * N
    for n in range(1, N + 1):
        acc = ZERO
        for j, x in anz:
            if j > n:
                break
            prev = inv[n - j]
            if prev:
                acc = acc + x * prev
        inv[n] = -acc
    return BivariateSeries(N, inv)


Factor = tuple[int, int, int]  # (zeta exponent, q shift, sign)


def _check_factor(f: Factor) -> None:
    if f[2] not in (1, -1):
        raise ValueError(f"factor sign must be +-1, got {f[2]}")


def pochhammer_finite(factors: Sequence[Factor], n: int, order: int) -> BivariateSeries:
    """prod over factors (e, s, sign) of prod_{j<n} (1 - sign * zeta^e * q^(j+s)), truncated.

    With a single factor this is (a; q)_n for a = sign * zeta^e * q^s, e.g.
    ``[(1, 1, 1), (-1, 1, 1)]`` gives (zeta q, zeta^-1 q)_n.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    out = BivariateSeries.one(order)
    for f in factors:
        _check_factor(f)
        e, s, sign = f
        for j in range(n):
            d = j + s
            if d > order:
                break
            out = out.mul_binomial(sign, e, d)
    return out


def pochhammer_infinite(factors: Sequence[Factor], order: int) -> BivariateSeries:
    """Truncated (a; q)_infinity products; every factor needs q shift >= 1."""
    out = BivariateSeries.one(order)
    for f in factors:
        _check_factor(f)
        e, s, sign = f
        if s < 1:
            raise DivergentProductError(f"factor {f} has q-valuation {s} < 1")
        for d in range(s, order + 1):
            out = out.mul_binomial(sign, e, d)
    return out


def geometric(order: int) -> BivariateSeries:
    """sum_{n=0}^{order} q^n."""
    return BivariateSeries(order, [ONE] * (order + 1))
