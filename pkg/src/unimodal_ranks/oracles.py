"""Brute-force enumeration of the combinatorial objects, used as independent oracles.

These walk every sequence/partition explicitly and are exponential in n;
they refuse sizes above a cap unless told otherwise.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from .series import ZetaLaurent

DEFAULT_CAP = 30


class BruteForceLimitError(ValueError):
    pass


def _guard(n: int, cap: int) -> None:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > cap:
        raise BruteForceLimitError(f"n={n} exceeds brute-force cap {cap}")


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as weakly decreasing tuples with parts <= max_part."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def distinct_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into distinct parts <= max_part, strictly decreasing."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in distinct_partitions(n - first, first - 1):
            yield (first,) + rest


def unimodal_sequences(n: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """(ascending run, peak, descending run) triples of total size n.

    The ascending run is weakly increasing, the descending run weakly
    decreasing, both bounded by the peak.  n = 0 yields the empty sequence
    as ((), 0, ()).
    """
    _guard(n, cap)
    if n == 0:
        yield (), 0, ()
        return
    for c in range(1, n + 1):
        for j in range(n - c + 1):
            for a in partitions(j, c):
                for b in partitions(n - c - j, c):
                    yield a[::-1], c, b


def durfee_square(parts: tuple[int, ...]) -> int:
    """Largest k with at least k parts >= k."""
    desc = sorted(parts, reverse=True)
    k = 0
    while k < len(desc) and desc[k] >= k + 1:
        k += 1
    return k


def _histogram(ranks: Counter) -> ZetaLaurent:
    return ZetaLaurent.from_dict(dict(ranks))


def brute_force_unimodal(n: int, cap: int = DEFAULT_CAP) -> ZetaLaurent:
    """Rank histogram sum_m u(m, n) zeta^m by direct enumeration."""
    return _histogram(Counter(len(b) - len(a) for a, _, b in unimodal_sequences(n, cap)))


def brute_force_durfee(n: int, cap: int = DEFAULT_CAP) -> ZetaLaurent:
    """Durfee unimodal sequences: the falling part next to the peak, b_s, is at
    most c - k with k the Durfee square of the rising run.

    (Bounding the number of falling parts s instead does not reproduce the
    generating function; it is not even symmetric in the rank.)
    """
    ranks: Counter = Counter()
    for a, c, b in unimodal_sequences(n, cap):
        if max(b, default=0) <= c - durfee_square(a):
            ranks[len(b) - len(a)] += 1
    return _histogram(ranks)


def semistrict_sequences(n: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[tuple[int, ...], int, tuple[int, ...]]]:
    """a_1 < ... < a_r < c > b_s >= ... >= b_1 with total n."""
    _guard(n, cap)
    for c in range(1, n + 1):
        for j in range(n - c + 1):
            for a in distinct_partitions(j, c - 1):
                for b in partitions(n - c - j, c - 1):
                    yield a[::-1], c, b


def brute_force_semistrict(n: int, cap: int = DEFAULT_CAP) -> ZetaLaurent:
    return _histogram(Counter(len(b) - len(a) for a, _, b in semistrict_sequences(n, cap)))


def dyson_rank(p: tuple[int, ...]) -> int:
    return p[0] - len(p) if p else 0


def crank(p: tuple[int, ...]) -> int:
    ones = p.count(1)
    if ones == 0:
        return p[0] if p else 0
    return sum(1 for x in p if x > ones) - ones


def brute_force_partitions(n: int, cap: int = DEFAULT_CAP) -> dict[str, object]:
    """Count, rank histogram and crank histogram of the partitions of n.

    ``crank`` follows the convention M(+-1, 1) = 1, M(0, 1) = -1 at n = 1;
    ``crank_raw`` is the plain definition (the single partition of 1 has crank -1).
    """
    _guard(n, cap)
    ranks: Counter = Counter()
    cranks: Counter = Counter()
    count = 0
    for p in partitions(n):
        count += 1
        ranks[dyson_rank(p)] += 1
        cranks[crank(p)] += 1
    raw = _histogram(cranks)
    conv = ZetaLaurent.from_dict({-1: 1, 0: -1, 1: 1}) if n == 1 else raw
    return {"count": count, "rank": _histogram(ranks), "crank": conv, "crank_raw": raw}


def brute_force(family: str, n: int, cap: int = DEFAULT_CAP) -> ZetaLaurent:
    """Histogram for any table family, dispatching on its name."""
    if family == "unimodal":
        return brute_force_unimodal(n, cap)
    if family == "durfee":
        return brute_force_durfee(n, cap)
    if family == "semistrict":
        return brute_force_semistrict(n, cap)
    if family == "partition-rank":
        return brute_force_partitions(n, cap)["rank"]  # type: ignore[return-value]
    if family == "partition-crank":
        return brute_force_partitions(n, cap)["crank"]  # type: ignore[return-value]
    raise ValueError(f"unknown family {family!r}")
