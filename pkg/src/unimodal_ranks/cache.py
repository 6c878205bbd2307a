"""On-disk table cache and CSV export.

Binary layout (all little-endian), version 1::

    header  : magic b"RKTB" | u16 version | u8 family code | u8 reserved
              | u32 order N | 32-byte SHA-256 of the body
    body    : for n = 0..N:
                u32 n | i32 lo | u32 count
                count x ( u16 byte length L | L bytes signed two's complement )

``lo`` and ``count`` describe the canonical Laurent row (zero row: lo = 0,
count = 0).  Files are named ``<family>-<N>.rktb``.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import os
import re
import struct
import tempfile
from pathlib import Path
from typing import IO

from .series import ZetaLaurent
from .tables import Family, RankTable, build_table

log = logging.getLogger(__name__)

MAGIC = b"RKTB"
VERSION = 1
HEADER = struct.Struct("<4sHBBI32s")
RECORD = struct.Struct("<IiI")
LENGTH = struct.Struct("<H")
ENV_CACHE_DIR = "UNIMODAL_RANKS_CACHE"

FAMILY_CODES = {
    Family.UNIMODAL: 0,
    Family.DURFEE: 1,
    Family.SEMISTRICT: 2,
    Family.PARTITION_RANK: 3,
    Family.PARTITION_CRANK: 4,
}
CODE_FAMILIES = {v: k for k, v in FAMILY_CODES.items()}


class CacheFormatError(ValueError):
    pass


class CorruptCacheError(CacheFormatError):
    pass


def encode_body(table: RankTable) -> bytes:
    parts: list[bytes] = []
    for n, row in enumerate(table.rows):
        parts.append(RECORD.pack(n, row.lo, len(row.coeffs)))
        for c in row.coeffs:
            raw = c.to_bytes((c.bit_length() + 8) // 8, "little", signed=True) if c else b""
            parts.append(LENGTH.pack(len(raw)))
            parts.append(raw)
    return b"".join(parts)


def encode_table(table: RankTable) -> bytes:
    body = encode_body(table)
    header = HEADER.pack(MAGIC, VERSION, FAMILY_CODES[table.family], 0, table.order, hashlib.sha256(body).digest())
    return header + body


def decode_table(data: bytes) -> RankTable:
    if len(data) < HEADER.size:
        raise CacheFormatError("truncated header")
    magic, version, code, _, order, digest = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise CacheFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise CacheFormatError(f"unsupported version {version}")
    if code not in CODE_FAMILIES:
        raise CacheFormatError(f"unknown family code {code}")
    body = memoryview(data)[HEADER.size:]
    if hashlib.sha256(body).digest() != digest:
        raise CorruptCacheError("checksum mismatch")
    rows = []
    pos = 0
    frm = int.from_bytes
    for expect in range(order + 1):
        n, lo, count = RECORD.unpack_from(body, pos)
        pos += RECORD.size
        if n != expect:
            raise CacheFormatError(f"record {expect} labelled {n}")
        coeffs = []
        for _ in range(count):
            (length,) = LENGTH.unpack_from(body, pos)
            pos += 2
            coeffs.append(frm(body[pos:pos + length], "little", signed=True))
            pos += length
        rows.append(ZetaLaurent(lo, tuple(coeffs)) if coeffs else ZetaLaurent())
    if pos != len(body):
        raise CacheFormatError("trailing bytes after last record")
    return RankTable(CODE_FAMILIES[code], order, tuple(rows))


def write_table(table: RankTable, path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(encode_table(table))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_table(path: str | os.PathLike) -> RankTable:
    return decode_table(Path(path).read_bytes())


def cache_path(cache_dir: str | os.PathLike, family: Family | str, N: int) -> Path:
    return Path(cache_dir) / f"{Family(family).value}-{N}.rktb"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "unimodal_ranks"


_NAME = re.compile(r"^(?P<family>[a-z-]+)-(?P<order>\d+)\.rktb$")


def cached_orders(cache_dir: str | os.PathLike, family: Family | str) -> list[int]:
    family = Family(family)
    d = Path(cache_dir)
    if not d.is_dir():
        return []
    out = []
    for p in d.iterdir():
        m = _NAME.match(p.name)
        if m and m["family"] == family.value:
            out.append(int(m["order"]))
    return sorted(out)


def load_cached(cache_dir: str | os.PathLike, family: Family | str, N: int) -> RankTable | None:
    """Smallest cached table of order >= N, truncated to N; corrupt files are skipped with a warning."""
    family = Family(family)
    for order in cached_orders(cache_dir, family):
        if order < N:
            continue
        path = cache_path(cache_dir, family, order)
        try:
            table = read_table(path)
        except CacheFormatError as exc:
            log.warning("ignoring cache file %s: %s", path, exc)
            continue
        if table.family is not family:
            log.warning("ignoring cache file %s: holds %s", path, table.family.value)
            continue
        return table.truncate(N)
    return None


def get_table(family: Family | str, N: int, cache_dir: str | os.PathLike | None = None,
              progress: bool = False) -> RankTable:
    """Load from cache when possible, otherwise build and store."""
    family = Family(family)
    if cache_dir is None:
        return build_table(family, N, progress=progress)
    hit = load_cached(cache_dir, family, N)
    if hit is not None:
        return hit
    table = build_table(family, N, progress=progress)
    path = cache_path(cache_dir, family, N)
    if path.exists():
        log.warning("rebuilt corrupt cache file %s", path)
    write_table(table, path)
    return table


def export_csv(table: RankTable, fh: IO[str]) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["family", "n", "m", "value"])
    for n, row in enumerate(table.rows):
        for m, c in row.items():
            w.writerow([table.family.value, n, m, c])
