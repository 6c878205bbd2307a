import io
import logging

import pytest

from unimodal_ranks.cache import (
    CacheFormatError,
    CorruptCacheError,
    HEADER,
    cache_path,
    cached_orders,
    decode_table,
    encode_table,
    export_csv,
    get_table,
    load_cached,
    read_table,
    write_table,
)
from unimodal_ranks.tables import Family, build_table


@pytest.fixture(scope="module")
def table():
    return build_table(Family.SEMISTRICT, 30)


def test_roundtrip(table, tmp_path):
    path = write_table(table, tmp_path / "t.rktb")
    assert read_table(path) == table
    assert decode_table(encode_table(table)) == table


def test_roundtrip_large_coefficients(tmp_path):
    t = build_table(Family.UNIMODAL, 120)
    assert decode_table(encode_table(t)) == t


def test_encoding_is_deterministic(table):
    assert encode_table(table) == encode_table(build_table(Family.SEMISTRICT, 30))


def test_corruption_detected(table):
    data = bytearray(encode_table(table))
    data[-1] ^= 0x01
    with pytest.raises(CorruptCacheError):
        decode_table(bytes(data))


@pytest.mark.parametrize("offset,value", [(0, b"X"), (4, b"\x09")])
def test_bad_header(table, offset, value):
    data = bytearray(encode_table(table))
    data[offset:offset + 1] = value
    with pytest.raises(CacheFormatError):
        decode_table(bytes(data))


def test_truncated(table):
    with pytest.raises(CacheFormatError):
        decode_table(encode_table(table)[: HEADER.size - 1])


def test_load_smallest_sufficient_order(tmp_path):
    for N in (10, 25):
        write_table(build_table(Family.DURFEE, N), cache_path(tmp_path, Family.DURFEE, N))
    assert cached_orders(tmp_path, "durfee") == [10, 25]
    hit = load_cached(tmp_path, Family.DURFEE, 12)
    assert hit.order == 12 and hit == build_table(Family.DURFEE, 12)
    assert load_cached(tmp_path, Family.DURFEE, 26) is None
    assert load_cached(tmp_path, Family.UNIMODAL, 3) is None


def test_corrupt_cache_is_rebuilt(tmp_path, caplog):
    path = cache_path(tmp_path, Family.UNIMODAL, 8)
    write_table(build_table(Family.UNIMODAL, 8), path)
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0xFF
    path.write_bytes(bytes(raw))
    with caplog.at_level(logging.WARNING):
        t = get_table(Family.UNIMODAL, 8, tmp_path)
    assert t == build_table(Family.UNIMODAL, 8)
    assert read_table(path) == t
    assert any("ignoring cache file" in r.message for r in caplog.records)


def test_cache_hit_does_not_rewrite(tmp_path):
    get_table(Family.SEMISTRICT, 6, tmp_path)
    path = cache_path(tmp_path, Family.SEMISTRICT, 6)
    before = path.stat().st_mtime_ns
    get_table(Family.SEMISTRICT, 6, tmp_path)
    assert path.stat().st_mtime_ns == before


def test_export_csv():
    buf = io.StringIO()
    export_csv(build_table(Family.UNIMODAL, 3), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "family,n,m,value"
    assert "unimodal,3,0,2" in lines
    assert sum(int(l.split(",")[3]) for l in lines[1:] if l.split(",")[1] == "3") == 6
