import struct

import pytest

from pedcong.cache import (FORMAT_VERSION, MAGIC, CacheError, CacheVersionError, cache_filename,
                           find_cache, read_cache, read_header, write_cache)
from pedcong.series import (PED2_SPEC, PED_SPEC, EtaQuotientSpec, Ring, euler_product,
                            ped2_series, ped_series)


@pytest.mark.parametrize("series,spec", [
    (ped2_series(500), PED2_SPEC),
    (ped_series(500, Ring(8)), PED_SPEC),
    (ped2_series(500, Ring(24)), PED2_SPEC),
    (euler_product(1, 3, 200), EtaQuotientSpec(((1, 3),))),   # negative coefficients
])
def test_roundtrip(tmp_path, series, spec):
    path = write_cache(tmp_path / "x.pedc", series, spec)
    rspec, rseries = read_cache(path)
    assert rspec == spec and rseries == series


def test_header_fields(tmp_path):
    path = write_cache(tmp_path / "h.pedc", ped_series(10, Ring(8)), PED_SPEC)
    h = read_header(path)
    assert h == {"encoding": "u8", "format_version": FORMAT_VERSION, "order": 10,
                 "ring": "mod8", "spec": "(4,1)(1,-1)"}
    raw = path.read_bytes()
    assert raw[:8] == MAGIC
    assert len(raw) == 14 + struct.unpack("<I", raw[10:14])[0] + 11


def test_exact_layout(tmp_path):
    from pedcong.series import from_coefficients
    s = from_coefficients([0, -1, 256])
    raw = write_cache(tmp_path / "e.pedc", s, PED_SPEC).read_bytes()
    hlen = struct.unpack("<I", raw[10:14])[0]
    body = raw[14 + hlen:]
    assert body == struct.pack("<i", 0) + struct.pack("<i", -1) + b"\x01" + struct.pack("<i", 2) + b"\x00\x01"


def test_version_mismatch(tmp_path):
    path = write_cache(tmp_path / "v.pedc", ped_series(10, Ring(8)), PED_SPEC)
    raw = bytearray(path.read_bytes())
    raw[8:10] = struct.pack("<H", FORMAT_VERSION + 1)
    path.write_bytes(bytes(raw))
    with pytest.raises(CacheVersionError, match="pedcong compute"):
        read_cache(path)


def test_not_a_cache(tmp_path):
    p = tmp_path / "junk.pedc"
    p.write_bytes(b"hello world, not a cache")
    with pytest.raises(CacheError):
        read_cache(p)


def test_truncated_body(tmp_path):
    path = write_cache(tmp_path / "t.pedc", ped_series(10, Ring(8)), PED_SPEC)
    path.write_bytes(path.read_bytes()[:-1])
    with pytest.raises(CacheError):
        read_cache(path)


def test_find_cache(tmp_path):
    for order in (100, 1000):
        write_cache(tmp_path / cache_filename(PED_SPEC, "mod8", order), ped_series(order, Ring(8)),
                    PED_SPEC)
    assert find_cache(tmp_path, PED_SPEC, "mod8", 50).name.endswith("_100.pedc")
    assert find_cache(tmp_path, PED_SPEC, "mod8", 500).name.endswith("_1000.pedc")
    assert find_cache(tmp_path, PED_SPEC, "mod8", 5000) is None
    assert find_cache(tmp_path, PED2_SPEC, "mod8", 5) is None
