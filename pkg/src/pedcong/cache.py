"""On-disk coefficient cache.

File layout (all integers little-endian)::

    magic            8 bytes   b"PEDCOEF\\x00"
    format version   uint16    FORMAT_VERSION
    header length    uint32    byte length H of the JSON header
    header           H bytes   UTF-8 JSON, sorted keys:
                               {"encoding", "format_version", "order", "ring", "spec"}
    body             coefficients c[0..order]

``encoding`` is ``"u8"`` for modular rings (one byte per residue) and
``"varint-signed"`` for exact integers, where each coefficient is an int32
length L followed by |L| magnitude bytes; the sign of L is the sign of the
coefficient and L = 0 encodes zero.
"""
from __future__ import annotations

import json
import os
import struct
from pathlib import Path

import numpy as np

from .series import EtaQuotientSpec, TruncatedSeries, ring_from_tag

MAGIC = b"PEDCOEF\x00"
FORMAT_VERSION = 1
ENV_CACHE_DIR = "PEDCONG_CACHE_DIR"


class CacheError(ValueError):
    pass


class CacheVersionError(CacheError):
    pass


def _encode_exact(coeffs) -> bytes:
    out = bytearray()
    for c in coeffs:
        c = int(c)
        mag = abs(c).to_bytes((abs(c).bit_length() + 7) // 8, "little")
        out += struct.pack("<i", -len(mag) if c < 0 else len(mag))
        out += mag
    return bytes(out)


def _decode_exact(buf: bytes, count: int) -> np.ndarray:
    vals, pos = [], 0
    for _ in range(count):
        (ln,) = struct.unpack_from("<i", buf, pos)
        pos += 4
        mag = int.from_bytes(buf[pos:pos + abs(ln)], "little")
        pos += abs(ln)
        vals.append(-mag if ln < 0 else mag)
    if pos != len(buf):
        raise CacheError("trailing bytes after coefficient body")
    arr = np.empty(count, dtype=object)
    arr[:] = vals
    return arr


def write_cache(path, series: TruncatedSeries, spec: EtaQuotientSpec) -> Path:
    path = Path(path)
    encoding = "varint-signed" if series.ring.exact else "u8"
    header = json.dumps({"encoding": encoding, "format_version": FORMAT_VERSION,
                         "order": series.order, "ring": series.ring.tag,
                         "spec": spec.canonical()}, sort_keys=True).encode()
    if series.ring.exact:
        body = _encode_exact(series.coeffs)
    else:
        body = series.coeffs.astype(np.uint8).tobytes()
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC + struct.pack("<HI", FORMAT_VERSION, len(header)) + header + body)
    os.replace(tmp, path)
    return path


def read_header(path) -> dict:
    with open(path, "rb") as fh:
        head = fh.read(14)
        if head[:8] != MAGIC:
            raise CacheError(f"{path} is not a coefficient cache")
        version, hlen = struct.unpack("<HI", head[8:14])
        if version != FORMAT_VERSION:
            raise CacheVersionError(
                f"{path} has cache format {version}, this build reads {FORMAT_VERSION}; "
                f"re-run `pedcong compute` to regenerate it")
        return json.loads(fh.read(hlen))


def read_cache(path) -> tuple[EtaQuotientSpec, TruncatedSeries]:
    header = read_header(path)
    with open(path, "rb") as fh:
        raw = fh.read()
    body = raw[14 + struct.unpack("<I", raw[10:14])[0]:]
    ring = ring_from_tag(header["ring"])
    count = header["order"] + 1
    if header["encoding"] == "u8":
        if len(body) != count:
            raise CacheError(f"body has {len(body)} bytes, expected {count}")
        coeffs = np.frombuffer(body, np.uint8).astype(np.int64)
    elif header["encoding"] == "varint-signed":
        coeffs = _decode_exact(body, count)
    else:
        raise CacheError(f"unknown encoding {header['encoding']!r}")
    return EtaQuotientSpec.parse(header["spec"]), TruncatedSeries(coeffs, ring)


def default_cache_dir() -> Path | None:
    d = os.environ.get(ENV_CACHE_DIR)
    return Path(d) if d else None


def cache_filename(spec: EtaQuotientSpec, ring_tag: str, order: int) -> str:
    name = spec.canonical().replace(")(", "_").strip("()").replace(",", "^")
    return f"eta_{name}_{ring_tag}_{order}.pedc"


def find_cache(directory, spec: EtaQuotientSpec, ring_tag: str, min_order: int) -> Path | None:
    """Smallest cached file in ``directory`` for ``spec``/``ring_tag`` reaching ``min_order``."""
    if directory is None or not Path(directory).is_dir():
        return None
    best = None
    for p in sorted(Path(directory).glob("*.pedc")):
        try:
            h = read_header(p)
        except CacheError:
            continue
        if h["spec"] == spec.canonical() and h["ring"] == ring_tag and h["order"] >= min_order:
            if best is None or h["order"] < best[0]:
                best = (h["order"], p)
    return None if best is None else best[1]
