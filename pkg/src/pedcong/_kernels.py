"""Low-level coefficient kernels: Kronecker-substitution products and the
sparse linear recurrence used for series division.

Everything here works on bare numpy arrays; ring bookkeeping lives in
:mod:`pedcong.series`.
"""
from __future__ import annotations

import numpy as np
import numba

try:
    import gmpy2

    def _bigmul(x: int, y: int) -> int:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    def _bigmul(x: int, y: int) -> int:
        return x * y


# --------------------------------------------------------------------------
# Kronecker substitution
# --------------------------------------------------------------------------

def _slot_bytes(bits: int) -> int:
    if bits <= 32:
        return 4
    if bits <= 64:
        return 8
    return (bits + 7) // 8


def _pack_unsigned(values, width: int) -> int:
    """Concatenate non-negative integers into one big integer, ``width`` bytes each."""
    if width in (4, 8) and values.dtype != object:
        dt = np.uint32 if width == 4 else np.uint64
        return int.from_bytes(values.astype(dt).tobytes(), "little")
    return int.from_bytes(b"".join(int(v).to_bytes(width, "little") for v in values), "little")


def _unpack_unsigned(z: int, n: int, width: int, dtype):
    buf = z.to_bytes(max(n * width, (z.bit_length() + 7) // 8), "little")
    if width in (4, 8) and dtype != object:
        dt = np.uint32 if width == 4 else np.uint64
        return np.frombuffer(buf, dt, count=n)
    return np.array([int.from_bytes(buf[i * width:(i + 1) * width], "little") for i in range(n)],
                    dtype=object)


def kronecker_mul_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    """First ``n`` coefficients of ``a*b`` reduced mod ``m``.

    ``a`` and ``b`` hold residues in ``[0, m)``.
    """
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return np.zeros(n, np.int64)
    bound = (m - 1) ** 2 * min(la, lb)
    width = _slot_bytes(max(bound, 1).bit_length())
    x = _pack_unsigned(np.asarray(a[:la], np.int64), width)
    y = _pack_unsigned(np.asarray(b[:lb], np.int64), width)
    z = _bigmul(x, y)
    z &= (1 << (8 * width * n)) - 1
    out = _unpack_unsigned(z, n, width, np.int64)
    if out.dtype == object:
        return np.array([int(v) % m for v in out], np.int64)
    return (out % np.uint64(m) if out.dtype == np.uint64 else out % m).astype(np.int64)


def _max_bits(arr) -> int:
    if arr.dtype != object:
        return int(np.abs(arr).max(initial=0)).bit_length()
    return max((abs(int(v)).bit_length() for v in arr), default=0)


def _pack_signed(arr, width: int) -> int:
    if arr.dtype != object and width in (4, 8):
        pos = np.where(arr > 0, arr, 0)
        neg = np.where(arr < 0, -arr, 0)
    else:
        pos = np.array([v if v > 0 else 0 for v in arr], dtype=object)
        neg = np.array([-v if v < 0 else 0 for v in arr], dtype=object)
    return _pack_unsigned(pos, width) - _pack_unsigned(neg, width)


def kronecker_mul_exact(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` coefficients of ``a*b`` over the integers (object array out)."""
    la, lb = min(len(a), n), min(len(b), n)
    if la == 0 or lb == 0:
        return np.array([0] * n, dtype=object)
    a, b = a[:la], b[:lb]
    # one spare bit for the sign, one for rounding of the length term
    bits = _max_bits(a) + _max_bits(b) + max(min(la, lb), 1).bit_length() + 2
    width = _slot_bytes(bits)
    small = width in (4, 8) and bits <= 62
    a_arr = np.asarray(a, np.int64) if small else np.asarray(a, dtype=object)
    b_arr = np.asarray(b, np.int64) if small else np.asarray(b, dtype=object)
    z = _bigmul(_pack_signed(a_arr, width), _pack_signed(b_arr, width))
    half = 1 << (8 * width - 1)
    offset = int.from_bytes(half.to_bytes(width, "little") * n, "little")
    z = (z + offset) & ((1 << (8 * width * n)) - 1)
    raw = _unpack_unsigned(z, n, width, np.int64 if small else object)
    if raw.dtype == object:
        return np.array([int(v) - half for v in raw], dtype=object)
    if raw.dtype == np.uint64:
        vals = (raw ^ np.uint64(half)).view(np.int64)
    else:
        vals = raw.astype(np.int64) - half
    return vals.astype(object)


# --------------------------------------------------------------------------
# Sparse division recurrence
# --------------------------------------------------------------------------

@numba.njit(cache=True)
def _divide_sparse_mod(num, plus_idx, minus_idx, gen_idx, gen_val, n_out, m, inv0):
    c = np.zeros(n_out, np.int8)
    for n in range(n_out):
        s = np.int64(num[n])
        for j in range(plus_idx.size):
            i = plus_idx[j]
            if i > n:
                break
            s -= c[n - i]
        for j in range(minus_idx.size):
            i = minus_idx[j]
            if i > n:
                break
            s += c[n - i]
        for j in range(gen_idx.size):
            i = gen_idx[j]
            if i > n:
                break
            s -= gen_val[j] * c[n - i]
        c[n] = ((s % m) * inv0) % m
    return c


def divide_sparse_mod(num: np.ndarray, den: np.ndarray, m: int) -> np.ndarray:
    """Solve ``den * c = num`` mod ``m`` coefficientwise (``den[0]`` a unit).

    Cost is proportional to ``len(num) * nnz(den)``, so this is the right
    tool only when ``den`` is sparse.
    """
    if m > 127:
        raise ValueError("sparse kernel stores residues in int8; modulus too large")
    n_out = len(num)
    den = np.asarray(den[:n_out], np.int64) % m
    inv0 = pow(int(den[0]), -1, m)
    idx = np.flatnonzero(den[1:]) + 1
    vals = den[idx]
    plus = idx[vals == 1]
    minus = idx[(vals == m - 1) & (vals != 1)]
    mask = (vals != 1) & (vals != m - 1)
    out = _divide_sparse_mod(np.asarray(num, np.int64) % m, plus.astype(np.int64),
                             minus.astype(np.int64), idx[mask].astype(np.int64),
                             vals[mask].astype(np.int64), n_out, m, inv0)
    return out.astype(np.int64)


def divide_sparse_exact(num, den) -> np.ndarray:
    """Exact-integer counterpart of :func:`divide_sparse_mod`; ``den[0]`` must be ±1."""
    n_out = len(num)
    d0 = int(den[0])
    terms = [(int(i), int(den[i])) for i in np.flatnonzero(np.asarray(den[1:n_out]) != 0) + 1]
    c = [0] * n_out
    for n in range(n_out):
        s = int(num[n])
        for i, v in terms:
            if i > n:
                break
            s -= v * c[n - i]
        c[n] = s * d0  # d0 = ±1 is its own inverse
    return np.array(c, dtype=object)
