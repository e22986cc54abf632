"""Truncated power series over Z or Z/mZ, and eta-quotient expansions.

A :class:`TruncatedSeries` carries its coefficients ``c[0..N]`` together with
the ring they live in.  Modular coefficients are stored as ``int64`` residues
in ``[0, m)``; exact coefficients as a numpy object array of Python ints.
Series are immutable: the coefficient array is marked read-only.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "Ring", "EXACT", "ring_from_tag", "TruncatedSeries", "EtaQuotientSpec",
    "one", "monomial", "from_coefficients", "series_mul", "series_mul_at",
    "ProductCoefficients", "series_inverse", "series_div", "series_add", "series_scale", "series_pow",
    "euler_product", "euler_product_naive", "pentagonal_series", "eta_quotient",
    "ped_series", "ped2_series", "PED_SPEC", "PED2_SPEC",
]

# Sparse recurrence beats Newton iteration while the divisor is sparse and the
# working array still fits in cache.
_RECURRENCE_MAX_ORDER_MOD = 4_000_000
_RECURRENCE_MAX_COST_MOD = 2 * 10**10
_RECURRENCE_MAX_COST_EXACT = 3 * 10**6

_ALLOWED_MODULI = (2, 4, 8, 3, 12, 24)


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``modulus=None`` is Z, otherwise Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus not in _ALLOWED_MODULI:
            raise ValueError(f"unsupported modulus {self.modulus}; choose from {_ALLOWED_MODULI}")

    @property
    def exact(self) -> bool:
        return self.modulus is None

    @property
    def tag(self) -> str:
        return "exact" if self.modulus is None else f"mod{self.modulus}"

    @classmethod
    def mod_pow2(cls, k: int) -> "Ring":
        if k not in (1, 2, 3):
            raise ValueError("ModPow2 supports k in {1, 2, 3}")
        return cls(2**k)

    @classmethod
    def mod_small(cls, m: int) -> "Ring":
        if m not in (3, 12, 24):
            raise ValueError("ModSmall supports m in {3, 12, 24}")
        return cls(m)

    def is_unit(self, c: int) -> bool:
        if self.modulus is None:
            return c in (1, -1)
        return gcd(c, self.modulus) == 1

    def __str__(self):
        return self.tag


EXACT = Ring()


def ring_from_tag(tag: str) -> Ring:
    """Parse ``"exact"`` or ``"mod<m>"``."""
    if tag == "exact":
        return EXACT
    if tag.startswith("mod") and tag[3:].isdigit():
        return Ring(int(tag[3:]))
    raise ValueError(f"unknown ring tag {tag!r}")


def _normalize(coeffs, ring: Ring) -> np.ndarray:
    if ring.exact:
        arr = np.empty(len(coeffs), dtype=object)
        arr[:] = [int(c) for c in coeffs]
    else:
        if isinstance(coeffs, np.ndarray) and coeffs.dtype != object:
            arr = np.mod(coeffs.astype(np.int64, copy=False), ring.modulus)
        else:
            arr = np.array([int(c) % ring.modulus for c in coeffs], dtype=np.int64)
    arr.flags.writeable = False
    return arr


class TruncatedSeries:
    """Coefficients ``c[0..order]`` of a power series in ``q``.

    >>> s = from_coefficients([1, -1, 0], EXACT)
    >>> s.order, list(s.coeffs)
    (2, [1, -1, 0])
    """

    __slots__ = ("order", "ring", "coeffs")

    def __init__(self, coeffs, ring: Ring = EXACT, *, _trusted: bool = False):
        if _trusted:
            arr = coeffs
            arr.flags.writeable = False
        else:
            arr = _normalize(coeffs, ring)
        if len(arr) == 0:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "order", len(arr) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.order == other.order and self.ring == other.ring
                and bool(np.all(self.coeffs == other.coeffs)))

    def __hash__(self):
        return hash((self.order, self.ring, tuple(int(c) for c in self.coeffs[:16])))

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries(order={self.order}, ring={self.ring}, [{head}{more}])"

    def __mul__(self, other):
        return series_mul(self, other)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __neg__(self):
        return series_scale(self, -1)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.coeffs]

    def reduce(self, ring: Ring) -> "TruncatedSeries":
        """Reduce exact (or finer modular) coefficients into ``ring``."""
        if ring == self.ring:
            return self
        if ring.exact:
            raise ValueError("cannot lift a modular series to exact integers")
        if not self.ring.exact and self.ring.modulus % ring.modulus:
            raise ValueError(f"{ring} is not a quotient of {self.ring}")
        if self.ring.exact:
            arr = np.array([int(c) % ring.modulus for c in self.coeffs], np.int64)
        else:
            arr = self.coeffs % ring.modulus
        return TruncatedSeries(arr, ring, _trusted=True)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1].copy(), self.ring, _trusted=True)

    def nonzero(self) -> np.ndarray:
        return np.flatnonzero(self.coeffs != 0)


def _wrap(arr: np.ndarray, ring: Ring) -> TruncatedSeries:
    if ring.exact and arr.dtype != object:
        arr = arr.astype(object)
    return TruncatedSeries(arr, ring, _trusted=True)


def from_coefficients(coeffs: Sequence[int], ring: Ring = EXACT) -> TruncatedSeries:
    return TruncatedSeries(coeffs, ring)


def _zeros(n: int, ring: Ring) -> np.ndarray:
    if ring.exact:
        arr = np.empty(n, dtype=object)
        arr[:] = 0
        return arr
    return np.zeros(n, np.int64)


def monomial(power: int, coeff: int, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    arr = _zeros(order + 1, ring)
    if power <= order:
        arr[power] = coeff if ring.exact else coeff % ring.modulus
    return _wrap(arr, ring)


def one(order: int, ring: Ring = EXACT) -> TruncatedSeries:
    return monomial(0, 1, order, ring)


def _check_pair(f: TruncatedSeries, g: TruncatedSeries):
    if f.order != g.order:
        raise ValueError(f"order mismatch: {f.order} vs {g.order}")
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {g.ring}")


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_pair(f, g)
    arr = f.coeffs + g.coeffs
    if not f.ring.exact:
        arr %= f.ring.modulus
    return _wrap(arr, f.ring)


def series_scale(f: TruncatedSeries, k: int) -> TruncatedSeries:
    arr = f.coeffs * k
    if not f.ring.exact:
        arr = arr % f.ring.modulus
    return _wrap(arr, f.ring)


# --------------------------------------------------------------------------
# support helpers
# --------------------------------------------------------------------------

def _support_step(*arrays: np.ndarray) -> int:
    """gcd of all nonzero exponents (0 when every array is a constant)."""
    g = 0
    for arr in arrays:
        idx = np.flatnonzero(arr[1:] != 0) + 1
        if idx.size:
            g = gcd(g, int(np.gcd.reduce(idx)))
        if g == 1:
            return 1
    return g


def _decimate(arr: np.ndarray, step: int) -> np.ndarray:
    return arr[::step]


def _stretch(arr: np.ndarray, step: int, n: int, ring: Ring) -> np.ndarray:
    out = _zeros(n, ring)
    src = arr[: (n - 1) // step + 1]
    out[::step] = src
    return out


def _mul_arrays(a: np.ndarray, b: np.ndarray, n: int, ring: Ring) -> np.ndarray:
    if n <= 16:
        out = _zeros(n, ring)
        for i in np.flatnonzero(a[:n] != 0):
            ai = a[i]
            for j in np.flatnonzero(b[: n - i] != 0):
                out[i + j] += ai * b[j]
        if not ring.exact:
            out %= ring.modulus
        return out
    if ring.exact:
        return _kernels.kronecker_mul_exact(a, b, n)
    return _kernels.kronecker_mul_mod(a, b, n, ring.modulus)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the common order.

    >>> f = from_coefficients([1, 1, 0]); g = from_coefficients([1, -1, 0])
    >>> series_mul(f, g).tolist()
    [1, 0, -1]
    """
    _check_pair(f, g)
    n = f.order + 1
    step = _support_step(f.coeffs, g.coeffs)
    if step > 1:
        m = (n - 1) // step + 1
        prod = _mul_arrays(_decimate(f.coeffs, step), _decimate(g.coeffs, step), m, f.ring)
        return _wrap(_stretch(prod, step, n, f.ring), f.ring)
    return _wrap(_mul_arrays(f.coeffs, g.coeffs, n, f.ring), f.ring)


def series_mul_at(f: TruncatedSeries, g: TruncatedSeries, indices: Iterable[int]) -> dict[int, int]:
    """Coefficients of ``f*g`` at selected exponents only.

    Each coefficient is a single dot product, so this is the cheap route when
    a handful of far-out coefficients of a product are needed.
    """
    _check_pair(f, g)
    out = {}
    a, b = f.coeffs, g.coeffs
    for k in indices:
        k = int(k)
        if not 0 <= k <= f.order:
            raise ValueError(f"index {k} outside [0, {f.order}]")
        if f.ring.exact:
            out[k] = int(np.dot(a[: k + 1], b[k::-1]))
        else:
            m = f.ring.modulus
            # int64 dot cannot overflow: (m-1)^2 * len < 2^63 for m <= 24
            out[k] = int(np.dot(a[: k + 1], b[k::-1])) % m
    return out


class ProductCoefficients:
    """Read-only view of ``f*g`` whose coefficients are computed on demand.

    Indexable like a series, so the congruence verifier can use it where the
    full product would be too large to form.
    """

    def __init__(self, f: TruncatedSeries, g: TruncatedSeries):
        _check_pair(f, g)
        self.f, self.g = f, g
        self.order, self.ring = f.order, f.ring

    def __getitem__(self, k: int) -> int:
        return series_mul_at(self.f, self.g, [k])[int(k)]


def series_pow(f: TruncatedSeries, e: int) -> TruncatedSeries:
    if e < 0:
        return series_pow(series_inverse(f), -e)
    result, base = one(f.order, f.ring), f
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


# --------------------------------------------------------------------------
# inversion and division
# --------------------------------------------------------------------------

def _unit_inverse(c: int, ring: Ring) -> int:
    if ring.exact:
        return int(c)
    return pow(int(c), -1, ring.modulus)


def _newton_inverse(f: np.ndarray, n: int, ring: Ring) -> np.ndarray:
    g = _zeros(1, ring)
    g[0] = _unit_inverse(f[0], ring)
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = _mul_arrays(f[:k], g, k, ring)
        err = -fg
        err[0] += 2
        if not ring.exact:
            err %= ring.modulus
        g = _mul_arrays(g, err, k, ring)
    return g


def _use_recurrence(den: np.ndarray, n: int, ring: Ring) -> bool:
    nnz = int(np.count_nonzero(den[1:n]))
    if ring.exact:
        return nnz * n <= _RECURRENCE_MAX_COST_EXACT
    return n <= _RECURRENCE_MAX_ORDER_MOD and nnz * n <= _RECURRENCE_MAX_COST_MOD


def _divide_arrays(num: np.ndarray, den: np.ndarray, ring: Ring, method: str) -> np.ndarray:
    n = len(num)
    if method == "auto":
        method = "recurrence" if _use_recurrence(den, n, ring) else "newton"
    if method == "recurrence":
        if ring.exact:
            return _kernels.divide_sparse_exact(num, den)
        return _kernels.divide_sparse_mod(num, den, ring.modulus)
    if method == "newton":
        inv = _newton_inverse(den, n, ring)
        return _mul_arrays(num, inv, n, ring)
    raise ValueError(f"unknown method {method!r}")


def series_div(num: TruncatedSeries, den: TruncatedSeries, method: str = "auto") -> TruncatedSeries:
    """``num / den``; the constant term of ``den`` must be a unit.

    ``method`` is ``"recurrence"`` (sparse linear recurrence, cost ~ N * nnz(den)),
    ``"newton"`` (Newton iteration on fast products) or ``"auto"``.
    """
    _check_pair(num, den)
    d0 = int(den.coeffs[0])
    if not den.ring.is_unit(d0):
        raise ArithmeticError(f"constant term {d0} is not a unit in {den.ring}")
    n = num.order + 1
    step = _support_step(num.coeffs, den.coeffs)
    if step > 1:
        q = _divide_arrays(_decimate(num.coeffs, step), _decimate(den.coeffs, step), num.ring, method)
        return _wrap(_stretch(q, step, n, num.ring), num.ring)
    return _wrap(_divide_arrays(num.coeffs, den.coeffs, num.ring, method), num.ring)


def series_inverse(f: TruncatedSeries, method: str = "auto") -> TruncatedSeries:
    """Multiplicative inverse of ``f`` to the same order.

    >>> series_inverse(from_coefficients([1, -1, 0, 0])).tolist()
    [1, 1, 1, 1]
    """
    return series_div(one(f.order, f.ring), f, method=method)


# --------------------------------------------------------------------------
# eta products
# --------------------------------------------------------------------------

def pentagonal_series(order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """``(q;q)_inf`` to ``order`` via Euler's pentagonal number theorem."""
    arr = _zeros(order + 1, ring)
    arr[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 <= order:
        sign = -1 if k % 2 else 1
        for e in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if e <= order:
                arr[e] += sign
        k += 1
    if not ring.exact:
        arr %= ring.modulus
    return _wrap(arr, ring)


def euler_product(a: int, e: int, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """Truncation of ``(q^a; q^a)_inf ** e``.

    The base case ``e = +-1`` comes from the pentagonal expansion (inverted by
    the sparse recurrence for ``e = -1``); other exponents are powers of it.

    >>> euler_product(1, 1, 7).tolist()
    [1, -1, -1, 0, 0, 1, 0, 1]
    >>> euler_product(1, -1, 5).tolist()
    [1, 1, 2, 3, 5, 7]
    """
    if a < 1:
        raise ValueError("step a must be positive")
    if e == 0:
        raise ValueError("exponent e must be nonzero")
    if order < 0:
        raise ValueError("order must be non-negative")
    m = order // a
    base = pentagonal_series(m, ring)
    if e < 0:
        base = series_inverse(base)
    result = series_pow(base, abs(e)) if abs(e) > 1 else base
    if a == 1:
        return result
    return _wrap(_stretch(result.coeffs, a, order + 1, ring), ring)


def euler_product_naive(a: int, e: int, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """Same as :func:`euler_product` but multiplying out factor by factor.

    Kept as an independent check on the pentagonal route.
    """
    if a < 1 or e == 0 or order < 0:
        raise ValueError("need a >= 1, e != 0, order >= 0")
    arr = _zeros(order + 1, ring)
    arr[0] = 1
    n = order + 1
    for s in range(a, order + 1, a):
        for _ in range(abs(e)):
            if e > 0:
                # multiply by (1 - q^s)
                arr[s:] = arr[s:] - arr[:-s].copy()
            else:
                # divide by (1 - q^s): prefix sums along each residue class mod s
                pad = (-n) % s
                block = np.concatenate([arr, _zeros(pad, ring)]).reshape(-1, s)
                arr = np.cumsum(block, axis=0).reshape(-1)[:n]
                if ring.exact:
                    arr = arr.astype(object)
            if not ring.exact:
                arr %= ring.modulus
    return _wrap(arr, ring)


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A product of factors ``(q^step; q^step)_inf ** exponent``."""

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple((int(a), int(e)) for a, e in self.factors)
        for a, e in cleaned:
            if a < 1:
                raise ValueError(f"step must be positive, got {a}")
            if e == 0:
                raise ValueError("exponents must be nonzero")
        object.__setattr__(self, "factors", cleaned)

    def canonical(self) -> str:
        """Stable text form, e.g. ``"(4,1)(1,-1)"``; used as the cache key."""
        return "".join(f"({a},{e})" for a, e in self.factors) or "()"

    @classmethod
    def parse(cls, text: str) -> "EtaQuotientSpec":
        text = text.strip()
        if text == "()":
            return cls(())
        parts = text.strip("()").split(")(")
        return cls(tuple(tuple(int(x) for x in p.split(",")) for p in parts))


PED_SPEC = EtaQuotientSpec(((4, 1), (1, -1)))
PED2_SPEC = EtaQuotientSpec(((4, 2), (1, -2)))


def eta_quotient(spec: EtaQuotientSpec, order: int, ring: Ring = EXACT,
                 method: str = "auto") -> TruncatedSeries:
    """Expand an eta quotient.

    Positive factors are multiplied together; each negative factor is divided
    out one power at a time, so every division is by the sparse pentagonal
    series and can use the cheap recurrence.
    """
    num = one(order, ring)
    for a, e in spec.factors:
        if e > 0:
            num = series_mul(num, euler_product(a, e, order, ring))
    for a, e in spec.factors:
        if e < 0:
            den = euler_product(a, 1, order, ring)
            for _ in range(-e):
                num = series_div(num, den, method=method)
    return num


def ped_series(order: int, ring: Ring = EXACT, method: str = "auto") -> TruncatedSeries:
    """Partitions with distinct even parts: ``(q^4;q^4)/(q;q)``.

    >>> ped_series(4).tolist()
    [1, 1, 2, 3, 4]
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    return eta_quotient(PED_SPEC, order, ring, method)


def ped2_series(order: int, ring: Ring = EXACT, method: str = "auto") -> TruncatedSeries:
    """Bipartitions with distinct even parts: ``(q^4;q^4)^2/(q;q)^2``.

    >>> ped2_series(5).tolist()
    [1, 2, 5, 10, 18, 32]
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    return eta_quotient(PED2_SPEC, order, ring, method)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
