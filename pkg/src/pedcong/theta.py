"""Theta series and the two eta-quotient identities they satisfy.

    (q;q)^2 / (q^2;q^2)          = sum_{n in Z} (-1)^n q^{n^2}
    q (q^16;q^16)^2 / (q^8;q^8)  = sum_{n >= 0} q^{(2n+1)^2}

plus the mod 8 pipelines that rebuild ped and ped_{-2} from theta series
alone.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from math import isqrt

import numpy as np

from .series import (EXACT, Ring, TruncatedSeries, _wrap, _zeros, euler_product, series_div,
                     series_inverse, series_mul, series_scale)


class ThetaKind(enum.Enum):
    SIGNED_SQUARES = "signed"     # sum_{n in Z} (-1)^n q^{n^2}
    ODD_SQUARES = "odd"           # sum over odd squares
    EVEN_LATTICE = "lattice"      # sum_{n in Z} q^{a n^2}


@dataclass(frozen=True)
class ThetaSpec:
    kind: ThetaKind
    a: int = 1
    two_sided: bool = True

    def __post_init__(self):
        if self.kind is ThetaKind.EVEN_LATTICE and self.a not in (4, 8, 16):
            raise ValueError("EvenLattice supports a in {4, 8, 16}")

    @classmethod
    def signed_squares(cls):
        return cls(ThetaKind.SIGNED_SQUARES)

    @classmethod
    def odd_squares(cls, two_sided: bool = True):
        """``two_sided=False`` gives weight 1 per odd square instead of 2."""
        return cls(ThetaKind.ODD_SQUARES, two_sided=two_sided)

    @classmethod
    def even_lattice(cls, a: int):
        return cls(ThetaKind.EVEN_LATTICE, a=a)


def theta_series(spec: ThetaSpec, order: int, ring: Ring = EXACT) -> TruncatedSeries:
    """Sparse theta expansion to ``order``.

    >>> theta_series(ThetaSpec.signed_squares(), 9).tolist()
    [1, -2, 0, 0, 2, 0, 0, 0, 0, -2]
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    arr = _zeros(order + 1, ring)
    if spec.kind is ThetaKind.ODD_SQUARES:
        w = 2 if spec.two_sided else 1
        k = 1
        while k * k <= order:
            arr[k * k] = w
            k += 2
    elif spec.kind is ThetaKind.SIGNED_SQUARES:
        arr[0] = 1
        for k in range(1, isqrt(order) + 1):
            arr[k * k] = 2 if k % 2 == 0 else -2
    else:
        arr[0] = 1
        for k in range(1, isqrt(order // spec.a) + 1):
            arr[spec.a * k * k] = 2
    if not ring.exact:
        arr %= ring.modulus
    return _wrap(arr, ring)


@dataclass
class IdentityReport:
    identity: str
    order: int
    status: str
    first_mismatch: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "match"

    def to_dict(self) -> dict:
        return asdict(self)


def _compare(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    diff = np.flatnonzero(lhs.coeffs != rhs.coeffs)
    if diff.size:
        return IdentityReport(name, lhs.order, "mismatch", int(diff[0]))
    return IdentityReport(name, lhs.order, "match")


def identity_2_1_sides(order: int, ring: Ring = EXACT) -> tuple[TruncatedSeries, TruncatedSeries]:
    lhs = series_mul(euler_product(1, 2, order, ring),
                     series_inverse(euler_product(2, 1, order, ring)))
    return lhs, theta_series(ThetaSpec.signed_squares(), order, ring)


def identity_2_2_sides(order: int, ring: Ring = EXACT) -> tuple[TruncatedSeries, TruncatedSeries]:
    # q * F(q) truncated at `order` only needs F to order-1
    lhs = _zeros(order + 1, ring)
    if order >= 1:
        inner = series_div(euler_product(16, 2, order - 1, ring), euler_product(8, 1, order - 1, ring))
        lhs[1:] = inner.coeffs
    return _wrap(lhs, ring), theta_series(ThetaSpec.odd_squares(two_sided=False), order, ring)


def verify_identity_2_1(order: int, ring: Ring = EXACT) -> IdentityReport:
    """Check (q;q)^2/(q^2;q^2) against the signed square theta series."""
    return _compare("2.1", *identity_2_1_sides(order, ring))


def verify_identity_2_2(order: int, ring: Ring = EXACT) -> IdentityReport:
    """Check q(q^16;q^16)^2/(q^8;q^8) against the one-sided odd square series."""
    return _compare("2.2", *identity_2_2_sides(order, ring))


def progression_coefficients(series: TruncatedSeries, step: int, offset: int) -> np.ndarray:
    """``c[step*n + offset]`` for every n with the exponent in range.

    Used to read ``sum f(n) q^{step n + offset}`` back as the sequence f.
    """
    if step < 1 or offset < 0:
        raise ValueError("need step >= 1 and offset >= 0")
    if offset > series.order:
        return series.coeffs[:0]
    return series.coeffs[offset::step]


def off_progression_nonzero(series: TruncatedSeries, step: int, offset: int) -> np.ndarray:
    """Exponents not of the form ``step*n + offset`` that carry a nonzero coefficient."""
    idx = series.nonzero()
    return idx[(idx < offset) | ((idx - offset) % step != 0)]


def _odd_square_over_signed(a: int, order: int, ring: Ring) -> TruncatedSeries:
    """(one-sided odd squares) / (1 + 2 sum_{n>=1} (-1)^n q^{a n^2})."""
    odd = theta_series(ThetaSpec.odd_squares(two_sided=False), order, ring)
    signed = theta_series(ThetaSpec.signed_squares(), order // a, ring)
    den = _zeros(order + 1, ring)
    den[::a] = signed.coeffs
    return series_div(odd, _wrap(den, ring))


def ped_from_theta(n_max: int, ring: Ring = Ring(8)) -> tuple[np.ndarray, TruncatedSeries]:
    """ped(0..n_max) read off ``sum ped(n) q^{8n+1}`` built from theta series."""
    s = _odd_square_over_signed(16, 8 * n_max + 1, ring)
    return progression_coefficients(s, 8, 1), s


def ped2_from_theta(n_max: int, ring: Ring = Ring(8)) -> tuple[np.ndarray, TruncatedSeries]:
    """ped_{-2}(0..n_max) read off ``sum ped_{-2}(n) q^{4n+1}``."""
    s = _odd_square_over_signed(4, 4 * n_max + 1, ring)
    return progression_coefficients(s, 4, 1), s


def ped2_mod8_theta_form(n_max: int) -> np.ndarray:
    """ped_{-2}(n) mod 8 from the reduced form T1 * (theta4 - 2 theta16 + 2 theta8).

    T1 is the one-sided odd square series; this is the truncation of
    1/(1+2X) to 1 - 2X + 4X^2, valid mod 8.
    """
    order = 4 * n_max + 1
    ring = Ring(8)
    t1 = theta_series(ThetaSpec.odd_squares(two_sided=False), order, ring)
    combo = (theta_series(ThetaSpec.even_lattice(4), order, ring)
             - series_scale(theta_series(ThetaSpec.even_lattice(16), order, ring), 2)
             + series_scale(theta_series(ThetaSpec.even_lattice(8), order, ring), 2))
    return progression_coefficients(series_mul(t1, combo), 4, 1)
