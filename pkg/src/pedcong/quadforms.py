"""Factorization, squarefree parts and representation counts for x^2 + b*y^2.

Factorization is trial division by small primes, a deterministic
Miller-Rabin test, then Pollard rho (Brent's variant) on what is left.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np

MAX_INPUT = 2**63
FORM_COEFFS = (1, 2, 4, 8, 16)

# Sieve bound for trial division.
_TRIAL_LIMIT = 1 << 20
# Witness set that makes Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class UnsupportedInput(ValueError):
    """Input exceeds the supported 2**63 bound."""


@lru_cache(maxsize=1)
def _small_primes() -> np.ndarray:
    sieve = np.ones(_TRIAL_LIMIT, dtype=bool)
    sieve[:2] = False
    for p in range(2, isqrt(_TRIAL_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve)


def is_prime(n: int) -> bool:
    """Deterministic for all n below 3.3e24 (so for every supported input)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factors) != self.n:
            raise ValueError("factors do not multiply back to n")

    def ord(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(f"{p}" if e == 1 else f"{p}^{e}" for p, e in self.factors)


def factorize(n: int) -> Factorization:
    """Prime factorization of ``1 <= n <= 2**63``.

    >>> str(factorize(1155))
    '3·5·7·11'
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    if n > MAX_INPUT:
        raise UnsupportedInput(f"{n} exceeds the supported bound 2**63")
    found: dict[int, int] = {}
    m = n
    limit = isqrt(m)
    for p in _small_primes():
        p = int(p)
        if p > limit:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
            limit = isqrt(m)
    if m > 1:
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT:
            # no factor below sqrt(m) survived trial division
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found, random.Random(n))
    return Factorization(n, tuple(sorted(found.items())))


@dataclass(frozen=True)
class SquarefreeDecomposition:
    n: int
    root: int
    squarefree: int


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    """The unique ``(N, M)`` with ``n = N**2 * M`` and ``M`` squarefree."""
    f = factorize(n)
    root = prod(p ** (e // 2) for p, e in f.factors)
    sf = prod(p for p, e in f.factors if e % 2)
    return SquarefreeDecomposition(n, root, sf)


@dataclass(frozen=True)
class ResidueProfile:
    """Exponents of the odd prime factors grouped by the prime mod 8."""

    alphas: tuple[int, ...] = ()
    betas: tuple[int, ...] = ()
    gammas: tuple[int, ...] = ()
    deltas: tuple[int, ...] = ()
    two: int = 0
    primes: dict = field(default_factory=dict, compare=False, repr=False)


def residue_profile(f: Factorization) -> ResidueProfile:
    buckets = {1: [], 3: [], 5: [], 7: []}
    groups = {1: [], 3: [], 5: [], 7: []}
    two = 0
    for p, e in f.factors:
        if p == 2:
            two = e
        else:
            buckets[p % 8].append(e)
            groups[p % 8].append(p)
    return ResidueProfile(tuple(buckets[1]), tuple(buckets[3]), tuple(buckets[5]),
                          tuple(buckets[7]), two, groups)


def rep_count_enumerate(n: int, b: int) -> int:
    """Number of ``(x, y)`` in Z^2 with ``n = x^2 + b*y^2``, signs and zero included.

    >>> rep_count_enumerate(25, 1), rep_count_enumerate(9, 2)
    (12, 6)
    """
    if b not in FORM_COEFFS:
        raise ValueError(f"b must be one of {FORM_COEFFS}")
    if n < 0:
        return 0
    count = 0
    for y in range(isqrt(n // b) + 1):
        r = n - b * y * y
        x = isqrt(r)
        if x * x == r:
            count += (1 if x == 0 else 2) * (1 if y == 0 else 2)
    return count


def rep_count_table(limit: int, b: int) -> np.ndarray:
    """``rep_count_enumerate(n, b)`` for every ``0 <= n <= limit`` at once.

    Walks the lattice points in the ellipse and histograms ``x^2 + b*y^2``.
    """
    counts = np.zeros(limit + 1, np.int64)
    xs = np.arange(-isqrt(limit), isqrt(limit) + 1, dtype=np.int64)
    x2 = xs * xs
    for y in range(-isqrt(limit // b), isqrt(limit // b) + 1):
        vals = x2 + b * y * y
        vals = vals[vals <= limit]
        counts += np.bincount(vals, minlength=limit + 1)
    return counts


def rep_count_formula_x2_y2(n: int) -> int:
    """r_2(n) for odd n from the factorization.

    Zero if a prime ``p = 3 mod 4`` divides n to an odd power; otherwise
    ``4 * prod(e_p + 1)`` over primes ``p = 1 mod 4``.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"formula needs odd positive n, got {n}")
    total = 4
    for p, e in factorize(n).factors:
        if p % 4 == 3:
            if e % 2:
                return 0
        else:
            total *= e + 1
    return total


def rep_count_formula_x2_2y2(n: int) -> int:
    """Representations of ``n = 1 mod 8`` by ``x^2 + 2y^2``.

    Zero if a prime ``= 5, 7 mod 8`` has odd exponent; otherwise
    ``2 * prod(e_p + 1)`` over primes ``p = 1, 3 mod 8``.
    """
    if n < 1 or n % 8 != 1:
        raise ValueError(f"formula needs n = 1 mod 8, got {n}")
    prof = residue_profile(factorize(n))
    if any(e % 2 for e in prof.gammas + prof.deltas):
        return 0
    return 2 * prod(e + 1 for e in prof.alphas + prof.betas)
