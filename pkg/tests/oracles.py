"""Brute-force reference computations, independent of the series engine."""
from __future__ import annotations

from math import isqrt


def partitions(n: int, max_part: int | None = None):
    """Yield partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def ped_bruteforce(n: int) -> int:
    """Partitions of n whose even parts are pairwise distinct."""
    count = 0
    for lam in partitions(n):
        evens = [x for x in lam if x % 2 == 0]
        if len(evens) == len(set(evens)):
            count += 1
    return count


def ped2_bruteforce(n: int) -> int:
    """Ordered pairs (lam, mu) of such partitions with |lam| + |mu| = n."""
    return sum(ped_bruteforce(k) * ped_bruteforce(n - k) for k in range(n + 1))


def product_expand(factors, order: int) -> list[int]:
    """prod over m >= 1 of prod_{(a, e)} (1 - q^{a m})^e, truncated, by repeated
    multiplication/geometric division on plain lists."""
    c = [0] * (order + 1)
    c[0] = 1
    for a, e in factors:
        for s in range(a, order + 1, a):
            for _ in range(abs(e)):
                if e > 0:
                    for k in range(order, s - 1, -1):
                        c[k] -= c[k - s]
                else:
                    for k in range(s, order + 1):
                        c[k] += c[k - s]
    return c


def lattice_count(n: int, b: int) -> int:
    """#{(x, y) : x^2 + b y^2 = n} by scanning the full box."""
    r = isqrt(n) + 1
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) if x * x + b * y * y == n)
