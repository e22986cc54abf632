"""Arithmetic-progression congruence families for ped and ped_{-2}.

A family fixes a target function, a modulus, a prime p and a rule mapping
``(p, r, alpha, n)`` to an argument.  :func:`verify_family` checks the
congruence over a finite box of ``alpha`` and ``n`` values against a
precomputed coefficient table.
"""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from math import gcd, isqrt
from typing import Callable

import numpy as np

from .quadforms import is_prime


class UsageError(ValueError):
    """Parameters violate a family's validity predicate, or the table is too short."""


class ConsistencyError(ArithmeticError):
    """An argument numerator was not divisible where the predicate says it must be."""


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"{num} is not divisible by {den}")
    return q


# -- validity predicates ------------------------------------------------------

def _check_prime(p: int):
    if not is_prime(p):
        raise UsageError(f"p = {p} is not prime")


def _check_r(p: int, r: int, span: int):
    if not 1 <= r < span * p:
        raise UsageError(f"r = {r} outside 1 <= r < {span}p")
    if gcd(r, p) != 1:
        raise UsageError(f"gcd(r, p) = gcd({r}, {p}) != 1")
    if (r * p) % span != 1:
        raise UsageError(f"r*p = {r * p} is not 1 mod {span}")


def admissible_r(p: int, span: int) -> list[int]:
    """All ``1 <= r < span*p`` with ``gcd(r, p) = 1`` and ``r*p = 1 mod span``.

    >>> admissible_r(7, 8)
    [15, 23, 31, 39, 47, 55]
    """
    return [r for r in range(1, span * p) if gcd(r, p) == 1 and (r * p) % span == 1]


# -- argument maps -------------------------------------------------------------

def arg_ped_mod8(p: int, r: int, alpha: int, n: int) -> int:
    """``p^(2a+2) n + (r p^(2a+1) - 1)/8``; then ``8*arg + 1 = p^(2a+1) (8pn + r)``.

    >>> arg_ped_mod8(7, 15, 0, 0), arg_ped_mod8(7, 15, 1, 0)
    (13, 643)
    """
    _check_prime(p)
    if p % 8 != 7:
        raise UsageError(f"p = {p} is not 7 mod 8")
    _check_r(p, r, 8)
    if alpha < 0 or n < 0:
        raise UsageError("alpha and n must be non-negative")
    return p ** (2 * alpha + 2) * n + _exact_div(r * p ** (2 * alpha + 1) - 1, 8)


def arg_ped_mod8_printed(p: int, r: int, alpha: int, n: int) -> int:
    """The map as literally typeset, ``p^(2a+2) n + (r p^(2a-1) + 1)/8``.

    Only defined for ``alpha >= 1``; raises :class:`ConsistencyError` when the
    numerator is not a multiple of 8 (which is always the case).
    """
    _check_prime(p)
    _check_r(p, r, 8)
    if alpha < 1:
        raise UsageError("printed map needs alpha >= 1 (p^(2a-1) is not an integer at a=0)")
    return p ** (2 * alpha + 2) * n + _exact_div(r * p ** (2 * alpha - 1) + 1, 8)


def arg_ped_mod4(p: int, r: int, alpha: int, n: int) -> int:
    """``p^(2a) n + (r p^(2a-1) - 1)/8`` for ``p = 5 mod 8`` or ``p = 3 mod 4``, ``a >= 1``."""
    _check_prime(p)
    if not (p % 8 == 5 or p % 4 == 3):
        raise UsageError(f"p = {p} is neither 5 mod 8 nor 3 mod 4")
    _check_r(p, r, 8)
    if alpha < 1 or n < 0:
        raise UsageError("need alpha >= 1 and n >= 0")
    return p ** (2 * alpha) * n + _exact_div(r * p ** (2 * alpha - 1) - 1, 8)


def arg_ped2(p: int, r: int, alpha: int, n: int, case: str = "i") -> int:
    """Progression for ped_{-2} mod 8.

    case ``"i"`` (p = 3 mod 4): ``p^(2a+2) n + (r p^(2a+1) - 1)/4``;
    case ``"ii"`` (p = 1 mod 4): ``p^(8a+8) n + (r p^(8a+7) - 1)/4``.

    >>> arg_ped2(3, 7, 0, 0), arg_ped2(5, 17, 0, 0, "ii")
    (5, 332031)
    """
    _check_prime(p)
    if case == "i":
        if p % 4 != 3:
            raise UsageError(f"case (i) needs p = 3 mod 4, got {p}")
        lead, tail = 2 * alpha + 2, 2 * alpha + 1
    elif case == "ii":
        if p % 4 != 1:
            raise UsageError(f"case (ii) needs p = 1 mod 4, got {p}")
        lead, tail = 8 * alpha + 8, 8 * alpha + 7
    else:
        raise UsageError(f"unknown case {case!r}")
    _check_r(p, r, 4)
    if alpha < 0 or n < 0:
        raise UsageError("alpha and n must be non-negative")
    return p**lead * n + _exact_div(r * p**tail - 1, 4)


def arg_mod3_a(alpha: int, n: int) -> int:
    """``3^(2a+2) n + (11 * 3^(2a+1) - 1)/4``."""
    return 3 ** (2 * alpha + 2) * n + _exact_div(11 * 3 ** (2 * alpha + 1) - 1, 4)


def arg_mod3_b(alpha: int, n: int) -> int:
    """``3^(2a+3) n + (5 * 3^(2a+2) - 1)/4``."""
    return 3 ** (2 * alpha + 3) * n + _exact_div(5 * 3 ** (2 * alpha + 2) - 1, 4)


# -- families ------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceFamily:
    """``target(argument(p, r, alpha, n)) = 0 mod modulus`` for alpha >= alpha_min, n >= 0."""

    id: str
    target: str                     # "ped" or "ped2"
    modulus: int
    p: int
    rs: tuple[int, ...]
    alpha_min: int
    argument: Callable[[int, int, int, int], int] = field(repr=False, compare=False)

    def arg(self, r: int, alpha: int, n: int) -> int:
        return self.argument(self.p, r, alpha, n)

    def progression(self, r: int, alpha: int) -> tuple[int, int]:
        """``(A, B)`` with argument ``A*n + B``."""
        b = self.arg(r, alpha, 0)
        return self.arg(r, alpha, 1) - b, b


def _family(id_, target, modulus, p, span, alpha_min, argument, rs=None):
    if rs is None:
        rs = admissible_r(p, span)
    rs = tuple(rs)
    for r in rs:
        argument(p, r, alpha_min, 0)  # validates (p, r) eagerly
    return CongruenceFamily(id_, target, modulus, p, rs, alpha_min, argument)


def ped_mod8_family(p: int, rs=None) -> CongruenceFamily:
    return _family("thm1.2", "ped", 8, p, 8, 0, arg_ped_mod8, rs)


def ped_mod4_family(p: int, rs=None) -> CongruenceFamily:
    return _family("cor1.1", "ped", 4, p, 8, 1, arg_ped_mod4, rs)


def ped2_mod4_family(p: int, case: str = "i", rs=None) -> CongruenceFamily:
    def argument(p_, r, a, n):
        return arg_ped2(p_, r, a, n, case)
    return _family(f"cor1.6{case}", "ped2", 8, p, 4, 0, argument, rs)


def ped2_mod3_a() -> CongruenceFamily:
    return CongruenceFamily("mod3a", "ped2", 3, 3, (11,), 0, lambda p, r, a, n: arg_mod3_a(a, n))


def ped2_mod3_b() -> CongruenceFamily:
    return CongruenceFamily("mod3b", "ped2", 3, 3, (5,), 0, lambda p, r, a, n: arg_mod3_b(a, n))


def ped2_mod12() -> CongruenceFamily:
    return CongruenceFamily("mod12", "ped2", 12, 3, (11,), 0, lambda p, r, a, n: arg_mod3_a(a, n))


def ped2_mod24_family() -> CongruenceFamily:
    return CongruenceFamily("ex1.8-mod24", "ped2", 24, 3, (11,), 0, lambda p, r, a, n: arg_mod3_a(a, n))


# -- verification ----------------------------------------------------------------

@dataclass
class Counterexample:
    alpha: int
    r: int
    n: int
    argument: int
    value: int


@dataclass
class VerificationReport:
    family: str
    p: int | None
    rs: list[int]
    alphas: list[int]
    n_max: int | None
    arg_limit: int | None
    modulus: int
    checked: int
    status: str                      # "all-hold" | "counterexample"
    counterexample: Counterexample | None = None
    wall_time: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == "all-hold"

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    CSV_FIELDS = ("family", "p", "rs", "alphas", "n_max", "arg_limit", "modulus", "checked",
                  "status", "counterexample", "wall_time")

    def csv_row(self, timing: bool = True) -> dict:
        ce = self.counterexample
        return {
            "family": self.family, "p": self.p, "rs": " ".join(map(str, self.rs)),
            "alphas": " ".join(map(str, self.alphas)), "n_max": self.n_max,
            "arg_limit": self.arg_limit, "modulus": self.modulus, "checked": self.checked,
            "status": self.status,
            "counterexample": "" if ce is None else f"{ce.alpha}/{ce.r}/{ce.n}/{ce.argument}/{ce.value}",
            "wall_time": f"{self.wall_time:.3f}" if timing else "",
        }


def reports_to_csv(reports: list[VerificationReport], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=VerificationReport.CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.csv_row(timing))
    return buf.getvalue()


def _lookup_many(table, args: np.ndarray) -> np.ndarray:
    coeffs = getattr(table, "coeffs", None)
    if isinstance(coeffs, np.ndarray):
        return coeffs[args]
    return np.array([int(table[int(a)]) for a in args], dtype=object)


def verify_family(family: CongruenceFamily, alpha_max: int, n_max: int | None, table, *,
                  arg_limit: int | None = None, alpha_min: int | None = None) -> VerificationReport:
    """Check ``table[arg] = 0 mod family.modulus`` over the box of parameters.

    ``table`` is anything with an ``order`` attribute and integer indexing,
    usually a :class:`~pedcong.series.TruncatedSeries` of the family's target.
    With ``n_max`` every ``n <= n_max`` is checked and the table must reach
    the largest argument.  With ``arg_limit`` instead, n runs as far as the
    argument stays ``<= arg_limit``.  The first failure in ``(alpha, r, n)``
    order is reported.
    """
    if n_max is None and arg_limit is None:
        raise UsageError("give n_max or arg_limit")
    start = time.perf_counter()
    a_lo = family.alpha_min if alpha_min is None else max(alpha_min, family.alpha_min)
    alphas = list(range(a_lo, alpha_max + 1))
    ring_mod = getattr(getattr(table, "ring", None), "modulus", None)
    if ring_mod is not None and ring_mod % family.modulus:
        raise UsageError(f"table ring mod {ring_mod} cannot decide residues mod {family.modulus}")

    plan = []
    for alpha in alphas:
        for r in family.rs:
            step, base = family.progression(r, alpha)
            if arg_limit is not None:
                top = -1 if base > arg_limit else (arg_limit - base) // step
                if n_max is not None:
                    top = min(top, n_max)
            else:
                top = n_max
            plan.append((alpha, r, step, base, top))
    need = max((base + step * top for _, _, step, base, top in plan if top >= 0), default=0)
    if need > table.order:
        raise UsageError(f"table order {table.order} too short; need order >= {need}")

    checked = 0
    for alpha, r, step, base, top in plan:
        if top < 0:
            continue
        ns = np.arange(top + 1, dtype=np.int64)
        args = base + step * ns
        vals = _lookup_many(table, args)
        bad = np.flatnonzero(np.asarray([int(v) % family.modulus for v in vals])
                            if vals.dtype == object else vals % family.modulus)
        checked += len(args)
        if bad.size:
            i = int(bad[0])
            ce = Counterexample(alpha, r, i, int(args[i]), int(vals[i]))
            return VerificationReport(family.id, family.p, list(family.rs), alphas, n_max, arg_limit,
                                      family.modulus, checked, "counterexample", ce,
                                      time.perf_counter() - start)
    return VerificationReport(family.id, family.p, list(family.rs), alphas, n_max, arg_limit,
                              family.modulus, checked, "all-hold", None, time.perf_counter() - start)


def audit_printed_mod8_map(p: int, alpha_max: int = 1) -> VerificationReport:
    """Run the literally printed argument map and record why it cannot be used."""
    start = time.perf_counter()
    rs = admissible_r(p, 8)
    notes = []
    for alpha in range(1, alpha_max + 1):
        for r in rs:
            num = r * p ** (2 * alpha - 1) + 1
            try:
                arg_ped_mod8_printed(p, r, alpha, 0)
            except ConsistencyError:
                notes.append(f"alpha={alpha} r={r}: numerator {num} = {num % 8} mod 8, not divisible by 8")
            else:  # pragma: no cover - unreachable while r*p = 1 mod 8
                notes.append(f"alpha={alpha} r={r}: divisible")
    status = "divisibility-fails" if all("not divisible" in s for s in notes) else "mixed"
    return VerificationReport("thm1.2-printed", p, rs, list(range(1, alpha_max + 1)), 0, None, 8,
                              len(notes), status, None, time.perf_counter() - start, notes)


def triangular_sums(n_max: int) -> np.ndarray:
    """Boolean mask over ``0..n_max``: is n a sum of two triangular numbers."""
    tri = np.array([k * (k + 1) // 2 for k in range(isqrt(2 * n_max) + 2)
                    if k * (k + 1) // 2 <= n_max], np.int64)
    mask = np.zeros(n_max + 1, bool)
    for t in tri:
        s = t + tri
        mask[s[s <= n_max]] = True
    return mask


def pronic_mask(n_max: int) -> np.ndarray:
    mask = np.zeros(n_max + 1, bool)
    k = 0
    while k * (k + 1) <= n_max:
        mask[k * (k + 1)] = True
        k += 1
    return mask


def check_parity_theorem_1_4(n_max: int, table) -> VerificationReport:
    """ped_{-2}(n) odd only at pronic n; 4 | ped_{-2}(n) unless n is a sum of two triangulars.

    ``table`` must carry ped_{-2} exactly or modulo a multiple of 4.
    """
    start = time.perf_counter()
    if table.order < n_max:
        raise UsageError(f"table order {table.order} too short; need order >= {n_max}")
    ring_mod = getattr(getattr(table, "ring", None), "modulus", None)
    if ring_mod is not None and ring_mod % 4:
        raise UsageError("parity/mod 4 check needs a table modulo a multiple of 4")
    vals = np.array([int(v) % 4 for v in table.coeffs[: n_max + 1]], np.int64)
    pronic, tri2 = pronic_mask(n_max), triangular_sums(n_max)
    odd_bad = np.flatnonzero((vals % 2 == 1) & ~pronic)
    four_bad = np.flatnonzero((vals != 0) & ~tri2)
    rep = VerificationReport("thm1.4", None, [], [], n_max, None, 4, 2 * (n_max + 1), "all-hold",
                             None, 0.0)
    bad = sorted(int(x) for x in np.concatenate([odd_bad, four_bad]))
    if bad:
        n = bad[0]
        rep.status = "counterexample"
        rep.counterexample = Counterexample(0, 0, n, n, int(table.coeffs[n]))
    rep.wall_time = time.perf_counter() - start
    return rep
