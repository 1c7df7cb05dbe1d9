"""Closed-form exponent bounds and the known values of ``lim f_r(n, er-(e-1)k, e) / n^k``."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

# source tags
SRC_K1 = "k=1 limit, (e-1)/((e-1)(r-1)+1)"
SRC_353 = "f_3(n,5,3)/n^2 -> 1/5"
SRC_364 = "f_3(n,6,4)/n^2 -> 7/36"
SRC_E3K2 = "f_r(n,3r-4,3)/n^2 -> 1/(r^2-r-1)"
SRC_E3 = "f_r(n,3r-2k,3)/n^k -> 2/(k!(2C(r,k)-1))"
SRC_E4 = "f_r(n,4r-3k,4)/n^k -> C(r,k)^-1 / k!"

# flags
FLAG_K1_DISPLAY = "k1-display-has-stray-n"  # the displayed limit carries a factor n
FLAG_E4_CONFLICT = "e4-formula-gives-1/6"  # at (3,2,4) the e=4 formula disagrees with 7/36
FLAG_E4_FORMULA = "e4-formula-disagrees-at-(3,2,4)"


@dataclass(frozen=True)
class LimitRecord:
    r: int
    k: int
    e: int
    value: Optional[Fraction]
    source: Optional[str]
    flags: tuple[str, ...] = ()
    note: str = ""

    def row(self) -> dict:
        return {
            "r": self.r, "k": self.k, "e": self.e,
            "value": "" if self.value is None else str(self.value),
            "float": "" if self.value is None else f"{float(self.value):.10g}",
            "source": self.source or "",
            "flags": ";".join(self.flags),
        }


def e3_formula(r: int, k: int) -> Fraction:
    return Fraction(2, factorial(k) * (2 * comb(r, k) - 1))


def e4_formula(r: int, k: int) -> Fraction:
    return Fraction(1, factorial(k) * comb(r, k))


def k1_formula(r: int, e: int) -> Fraction:
    return Fraction(e - 1, (e - 1) * (r - 1) + 1)


def known_limit(r: int, k: int, e: int) -> LimitRecord:
    """The limit value where one is known, with its source and any flags.

    ``value`` is ``None`` for parameters whose limit is not pinned down.
    """
    if not (r > k >= 1 and e >= 2):
        raise ValueError(f"need r > k >= 1 and e >= 2, got r={r}, k={k}, e={e}")
    if k == 1:
        return LimitRecord(r, k, e, k1_formula(r, e), SRC_K1, (FLAG_K1_DISPLAY,),
                           "displayed with a spurious factor n; the n-free ratio is returned")
    if e == 3:
        if (r, k) == (3, 2):
            return LimitRecord(r, k, e, Fraction(1, 5), SRC_353)
        if k == 2:
            return LimitRecord(r, k, e, Fraction(1, r * r - r - 1), SRC_E3K2)
        return LimitRecord(r, k, e, e3_formula(r, k), SRC_E3)
    if e == 4:
        if (r, k) == (3, 2):
            return LimitRecord(r, k, e, Fraction(7, 36), SRC_364, (FLAG_E4_CONFLICT,),
                               f"the e=4 closed form evaluates to {e4_formula(3, 2)} here")
        return LimitRecord(r, k, e, e4_formula(r, k), SRC_E4, (FLAG_E4_FORMULA,))
    if e == 2:
        return LimitRecord(r, k, e, None, None, (), "asymptotically settled; value not tabulated")
    note = "limit exists, value unknown" if k == 2 else "open"
    return LimitRecord(r, k, e, None, None, (), note)


@dataclass(frozen=True)
class ExponentBounds:
    lower_exponent: Fraction  # (er - v) / (e - 1)
    upper_exponent: int  # its ceiling
    lower_value: float  # n ** lower_exponent
    upper_value: float


def bes_bounds(n: int, r: int, v: int, e: int) -> ExponentBounds:
    """``f_r(n, v, e)`` is between order ``n^((er-v)/(e-1))`` and ``n^ceil(...)``.

    The implied constants are unknown, so only the exponents and the bare
    powers of ``n`` are returned.
    """
    if e < 2:
        raise ValueError(f"need e >= 2, got e={e}")
    if v < r:
        raise ValueError(f"need v >= r, got v={v}, r={r}")
    low = Fraction(e * r - v, e - 1)
    up = math.ceil(low)
    return ExponentBounds(low, up, float(n) ** float(low), float(n) ** up)


def limits_table(rs=range(3, 9), ks=None, es=(2, 3, 4, 5)) -> list[LimitRecord]:
    out = []
    for r in rs:
        for k in (ks or range(1, r)):
            if k >= r:
                continue
            for e in es:
                out.append(known_limit(r, k, e))
    return out


def table_csv(records: list[LimitRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["r", "k", "e", "value", "float", "source", "flags"], lineterminator="\n")
    w.writeheader()
    for rec in records:
        w.writerow(rec.row())
    return buf.getvalue()
