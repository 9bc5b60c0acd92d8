"""Dyadic interval arithmetic with certified outward rounding.

This is the single numeric kernel every sign decision in the library goes
through.  An interval stores exact dyadic endpoints as (mantissa, exponent)
integer pairs, so +, -, * are exact; only division, conversion from a
general rational, and the logarithm round, and they always round outward.
Adaptive precision lives in :func:`adaptive_sign`: evaluate at 64 bits,
double on demand, stop at the configured cap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .errors import PrecisionCapExceeded, UndecidableSign

START_PREC = 64
DEFAULT_PREC_CAP = 4096


def _cmp(m1: int, e1: int, m2: int, e2: int) -> int:
    """Compare m1*2^e1 with m2*2^e2; returns -1/0/+1."""
    if m1 == 0 and m2 == 0:
        return 0
    if e1 >= e2:
        a, b = m1 << (e1 - e2), m2
    else:
        a, b = m1, m2 << (e2 - e1)
    return (a > b) - (a < b)


def _add(m1: int, e1: int, m2: int, e2: int) -> tuple[int, int]:
    if m1 == 0:
        return m2, e2
    if m2 == 0:
        return m1, e1
    if e1 >= e2:
        return (m1 << (e1 - e2)) + m2, e2
    return m1 + (m2 << (e2 - e1)), e1


def _round_down(m: int, e: int, prec: int) -> tuple[int, int]:
    """Largest dyadic with <= prec mantissa bits that is <= m*2^e."""
    excess = m.bit_length() - prec
    if excess <= 0:
        return m, e
    return m >> excess, e + excess          # >> floors, also for m < 0


def _round_up(m: int, e: int, prec: int) -> tuple[int, int]:
    excess = m.bit_length() - prec
    if excess <= 0:
        return m, e
    return -((-m) >> excess), e + excess


def _frac_down(fr: Fraction, prec: int) -> tuple[int, int]:
    """Dyadic lower bound of a rational with about prec significant bits."""
    p, q = fr.numerator, fr.denominator
    if p == 0:
        return 0, 0
    e = p.bit_length() - q.bit_length() - prec
    if e >= 0:
        m = p // (q << e)
    else:
        m = (p << -e) // q
    return m, e


def _frac_up(fr: Fraction, prec: int) -> tuple[int, int]:
    m, e = _frac_down(-fr, prec)
    return -m, e


class Iv:
    """Closed interval [lm*2^le, um*2^ue] with exact dyadic endpoints."""

    __slots__ = ("lm", "le", "um", "ue")

    def __init__(self, lm: int, le: int, um: int, ue: int):
        self.lm = lm
        self.le = le
        self.um = um
        self.ue = ue

    # ---- constructors ----

    @staticmethod
    def from_int(v: int) -> "Iv":
        return Iv(v, 0, v, 0)

    @staticmethod
    def from_float(v: float) -> "Iv":
        if v != v or v in (float("inf"), float("-inf")):
            raise ValueError("non-finite float")
        fr = Fraction(v)                     # floats are exact dyadics
        m, e = _frac_down(fr, 64)
        return Iv(m, e, m, e)

    @staticmethod
    def from_fraction(fr: Fraction, prec: int) -> "Iv":
        q = fr.denominator
        if q & (q - 1) == 0:                 # power of two: exact
            m, e = fr.numerator, -(q.bit_length() - 1)
            return Iv(m, e, m, e)
        lm, le = _frac_down(fr, prec)
        um, ue = _frac_up(fr, prec)
        return Iv(lm, le, um, ue)

    @staticmethod
    def point(v) -> "Iv":
        if isinstance(v, Iv):
            return v
        if isinstance(v, int):
            return Iv.from_int(v)
        if isinstance(v, float):
            return Iv.from_float(v)
        if isinstance(v, Fraction):
            q = v.denominator
            if q & (q - 1) == 0:
                return Iv.from_fraction(v, 0)
            raise ValueError("non-dyadic rational needs a precision: use from_fraction")
        raise TypeError(f"cannot wrap {type(v)!r}")

    @staticmethod
    def bounds(lo: Fraction, hi: Fraction, prec: int) -> "Iv":
        lm, le = _frac_down(Fraction(lo), prec)
        um, ue = _frac_up(Fraction(hi), prec)
        return Iv(lm, le, um, ue)

    ZERO: "Iv"
    ONE: "Iv"

    # ---- arithmetic (exact) ----

    def __add__(self, other: "Iv") -> "Iv":
        lm, le = _add(self.lm, self.le, other.lm, other.le)
        um, ue = _add(self.um, self.ue, other.um, other.ue)
        return Iv(lm, le, um, ue)

    def __neg__(self) -> "Iv":
        return Iv(-self.um, self.ue, -self.lm, self.le)

    def __sub__(self, other: "Iv") -> "Iv":
        return self + (-other)

    def __mul__(self, other: "Iv") -> "Iv":
        cands = (
            (self.lm * other.lm, self.le + other.le),
            (self.lm * other.um, self.le + other.ue),
            (self.um * other.lm, self.ue + other.le),
            (self.um * other.um, self.ue + other.ue),
        )
        lo = hi = cands[0]
        for c in cands[1:]:
            if _cmp(c[0], c[1], lo[0], lo[1]) < 0:
                lo = c
            elif _cmp(c[0], c[1], hi[0], hi[1]) > 0:
                hi = c
        return Iv(lo[0], lo[1], hi[0], hi[1])

    def mul_int(self, c: int) -> "Iv":
        if c >= 0:
            return Iv(self.lm * c, self.le, self.um * c, self.ue)
        return Iv(self.um * c, self.ue, self.lm * c, self.le)

    def scale2(self, k: int) -> "Iv":
        return Iv(self.lm, self.le + k, self.um, self.ue + k)

    def div(self, other: "Iv", prec: int) -> "Iv":
        """self / other, outward rounded; other must exclude 0."""
        if other.sign() not in (-1, 1):
            raise ZeroDivisionError("interval denominator contains 0")
        a, b = self.lo_fraction(), self.hi_fraction()
        c, d = other.lo_fraction(), other.hi_fraction()
        quots = (a / c, a / d, b / c, b / d)
        lo, hi = min(quots), max(quots)
        lm, le = _frac_down(lo, prec)
        um, ue = _frac_up(hi, prec)
        return Iv(lm, le, um, ue)

    def div_int(self, c: int, prec: int) -> "Iv":
        if c == 0:
            raise ZeroDivisionError
        if c < 0:
            return (-self).div_int(-c, prec)
        lm, le = _frac_down(Fraction(self.lm, c), prec)
        um, ue = _frac_up(Fraction(self.um, c), prec)
        return Iv(lm, le + self.le, um, ue + self.ue)

    def round(self, prec: int) -> "Iv":
        lm, le = _round_down(self.lm, self.le, prec)
        um, ue = _round_up(self.um, self.ue, prec)
        return Iv(lm, le, um, ue)

    # ---- predicates / accessors ----

    def sign(self) -> int | None:
        """+1 if the interval is entirely > 0, -1 if < 0, 0 if it is the
        exact point 0, None if the sign is not determined."""
        if self.lm > 0:
            return 1
        if self.um < 0:
            return -1
        if self.lm == 0 and self.um == 0:
            return 0
        return None

    def is_positive(self) -> bool:
        return self.lm > 0

    def is_negative(self) -> bool:
        return self.um < 0

    def contains_zero(self) -> bool:
        return self.lm <= 0 <= self.um

    def contains(self, v: Fraction) -> bool:
        v = Fraction(v)
        return self.lo_fraction() <= v <= self.hi_fraction()

    def lo_fraction(self) -> Fraction:
        e = self.le
        return Fraction(self.lm << e, 1) if e >= 0 else Fraction(self.lm, 1 << -e)

    def hi_fraction(self) -> Fraction:
        e = self.ue
        return Fraction(self.um << e, 1) if e >= 0 else Fraction(self.um, 1 << -e)

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def width_le(self, k: int) -> bool:
        """True if the width is <= 2^k."""
        wm, we = _add(self.um, self.ue, -self.lm, self.le)
        return _cmp(wm, we, 1, k) <= 0

    def mid_fraction(self) -> Fraction:
        return (self.lo_fraction() + self.hi_fraction()) / 2

    def mid_float(self) -> float:
        try:
            return float(self.mid_fraction())
        except OverflowError:
            return math.inf if self.lm > 0 else -math.inf

    def __repr__(self) -> str:
        return f"Iv[{float(self.lo_fraction()):.6g}, {float(self.hi_fraction()):.6g}]"


Iv.ZERO = Iv(0, 0, 0, 0)
Iv.ONE = Iv(1, 0, 1, 0)


def iv_det(rows: list[list[Iv]]) -> Iv:
    """Determinant by cofactor expansion; fine for the n <= 6 sizes here."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * iv_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


# ---- certified logarithm ----

_LOG2_CACHE: dict[int, Iv] = {}


def _atanh_series(t: Iv, w: int) -> Iv:
    """Enclosure of atanh(t) for 0 <= t <= 1/3, working at w bits."""
    # terms decay like 3^-(2k+1); pick K so the tail is below 2^-(w+1)
    if t.lm == 0 and t.um == 0:
        return Iv.ZERO
    K = max(1, int(w * 0.3155) + 2)
    t2 = (t * t).round(w)
    p = t
    acc = t
    for k in range(1, K + 1):
        p = (p * t2).round(w)
        acc = acc + p.div_int(2 * k + 1, w)
    # tail <= t^(2K+3)/(2K+3) * 1/(1-t^2) <= (1/3)^(2K+3) * 9/8 <= 2^-(w+1)
    tail = Iv(0, 0, 1, -(w + 1))
    return acc + tail


def log2_iv(prec: int) -> Iv:
    """Certified enclosure of log 2."""
    iv = _LOG2_CACHE.get(prec)
    if iv is None:
        w = prec + 8
        third = Iv.ONE.div_int(3, w)
        iv = _atanh_series(third, w).scale2(1).round(prec + 4)
        _LOG2_CACHE[prec] = iv
    return iv


def _log_dyadic(m: int, e: int, prec: int) -> Iv:
    """Enclosure of log(m * 2^e) for m > 0."""
    w = prec + 8
    s = m.bit_length()
    k = e + s - 1                      # m*2^e = f * 2^k with f in [1,2)
    # f = m / 2^(s-1); t = (f-1)/(f+1) = (m - 2^(s-1)) / (m + 2^(s-1))
    half = 1 << (s - 1)
    t = Iv.from_fraction(Fraction(m - half, m + half), w)
    logf = _atanh_series(t, w).scale2(1)
    return logf + log2_iv(w).mul_int(k)


def log_iv(x: Iv, prec: int) -> Iv:
    """Certified enclosure of log over a positive interval."""
    if not x.is_positive():
        raise ValueError("log over an interval not certified positive")
    lo = _log_dyadic(x.lm, x.le, prec)
    if x.lm == x.um and x.le == x.ue:
        return lo.round(prec + 4)
    hi = _log_dyadic(x.um, x.ue, prec)
    return Iv(lo.lm, lo.le, hi.um, hi.ue).round(prec + 4)


# ---- the adaptive certified-sign kernel ----

def adaptive_sign(
    evaluate: Callable[[int], Iv],
    cap: int = DEFAULT_PREC_CAP,
    start: int = START_PREC,
    zero_possible: bool = False,
    what: str = "sign",
) -> int:
    """Certify the sign of a quantity given an interval evaluator.

    ``evaluate(prec)`` must return an enclosure that (weakly) shrinks as prec
    grows.  Raises PrecisionCapExceeded at the cap when the true value is
    known to be nonzero, UndecidableSign when ``zero_possible`` (the caller
    cannot rule out an exact zero of an irrational quantity).
    """
    prec = start
    while True:
        s = evaluate(prec).sign()
        if s is not None:
            return s
        if prec >= cap:
            cls = UndecidableSign if zero_possible else PrecisionCapExceeded
            raise cls(f"{what}: no certified sign at {cap} bits")
        prec = min(2 * prec, cap)
