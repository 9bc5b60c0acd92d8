"""Totally real number fields: exact power-basis arithmetic, certified real
embeddings, unit predicates, log vectors and the signed regulator.

A field is defined by a monic squarefree integer polynomial with all-real
roots.  Embeddings are evaluation at the isolated roots; by convention the
roots are ordered ascending, but any fixed permutation may be requested
(the distinguished "last" embedding moves with it, and so do all derived
signs; the net-count theorem is order-independent and the test suite checks
that).
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .dyadic import (
    DEFAULT_PREC_CAP,
    START_PREC,
    Iv,
    adaptive_sign,
    iv_det,
    log_iv,
)
from .errors import (
    DegreeTooSmall,
    NotSquarefree,
    NotTotallyPositive,
    NotTotallyReal,
    PrecisionCapExceeded,
    ZeroElement,
)
from .exactlinalg import charpoly, mat_solve
from .polyroots import (
    count_real_roots,
    is_squarefree,
    isolate_real_roots,
    poly_gcd_is_constant,
    poly_trim,
)


def _perm_sign(perm) -> int:
    s = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                s = -s
    return s


class FieldElement:
    """Element with exact rational coordinates in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: "NumberField", coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != field.degree:
            raise ValueError("coordinate vector has wrong length")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other):
        other = self.field.element_like(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self.field.element_like(other)
        return FieldElement(self.field, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self.field.element_like(other)
        return FieldElement(self.field, self.field.mul_coeffs(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        other = self.field.element_like(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_coeffs(self.coeffs))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field.poly == other.field.poly
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.poly, self.coeffs))

    def norm(self) -> Fraction:
        cp = self.field.charpoly_of(self)
        n = self.field.degree
        return Fraction((-1) ** n) * cp[0]

    def trace(self) -> Fraction:
        cp = self.field.charpoly_of(self)
        return -cp[self.field.degree - 1]

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coeffs]})"


class EmbeddedVector:
    """Certified conjugate enclosures at a stated precision: the true value
    of each coordinate lies in its interval, and re-embedding at doubled
    precision at least halves every width."""

    __slots__ = ("intervals", "precision")

    def __init__(self, intervals, precision: int):
        self.intervals = tuple(intervals)
        self.precision = precision

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __getitem__(self, i):
        return self.intervals[i]

    def widths(self):
        return [iv.width_fraction() for iv in self.intervals]

    def midpoints(self):
        return [iv.mid_float() for iv in self.intervals]

    def __repr__(self):
        return f"EmbeddedVector({list(self.intervals)!r}, prec={self.precision})"


class NumberField:
    """Context object: defining polynomial, ordered certified real roots,
    and a working precision cap for all adaptive sign decisions."""

    def __init__(self, coeffs, embedding_order=None, prec_cap: int = DEFAULT_PREC_CAP):
        coeffs = tuple(int(c) for c in coeffs)
        n = len(coeffs) - 1
        if n < 2:
            raise DegreeTooSmall(f"degree {n} < 2")
        if coeffs[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        if not is_squarefree(coeffs):
            raise NotSquarefree("defining polynomial has repeated roots")
        if count_real_roots(coeffs) != n:
            raise NotTotallyReal("defining polynomial is not totally real")
        self.poly = coeffs
        self.degree = n
        self.prec_cap = prec_cap
        self._roots = isolate_real_roots(coeffs)   # ascending
        if embedding_order is None:
            embedding_order = tuple(range(n))
        self.embedding_order = tuple(embedding_order)
        if sorted(self.embedding_order) != list(range(n)):
            raise ValueError("embedding_order must be a permutation of 0..n-1")
        # sign of the Vandermonde determinant of the ordered roots: positive
        # for the ascending order, flips with the permutation parity
        self.vandermonde_sign = _perm_sign(self.embedding_order)
        self._lock = threading.Lock()
        self._root_iv_cache: dict[int, tuple] = {}
        self._embed_cache: dict[tuple, tuple] = {}
        self.one = self.element([1] + [0] * (n - 1))
        self.zero = self.element([0] * n)
        self.gen = self.element([0, 1] + [0] * (n - 2))

    # ---- construction helpers ----

    def element(self, coeffs) -> FieldElement:
        return FieldElement(self, [Fraction(c) for c in coeffs])

    def element_like(self, v) -> FieldElement:
        if isinstance(v, FieldElement):
            if v.field.poly != self.poly:
                raise ValueError("element from a different field")
            return v
        if isinstance(v, (int, Fraction)):
            return self.element([v] + [0] * (self.degree - 1))
        raise TypeError(f"cannot coerce {type(v)!r}")

    def with_embedding_order(self, order) -> "NumberField":
        return NumberField(self.poly, embedding_order=order, prec_cap=self.prec_cap)

    # ---- exact arithmetic ----

    def mul_coeffs(self, a, b):
        n = self.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        for k in range(2 * n - 2, n - 1, -1):
            q = prod[k]
            if q:
                prod[k] = 0
                for j in range(n):
                    prod[k - n + j] -= q * self.poly[j]
        return tuple(prod[:n])

    def inv_coeffs(self, a):
        if not any(a):
            raise ZeroElement("inverse of zero")
        m = self.mult_matrix(a)
        n = self.degree
        try:
            return tuple(mat_solve(m, [Fraction(int(i == 0)) for i in range(n)]))
        except ZeroDivisionError:
            raise ZeroElement("element is a zero divisor (reducible polynomial)")

    def mult_matrix(self, a):
        """Matrix of multiplication by a on the power basis (columns a*x^j)."""
        n = self.degree
        cols = []
        cur = tuple(Fraction(c) for c in a)
        cols.append(cur)
        shift_one = tuple(Fraction(int(i == 1)) for i in range(n))
        for _ in range(n - 1):
            cur = self.mul_coeffs(cur, shift_one)
            cols.append(cur)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def charpoly_of(self, elem: FieldElement):
        return charpoly(self.mult_matrix(elem.coeffs))

    # ---- certified embeddings ----

    def roots_iv(self, prec: int):
        """Root enclosures of width <= 2^-prec, in embedding order."""
        with self._lock:
            cached = self._root_iv_cache.get(prec)
            if cached is not None:
                return cached
            target = Fraction(1, 1 << prec)
            for r in self._roots:
                r.refine_below(target)
            asc = [Iv.from_fraction(r.lo, 0) if r.exact
                   else _iv_pair(r.lo, r.hi) for r in self._roots]
            ivs = tuple(asc[i] for i in self.embedding_order)
            self._root_iv_cache[prec] = ivs
            return ivs

    def embed_iv(self, elem: FieldElement, prec: int):
        """Interval enclosures of all conjugates, in embedding order.
        Memoized: generators and unit powers recur in the hot loops."""
        key = (elem.coeffs, prec)
        cached = self._embed_cache.get(key)
        if cached is not None:
            return list(cached)
        roots = self.roots_iv(prec)
        cs = [Iv.from_fraction(c, prec + 8) for c in elem.coeffs]
        out = []
        for t in roots:
            acc = cs[-1]
            for c in reversed(cs[:-1]):
                acc = acc * t + c
            out.append(acc.round(prec + 8))
        if len(self._embed_cache) > 8192:
            self._embed_cache.clear()
        self._embed_cache[key] = tuple(out)
        return out

    def embed(self, elem: FieldElement, target_width: Fraction) -> EmbeddedVector:
        """Conjugate enclosures, each of width <= target_width."""
        target_width = Fraction(target_width)
        prec = START_PREC
        while True:
            out = self.embed_iv(elem, prec)
            if all(iv.width_fraction() <= target_width for iv in out):
                return EmbeddedVector(out, prec)
            if prec >= self.prec_cap:
                raise PrecisionCapExceeded(
                    f"embedding width {target_width} unreachable at {self.prec_cap} bits")
            prec = min(2 * prec, self.prec_cap)

    def conjugate_signs(self, elem: FieldElement):
        """Certified sign of every conjugate.  Exact zeros (possible only
        when the defining polynomial is reducible) are detected exactly."""
        if elem.is_zero():
            raise ZeroElement("sign of the zero element")
        num = poly_trim(elem.coeffs)
        degenerate = not poly_gcd_is_constant(self.poly, num) if len(num) > 1 else False
        signs = []
        for j in range(self.degree):
            if degenerate and self._conj_is_zero(elem, j):
                signs.append(0)
                continue
            signs.append(adaptive_sign(
                lambda p, j=j: self.embed_iv(elem, p)[j],
                cap=self.prec_cap, what=f"conjugate {j}"))
        return signs

    def _conj_is_zero(self, elem, j) -> bool:
        # root j is a root of elem's polynomial iff refinement never separates
        root = self._roots[self.embedding_order[j]]
        if root.exact:
            from .polyroots import poly_sign_at
            return poly_sign_at(tuple(elem.coeffs), root.lo) == 0
        # irrational root: zero iff gcd(elem, poly) vanishes there; test by
        # a few refinement rounds, falling back to exactness via resultant
        iv = self.embed_iv(elem, 2 * START_PREC)[j]
        if iv.sign() is not None:
            return iv.sign() == 0
        # shared factor: elem vanishes at this root iff gcd has a root here
        from .polyroots import sturm_chain, sturm_count
        g = _rational_gcd(self.poly, tuple(elem.coeffs))
        chain = sturm_chain(g)
        return sturm_count(chain, root.lo, root.hi) > 0

    # ---- predicates ----

    def is_totally_positive(self, elem: FieldElement) -> bool:
        return all(s > 0 for s in self.conjugate_signs(elem))

    def is_unit(self, elem: FieldElement) -> bool:
        """Algebraic-integer unit test via the exact characteristic
        polynomial: integral coefficients and constant term +-1."""
        if elem.is_zero():
            raise ZeroElement("unit test of zero")
        cp = self.charpoly_of(elem)
        if any(c.denominator != 1 for c in cp):
            return False
        return abs(cp[0]) == 1

    # ---- logs and the regulator ----

    def _positive_conjugates(self, elem: FieldElement, prec: int):
        """Conjugate enclosures certified positive, refining as needed past
        the requested precision (the element must be totally positive)."""
        p = prec
        while True:
            conj = self.embed_iv(elem, p)
            if all(iv.is_positive() for iv in conj):
                return conj
            if p >= self.prec_cap:
                raise PrecisionCapExceeded(
                    "conjugates not certified positive at the cap")
            p = min(2 * p, self.prec_cap)

    def log_embedding_iv(self, elem: FieldElement, prec: int):
        """Enclosures of (log x^(1), ..., log x^(n-1))."""
        conj = self._positive_conjugates(elem, prec)
        return [log_iv(iv, prec) for iv in conj[:-1]]

    def _log_rows(self, units, prec):
        """Rows j of the (n-1)x(n-1) matrix log(eps_i^(j))."""
        cols = [self.log_embedding_iv(u, prec) for u in units]
        r = self.degree - 1
        return [[cols[i][j] for i in range(r)] for j in range(r)]

    def log_vector(self, elem: FieldElement, prec: int = START_PREC):
        """First n-1 coordinates of the log embedding, as floats certified
        at the requested working precision."""
        if not self.is_totally_positive(elem):
            raise NotTotallyPositive("log vector requires a totally positive element")
        return [iv.mid_float() for iv in self.log_embedding_iv(elem, prec)]

    def signed_regulator_sign(self, units) -> int:
        """Sign of det(Log eps_1, ..., Log eps_{n-1}); 0 exactly when the
        units are multiplicatively dependent (confirmed in exact
        arithmetic), otherwise certified by adaptive precision."""
        units = [self.element_like(u) for u in units]
        if len(units) != self.degree - 1:
            raise ValueError(f"need exactly {self.degree - 1} units")
        for u in units:
            if not self.is_totally_positive(u):
                raise NotTotallyPositive("regulator needs totally positive units")
        prec = START_PREC
        while True:
            det = iv_det(self._log_rows(units, prec))
            s = det.sign()
            if s is not None:
                return s
            rel = self._dependence_relation(units, prec)
            if rel is not None:
                return 0
            if prec >= self.prec_cap:
                raise PrecisionCapExceeded(
                    f"regulator sign not certified at {self.prec_cap} bits")
            prec = min(2 * prec, self.prec_cap)

    def _dependence_relation(self, units, prec):
        """Integer-relation candidate among the unit logs, confirmed exactly
        by evaluating the corresponding power product in the field."""
        if len(units) == 1:
            return (1,) if units[0] == self.one else None
        import mpmath

        logs = [log_iv(self.embed_iv(u, prec)[0], prec).mid_fraction() for u in units]
        with mpmath.workprec(prec + 16):
            vals = [mpmath.mpf(v.numerator) / mpmath.mpf(v.denominator) for v in logs]
            try:
                rel = mpmath.pslq(vals, tol=mpmath.mpf(2) ** (-(prec // 2)), maxcoeff=10 ** 9)
            except Exception:
                rel = None
        if not rel or not any(rel):
            return None
        acc = self.one
        for u, a in zip(units, rel):
            acc = acc * u ** int(a)
        return tuple(int(a) for a in rel) if acc == self.one else None

    def check_regulator_identity(self, units, tol: float = 1e-10) -> bool:
        """Diagnostic: det(LOG l(eps_i)) must equal n * det(Log eps_i)."""
        units = [self.element_like(u) for u in units]
        n = self.degree
        r = n - 1
        prec = START_PREC
        while True:
            cols_plain = []
            cols_proj = []
            for u in units:
                logs = [log_iv(iv, prec) for iv in self._positive_conjugates(u, prec)]
                cols_plain.append(logs[:-1])
                cols_proj.append([lg - logs[-1] for lg in logs[:-1]])
            lhs = iv_det([[cols_proj[i][j] for i in range(r)] for j in range(r)])
            rhs = iv_det([[cols_plain[i][j] for i in range(r)] for j in range(r)])
            diff = lhs - rhs.mul_int(n)
            if diff.width_fraction() < Fraction(tol) / 10 or prec >= self.prec_cap:
                return abs(diff.mid_fraction()) <= Fraction(tol)
            prec = min(2 * prec, self.prec_cap)

    def __repr__(self):
        return f"NumberField({list(self.poly)})"


def _iv_pair(lo: Fraction, hi: Fraction) -> Iv:
    a = Iv.from_fraction(lo, 0)   # endpoints are dyadic, so this is exact
    b = Iv.from_fraction(hi, 0)
    return Iv(a.lm, a.le, b.um, b.ue)


def _rational_gcd(f, g):
    from .polyroots import _poly_rem, poly_degree

    a = poly_trim(tuple(Fraction(c) for c in f))
    b = poly_trim(tuple(Fraction(c) for c in g))
    while poly_degree(b) > 0:
        a, b = b, _poly_rem(a, b)
    if poly_degree(b) == 0 and b[0] != 0:
        return (Fraction(1),)
    return a


# ---- spec-level functions ----

def new_field(coeffs, embedding_order=None, prec_cap: int = DEFAULT_PREC_CAP) -> NumberField:
    return NumberField(coeffs, embedding_order=embedding_order, prec_cap=prec_cap)


def frac_to_str(fr: Fraction) -> str:
    return str(fr.numerator) if fr.denominator == 1 else f"{fr.numerator}/{fr.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s))


def field_from_json(obj):
    """Parse the field JSON {"poly": [...], "units": [["p/q", ...], ...]}."""
    fld = NumberField([int(c) for c in obj["poly"]])
    units = [fld.element([parse_rational(c) for c in u]) for u in obj.get("units", [])]
    return fld, units


def field_to_json(field: NumberField, units):
    return {
        "poly": [int(c) for c in field.poly],
        "units": [[frac_to_str(c) for c in u.coeffs] for u in units],
    }
