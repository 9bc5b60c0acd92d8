# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the hot kernels: the truncated Shintani box sum and
the per-prime splitting scan.  Mirrors reference.py exactly; degrees 2-4 get
tight loops, anything else falls back to the reference implementation."""

from libc.math cimport pow as cpow


cdef inline double _ipow(double x, int k):
    cdef double r = 1.0
    while k:
        if k & 1:
            r *= x
        x *= x
        k >>= 1
    return r


cdef double _box2(double z0, double z1,
                  double g00, double g01, double g10, double g11,
                  double s, int radius, double scale):
    cdef double total = 0.0, comp = 0.0, y, t, term, prod
    cdef double a0, a1, b0, b1
    cdef bint s_int = (s == <double>(<int> s)) and 1 <= <int> s <= 8
    cdef int si = <int> s
    cdef int m0, m1
    a0 = z0
    a1 = z1
    for m0 in range(radius + 1):
        b0 = a0
        b1 = a1
        for m1 in range(radius + 1):
            prod = b0 * b1
            term = 1.0 / _ipow(prod, si) if s_int else cpow(prod, -s)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
            b0 += scale * g10
            b1 += scale * g11
        a0 += scale * g00
        a1 += scale * g01
    return total


cdef double _box3(double z0, double z1, double z2,
                  double g00, double g01, double g02,
                  double g10, double g11, double g12,
                  double g20, double g21, double g22,
                  double s, int radius, double scale):
    cdef double total = 0.0, comp = 0.0, y, t, term, prod
    cdef double a0, a1, a2, b0, b1, b2, c0, c1, c2
    cdef bint s_int = (s == <double>(<int> s)) and 1 <= <int> s <= 8
    cdef int si = <int> s
    cdef int m0, m1, m2
    a0 = z0; a1 = z1; a2 = z2
    for m0 in range(radius + 1):
        b0 = a0; b1 = a1; b2 = a2
        for m1 in range(radius + 1):
            c0 = b0; c1 = b1; c2 = b2
            for m2 in range(radius + 1):
                prod = c0 * c1 * c2
                term = 1.0 / _ipow(prod, si) if s_int else cpow(prod, -s)
                y = term - comp
                t = total + y
                comp = (t - total) - y
                total = t
                c0 += scale * g20
                c1 += scale * g21
                c2 += scale * g22
            b0 += scale * g10
            b1 += scale * g11
            b2 += scale * g12
        a0 += scale * g00
        a1 += scale * g01
        a2 += scale * g02
    return total


cdef double _box4(double[4] z, double[4][4] g, double s, int radius, double scale):
    cdef double total = 0.0, comp = 0.0, y, t, term, prod
    cdef double a[4]
    cdef double b[4]
    cdef double c[4]
    cdef double d[4]
    cdef bint s_int = (s == <double>(<int> s)) and 1 <= <int> s <= 8
    cdef int si = <int> s
    cdef int m0, m1, m2, m3, j
    for j in range(4):
        a[j] = z[j]
    for m0 in range(radius + 1):
        for j in range(4):
            b[j] = a[j]
        for m1 in range(radius + 1):
            for j in range(4):
                c[j] = b[j]
            for m2 in range(radius + 1):
                for j in range(4):
                    d[j] = c[j]
                for m3 in range(radius + 1):
                    prod = d[0] * d[1] * d[2] * d[3]
                    term = 1.0 / _ipow(prod, si) if s_int else cpow(prod, -s)
                    y = term - comp
                    t = total + y
                    comp = (t - total) - y
                    total = t
                    for j in range(4):
                        d[j] += scale * g[3][j]
                for j in range(4):
                    c[j] += scale * g[2][j]
            for j in range(4):
                b[j] += scale * g[1][j]
        for j in range(4):
            a[j] += scale * g[0][j]
    return total


def box_sum(z, gens, double s, int radius, double scale=1.0):
    cdef int n = len(z)
    cdef double z4[4]
    cdef double g4[4][4]
    cdef int i, j
    if n == 2:
        return _box2(z[0], z[1], gens[0][0], gens[0][1],
                     gens[1][0], gens[1][1], s, radius, scale)
    if n == 3:
        return _box3(z[0], z[1], z[2],
                     gens[0][0], gens[0][1], gens[0][2],
                     gens[1][0], gens[1][1], gens[1][2],
                     gens[2][0], gens[2][1], gens[2][2], s, radius, scale)
    if n == 4:
        for i in range(4):
            z4[i] = z[i]
            for j in range(4):
                g4[i][j] = gens[i][j]
        return _box4(z4, g4, s, radius, scale)
    from . import reference
    return reference.box_sum(z, gens, s, radius, scale)


# ---- prime splitting ----

DEF MAXDEG = 6

cdef long long _powmod(long long a, long long e, long long p):
    cdef long long r = 1
    a %= p
    while e:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


cdef void _pmulmod(long long* a, long long* b, long long* out,
                   long long* red, int n, long long p):
    """out = a*b mod (f, p) with x^n = sum red[j] x^j; a, b of length n."""
    cdef long long prod[2 * MAXDEG]
    cdef int i, j, k
    cdef long long c
    for i in range(2 * n - 1):
        prod[i] = 0
    for i in range(n):
        if a[i]:
            for j in range(n):
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(n):
                prod[k - n + j] = (prod[k - n + j] + c * red[j]) % p
    for i in range(n):
        out[i] = prod[i]


cdef void _xp_mod(long long* red, int n, long long p, long long* out):
    """x^p mod (f, p) by square-and-multiply."""
    cdef long long cur[MAXDEG]
    cdef long long sq[MAXDEG]
    cdef long long tmp[MAXDEG]
    cdef int i, bit, nbits
    for i in range(n):
        cur[i] = 0
        sq[i] = 0
    cur[0] = 1
    sq[1] = 1
    nbits = 0
    while (p >> nbits) > 0:
        nbits += 1
    for bit in range(nbits - 1, -1, -1):
        _pmulmod(cur, cur, tmp, red, n, p)
        for i in range(n):
            cur[i] = tmp[i]
        if (p >> bit) & 1:
            _pmulmod(cur, sq, tmp, red, n, p)
            for i in range(n):
                cur[i] = tmp[i]
    for i in range(n):
        out[i] = cur[i]


cdef int _pdeg(long long* a, int top, long long p):
    cdef int d = top
    while d >= 0 and a[d] % p == 0:
        d -= 1
    return d


cdef int _pgcd_deg(long long* a0, int da, long long* b0, int db, long long p):
    """Degree of gcd of two polynomials over F_p (destroys local copies)."""
    cdef long long a[MAXDEG + 1]
    cdef long long b[MAXDEG + 1]
    cdef long long inv, coef
    cdef int i, tmp
    for i in range(da + 1):
        a[i] = a0[i] % p
    for i in range(db + 1):
        b[i] = b0[i] % p
    da = _pdeg(a, da, p)
    db = _pdeg(b, db, p)
    if da < db:
        for i in range(max(da, db) + 1):
            a[i], b[i] = b[i], a[i]
        tmp = da; da = db; db = tmp
    while db >= 0:
        inv = _powmod(b[db], p - 2, p)
        while da >= db:
            coef = (a[da] * inv) % p
            if coef:
                for i in range(db + 1):
                    a[da - db + i] = (a[da - db + i] - coef * b[i]) % p
            da = _pdeg(a, da, p)
        for i in range(max(da, db, 0) + 1):
            a[i], b[i] = b[i], a[i]
        tmp = da; da = db; db = tmp
    return da


def splitting_counts(poly, primes):
    """Same contract as reference.splitting_counts."""
    from . import reference
    from ..polyroots import poly_discriminant

    cdef int n = len(poly) - 1
    if n > 4:
        return reference.splitting_counts(poly, primes)
    disc = poly_discriminant(list(poly))
    out = [None] * len(primes)

    cdef long long f[MAXDEG + 1]
    cdef long long red[MAXDEG]
    cdef long long xp[MAXDEG]
    cdef long long xp2[MAXDEG]
    cdef long long sub[MAXDEG + 1]
    cdef long long tmp[MAXDEG]
    cdef long long p
    cdef int i, j, r1, r2, left, nonzero
    cdef long long e

    coeffs = [int(c) for c in poly]
    for idx, pobj in enumerate(primes):
        p = <long long> pobj
        if disc % pobj == 0:
            out[idx] = reference._counts_one_prime(coeffs, int(pobj))
            continue
        for i in range(n + 1):
            f[i] = coeffs[i] % p
        for i in range(n):
            red[i] = (-coeffs[i]) % p
        _xp_mod(red, n, p, xp)
        for i in range(n):
            sub[i] = xp[i]
        sub[1] = (sub[1] - 1) % p
        nonzero = 0
        for i in range(n):
            if sub[i] % p:
                nonzero = 1
                break
        if not nonzero:
            r1 = n
        else:
            r1 = _pgcd_deg(f, n, sub, n - 1, p)
            if r1 < 0:
                r1 = 0
        counts = [0] * n
        if r1:
            counts[0] = r1
        left = n - r1
        if left == 2:
            counts[1] = 1
        elif left == 3:
            counts[2] = 1
        elif left == 4:
            # (2,2) vs (4): one more Frobenius step: xp2 = xp^p mod f
            for i in range(n):
                xp2[i] = 0
            xp2[0] = 1
            e = p
            for i in range(n):
                tmp[i] = xp[i]
            while e:
                if e & 1:
                    _pmulmod(xp2, tmp, sub, red, n, p)
                    for i in range(n):
                        xp2[i] = sub[i]
                _pmulmod(tmp, tmp, sub, red, n, p)
                for i in range(n):
                    tmp[i] = sub[i]
                e >>= 1
            for i in range(n):
                sub[i] = xp2[i]
            sub[1] = (sub[1] - 1) % p
            nonzero = 0
            for i in range(n):
                if sub[i] % p:
                    nonzero = 1
                    break
            r2 = n if not nonzero else _pgcd_deg(f, n, sub, n - 1, p)
            if r2 == 4:
                counts[1] = 2
            else:
                counts[3] = 1
        out[idx] = tuple(counts)
    return out
