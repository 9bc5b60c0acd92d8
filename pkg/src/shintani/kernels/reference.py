"""Reference backend: vectorized NumPy box sums and a NumPy-assisted
prime-splitting scan.  Correctness first; the compiled backend mirrors it."""

from __future__ import annotations

import numpy as np


def box_sum(z, gens, s, radius, scale=1.0):
    """Truncated Shintani sum over the box {0..radius}^n.

    The grid over the trailing n-1 axes is precomputed once; the leading
    axis is looped to bound memory.  numpy's pairwise summation keeps the
    float error negligible against the truncation bound.
    """
    n = len(z)
    m = np.arange(radius + 1, dtype=np.float64)
    if n == 1:
        a = z[0] + scale * m * gens[0][0]
        return float(np.sum(a ** -s))
    shape = (radius + 1,) * (n - 1)
    grids = []
    for j in range(n):
        g = np.zeros(shape)
        for i in range(1, n):
            idx = [None] * (n - 1)
            idx[i - 1] = slice(None)
            g = g + m[tuple(idx)] * gens[i][j]
        grids.append(g)
    total = 0.0
    int_s = s == int(s) and 1 <= int(s) <= 8
    for m0 in range(radius + 1):
        prod = None
        for j in range(n):
            a = z[j] + scale * (m0 * gens[0][j] + grids[j])
            prod = a if prod is None else prod * a
        if int_s:
            total += float(np.sum(1.0 / prod ** int(s)))
        else:
            total += float(np.sum(prod ** -s))
    return total


# ---- small polynomial arithmetic over F_p (lists, low degree first) ----

def _deg(c, p):
    d = len(c) - 1
    while d >= 0 and c[d] % p == 0:
        d -= 1
    return d


def _monic(c, p):
    d = _deg(c, p)
    if d < 0:
        return [0]
    inv = pow(c[d] % p, p - 2, p)
    return [x * inv % p for x in c[: d + 1]]


def _poly_gcd(a, b, p):
    a = [x % p for x in a]
    b = [x % p for x in b]
    da, db = _deg(a, p), _deg(b, p)
    if da < db:
        a, b, da, db = b, a, db, da
    while db >= 0:
        inv = pow(b[db], p - 2, p)
        while da >= db:
            coef = a[da] * inv % p
            if coef:
                for i in range(db + 1):
                    a[da - db + i] = (a[da - db + i] - coef * b[i]) % p
            da = _deg(a, p)
        a, b, da, db = b, a, db, da
    return _monic(a, p)


def _poly_quot_exact(a, b, p):
    """a / b over F_p, assuming exact division."""
    a = [x % p for x in a]
    b = b[: _deg(b, p) + 1]
    db = len(b) - 1
    out = [0] * (_deg(a, p) - db + 1)
    inv = pow(b[-1] % p, p - 2, p)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + db] * inv % p
        out[k] = c
        if c:
            for i in range(db + 1):
                a[k + i] = (a[k + i] - c * b[i]) % p
    return out


def _poly_mul_mod(a, b, g, p):
    """a * b mod (g, p); g monic of degree >= 1."""
    n = len(g) - 1
    prod = [0] * max(1, 2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(n):
                prod[k - n + j] = (prod[k - n + j] - c * g[j]) % p
    return prod[:n]


def _poly_reduce(a, g, p):
    n = len(g) - 1
    a = [x % p for x in a]
    for k in range(len(a) - 1, n - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            for j in range(n):
                a[k - n + j] = (a[k - n + j] - c * g[j]) % p
    out = a[:n]
    return out + [0] * (n - len(out))


def _xp_mod(g, p):
    """x^p mod (g, p) for monic g of degree >= 2."""
    n = len(g) - 1
    cur = [1] + [0] * (n - 1)
    sq = [0, 1] + [0] * (n - 2)
    e = p
    while e:
        if e & 1:
            cur = _poly_mul_mod(cur, sq, g, p)
        sq = _poly_mul_mod(sq, sq, g, p)
        e >>= 1
    return cur


def _frobenius_step(y, g, p):
    """y -> y^p mod (g, p)."""
    n = len(g) - 1
    cur = [1] + [0] * (n - 1)
    sq = list(y)
    e = p
    while e:
        if e & 1:
            cur = _poly_mul_mod(cur, sq, g, p)
        sq = _poly_mul_mod(sq, sq, g, p)
        e >>= 1
    return cur


def _radical(f, p):
    """Product of the distinct irreducible factors of f over F_p.  Needs the
    characteristic-p cases: a vanishing derivative means f is a p-th power
    (Frobenius fixes F_p, so the root keeps the same coefficients), and
    factors with multiplicity divisible by p survive in gcd(f, f')."""
    f = _monic(f, p)
    if _deg(f, p) <= 0:
        return [1]
    fp = [(i * f[i]) % p for i in range(1, len(f))]
    if _deg(fp, p) < 0:
        root = [f[i * p] for i in range((len(f) - 1) // p + 1)]
        return _radical(root, p)
    c = _poly_gcd(list(f), fp, p)
    if _deg(c, p) == 0:
        return f
    w = _monic(_poly_quot_exact(f, c, p), p)     # factors with p nmid e, once
    rest = f
    while True:
        g = _poly_gcd(rest, w, p)
        if _deg(g, p) <= 0:
            break
        rest = _monic(_poly_quot_exact(rest, g, p), p)
    if _deg(rest, p) > 0:
        # rest collects the factors with multiplicity divisible by p
        other = _radical(rest, p)
        out = [0] * (_deg(w, p) + _deg(other, p) + 1)
        for i, a in enumerate(w):
            if a:
                for j, b in enumerate(other):
                    out[i + j] = (out[i + j] + a * b) % p
        return _monic(out, p)
    return w


def _counts_one_prime(poly, p):
    """Distinct-degree factor counts of the squarefree part of poly mod p,
    by plain distinct-degree factorization."""
    n = len(poly) - 1
    f = [c % p for c in poly]
    g = _radical(f, p)
    counts = [0] * n
    d = 1
    y = None
    while True:
        m = _deg(g, p)
        if m <= 0:
            break
        if 2 * d > m:
            counts[m - 1] += 1
            break
        if y is None:
            y = _xp_mod(g, p)
        sub = list(y)
        sub[1] = (sub[1] - 1) % p
        h = _poly_gcd(g, sub, p)
        dh = _deg(h, p)
        if dh > 0:
            counts[d - 1] += dh // d
            g = _monic(_poly_quot_exact(g, h, p), p)
            if _deg(g, p) <= 0:
                break
            y = _poly_reduce(y, g, p)
        y = _frobenius_step(y, g, p)
        d += 1
    return tuple(counts)


# ---- vectorized Frobenius for the typical primes ----

def _xp_mod_f_vec(poly, primes):
    """x^p mod (f, p) for every prime at once: one square-and-multiply
    ladder over the bits of p, masked per prime.  Coefficients stay below
    p^2 * n < 2^63 for the prime ranges used here."""
    n = len(poly) - 1
    p = np.asarray(primes, dtype=np.int64)
    red = np.empty((n, len(p)), dtype=np.int64)     # x^n = sum red[j] x^j
    for k in range(n):
        red[k] = (-poly[k]) % p

    def mul(a, b):
        prod = [np.zeros(len(p), dtype=np.int64) for _ in range(2 * n - 1)]
        for i in range(n):
            ai = a[i]
            for j in range(n):
                prod[i + j] = (prod[i + j] + ai * b[j]) % p
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            for j in range(n):
                prod[k - n + j] = (prod[k - n + j] + c * red[j]) % p
        return prod[:n]

    cur = [np.zeros(len(p), dtype=np.int64) for _ in range(n)]
    cur[0] = np.ones(len(p), dtype=np.int64)
    base = [np.zeros(len(p), dtype=np.int64) for _ in range(n)]
    base[1] = np.ones(len(p), dtype=np.int64)
    maxbits = int(p.max()).bit_length()
    for bit in range(maxbits - 1, -1, -1):
        cur = mul(cur, cur)
        mask = ((p >> bit) & 1).astype(bool)
        if mask.any():
            nxt = mul(cur, base)
            cur = [np.where(mask, nxt[k], cur[k]) for k in range(n)]
    return cur


def _counts_from_frobenius(poly, p, xp):
    """Counts for a prime where poly stays squarefree mod p, given
    x^p mod (f, p).  Small-degree casework avoids most gcd work."""
    n = len(poly) - 1
    f = [c % p for c in poly]
    sub = list(xp)
    sub[1] = (sub[1] - 1) % p
    r1 = _deg(_poly_gcd(f, sub, p), p) if any(x % p for x in sub) else n
    counts = [0] * n
    if r1:
        counts[0] = r1
    left = n - r1
    if left == 0:
        return tuple(counts)
    if left == 2:
        counts[1] = 1
        return tuple(counts)
    if left == 3:
        counts[2] = 1
        return tuple(counts)
    if left == 4 and n == 4:
        # no linear factors: (2,2) or (4), separated by roots in F_p^2
        y2 = _frobenius_step(list(xp), f, p)
        sub2 = list(y2)
        sub2[1] = (sub2[1] - 1) % p
        r2 = _deg(_poly_gcd(f, sub2, p), p) if any(x % p for x in sub2) else n
        if r2 == 4:
            counts[1] = 2
        else:
            counts[3] = 1
        return tuple(counts)
    return _counts_one_prime(poly, p)


def splitting_counts(poly, primes):
    """Distinct-factor degree counts of the squarefree part of poly mod p
    for every prime: the ramified (p | disc) primes go through plain DDF,
    the rest share one vectorized Frobenius ladder."""
    from ..polyroots import poly_discriminant

    out = [None] * len(primes)
    disc = poly_discriminant(poly)
    plain_idx = [i for i, p in enumerate(primes) if disc % int(p) != 0]
    for i, p in enumerate(primes):
        if disc % int(p) == 0:
            out[i] = _counts_one_prime(poly, int(p))
    if plain_idx:
        sub = np.asarray([int(primes[i]) for i in plain_idx], dtype=np.int64)
        xp = _xp_mod_f_vec(poly, sub)
        n = len(poly) - 1
        for k, i in enumerate(plain_idx):
            p = int(sub[k])
            xp_k = [int(xp[j][k]) for j in range(n)]
            out[i] = _counts_from_frobenius(poly, p, xp_k)
    return out
