"""Exact linear algebra: rational Gaussian elimination and integer HNF.

Everything here is small (n <= 6 ambient dimension), so clarity beats
asymptotics: plain fraction elimination and gcd-style row reduction.
"""

from __future__ import annotations

from fractions import Fraction


# ---- rational matrices (lists of lists of Fraction) ----

def mat_det(mat) -> Fraction:
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def mat_solve(mat, rhs):
    """Solve mat @ x = rhs exactly; raises ZeroDivisionError if singular."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(mat, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def mat_inv(mat):
    n = len(mat)
    cols = [mat_solve(mat, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def mat_vec(a, v):
    return [sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def mat_rank(mat) -> int:
    if not mat:
        return 0
    a = [[Fraction(x) for x in row] for row in mat]
    rank = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][c]
        a[rank] = [x * inv for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def charpoly(mat):
    """Characteristic polynomial det(xI - M), coefficients low degree first,
    by the Faddeev-LeVerrier recursion (exact over Q)."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    coeffs = [Fraction(1)]          # degree n down to 0, built high->low
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs.append(c)
        for i in range(n):
            m[i][i] += c
    return tuple(reversed(coeffs))


# ---- integer matrices ----

def _row_sub(r1, r2, q):
    return [a - q * b for a, b in zip(r1, r2)]


def hnf_rows(gens, ncols=None):
    """Canonical row Hermite normal form of the lattice spanned by the given
    integer generator rows: echelon rows with positive pivots and entries
    above each pivot reduced into [0, pivot)."""
    rows = [list(g) for g in gens if any(g)]
    if ncols is None:
        ncols = len(gens[0])
    r0 = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r0, len(rows)) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][c] // rows[i0][c]
                rows[i] = _row_sub(rows[i], rows[i0], q)
        nz = [i for i in range(r0, len(rows)) if rows[i][c] != 0]
        if not nz:
            continue
        rows[r0], rows[nz[0]] = rows[nz[0]], rows[r0]
        if rows[r0][c] < 0:
            rows[r0] = [-a for a in rows[r0]]
        for i in range(r0):
            q = rows[i][c] // rows[r0][c]
            if q:
                rows[i] = _row_sub(rows[i], rows[r0], q)
        r0 += 1
    return [tuple(r) for r in rows[:r0] if any(r)]


def hnf_with_transform(mat):
    """(H, U) with U unimodular, U @ mat = H, H in row echelon (not reduced
    above pivots; zero rows kept)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r0 = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r0, nrows) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][c] // rows[i0][c]
                rows[i] = _row_sub(rows[i], rows[i0], q)
                u[i] = _row_sub(u[i], u[i0], q)
        nz = [i for i in range(r0, nrows) if rows[i][c] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[r0], rows[i0] = rows[i0], rows[r0]
        u[r0], u[i0] = u[i0], u[r0]
        r0 += 1
    return rows, u


def int_kernel(mat):
    """Basis of the integer kernel {x in Z^m : mat @ x = 0} (mat is k x m)."""
    m = len(mat[0])
    transposed = [[mat[r][c] for r in range(len(mat))] for c in range(m)]
    h, u = hnf_with_transform(transposed)
    return [tuple(u[i]) for i in range(m) if not any(h[i])]


def hnf_solve(hrows, v):
    """Integer coordinates of v in the row-HNF basis, or None."""
    v = list(v)
    coords = []
    pivots = []
    for row in hrows:
        c = next(i for i, x in enumerate(row) if x != 0)
        pivots.append(c)
    for row, c in zip(hrows, pivots):
        if v[c] % row[c] != 0:
            return None
        q = v[c] // row[c]
        coords.append(q)
        if q:
            v = _row_sub(v, row, q)
    if any(v):
        return None
    return coords
