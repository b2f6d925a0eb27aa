"""Exact linear algebra over the rationals.

Matrices are lists of lists of ints or Fractions; nothing here ever touches
floating point.  Sizes in this package stay small (a few hundred rows at
most), so plain Gaussian elimination with full pivot bookkeeping is enough.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(a, b):
    """Product of two matrices (lists of rows)."""
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    bt = list(zip(*b))
    return [[sum(ra[t] * cb[t] for t in range(k)) for cb in bt] for ra in a]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def transpose(a):
    return [list(row) for row in zip(*a)]


def zero_matrix(n, m=None):
    m = n if m is None else m
    return [[0] * m for _ in range(n)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def mat_pow(a, k):
    n = len(a)
    out = identity(n)
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def rank(rows):
    """Rank of a matrix, by fraction-free elimination with gcd reduction."""
    m = [[int(x) if isinstance(x, int) else x for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                a, b = pr[c], m[i][c]
                m[i] = [a * x - b * y for x, y in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r


def rref(rows, ncols=None):
    """Reduced row echelon form over Fraction.

    Returns (rref_rows, pivot_columns).
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(a_columns, b):
    """Solve sum_j x_j * a_columns[j] = b exactly.

    Returns the Fraction solution vector, or None if the system is
    inconsistent.  When the columns are linearly independent the solution is
    unique; otherwise free variables are set to zero.
    """
    ncols = len(a_columns)
    nrows = len(b)
    aug = [[Fraction(a_columns[j][i]) for j in range(ncols)] + [Fraction(b[i])]
           for i in range(nrows)]
    red, pivots = rref(aug, ncols=ncols + 1)
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        if c == ncols:
            return None
        x[c] = row[ncols]
    # Consistency check covers the dependent-column case.
    for i in range(nrows):
        if sum(x[j] * Fraction(a_columns[j][i]) for j in range(ncols)) != Fraction(b[i]):
            return None
    return x


def simplex_max(a, b, c):
    """Maximize c.x subject to a.x <= b, x >= 0, all data rational.

    Requires b >= 0 (the origin is feasible, which holds for every use in
    this package).  Returns ('optimal', value) or ('unbounded', None).
    Bland's rule guarantees termination.
    """
    m, n = len(a), len(c)
    assert all(x >= 0 for x in b)
    # Tableau rows: m constraint rows + objective row; columns: n vars,
    # m slacks, rhs.
    t = [[Fraction(a[i][j]) for j in range(n)]
         + [Fraction(1) if k == i else Fraction(0) for k in range(m)]
         + [Fraction(b[i])] for i in range(m)]
    obj = [Fraction(-c[j]) for j in range(n)] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            return "optimal", obj[-1]
        ratios = [(t[i][-1] / t[i][enter], basis[i], i)
                  for i in range(m) if t[i][enter] > 0]
        if not ratios:
            return "unbounded", None
        _, _, leave = min(ratios)
        piv = t[leave][enter]
        t[leave] = [x / piv for x in t[leave]]
        for i in range(m):
            if i != leave and t[i][enter] != 0:
                f = t[i][enter]
                t[i] = [x - f * y for x, y in zip(t[i], t[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, t[leave])]
        basis[leave] = enter
