"""Exact integer and rational matrix arithmetic.

Everything in this package reduces to linear algebra over Z and Q, and all of
it must be reproducible bit for bit, so matrices are plain lists of lists of
int or Fraction and every routine here is exact.  The module provides the
normal forms (Smith, Hermite), congruence diagonalization, determinants,
inverses and the LDL split used by the short-vector enumerator.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]
FracMatrix = list[list[Fraction]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(a):
    return [row[:] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    return [[sum(a[i][t] * bt[j][t] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def vec_dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def scalar_mul(c, a):
    return [[c * x for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_equal(a, b) -> bool:
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return False
    return all(Fraction(x) == Fraction(y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def frac_matrix(a) -> FracMatrix:
    return [[Fraction(x) for x in row] for row in a]


def int_matrix(a) -> Matrix:
    """Cast a rational matrix with integer entries back to int, or raise."""
    out = []
    for row in a:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError(f"entry {x} is not an integer")
            new.append(f.numerator)
        out.append(new)
    return out


def is_integral(a) -> bool:
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def determinant(a) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    n = len(a)
    m = frac_matrix(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def invert(a) -> FracMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(a)
    m = frac_matrix(a)
    aug = [m[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, d, v) with u*a*v = d diagonal, u and v unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    m, n = len(a), len(a[0])
    d = copy_matrix(a)
    u = identity(m)
    v = identity(n)

    def row_op(i, j, c):  # row i += c * row j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, c):  # col i += c * col j
        for row in d:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # choose the smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if d[i][t] % d[t][t] != 0:
                dirty = True
            row_op(i, t, -(d[i][t] // d[t][t]))
        for j in range(t + 1, n):
            if d[t][j] % d[t][t] != 0:
                dirty = True
            col_op(j, t, -(d[t][j] // d[t][t]))
        if dirty and (any(d[i][t] for i in range(t + 1, m)) or any(d[t][j] for j in range(t + 1, n))):
            continue
        # pivot must divide the whole trailing block for the divisibility chain
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, 1)
            continue
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def row_hermite_form(a: Matrix) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    The returned rows are a canonical basis (over Z) of the row space of the
    input: echelon shape, positive pivots, entries above each pivot reduced
    into [0, pivot).
    """
    rows = [row[:] for row in a if any(row)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not live:
            continue
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(rows[i][c]))
            base = live[0]
            for i in live[1:]:
                q = rows[i][c] // rows[base][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[base])]
        live = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not live:
            continue
        rows[r], rows[live[0]] = rows[live[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for j in range(r):
            q = rows[j][c] // rows[r][c]
            if q:
                rows[j] = [x - q * y for x, y in zip(rows[j], rows[r])]
        r += 1
    rows = [row for row in rows[:r] if any(row)]
    return rows


def _val(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def congruent_diagonal(g, p: int | None = None) -> tuple[FracMatrix, list[Fraction]]:
    """Diagonalize a symmetric rational matrix by congruence: b*g*bt = diag.

    Returns (b, diag).  With p set, pivots are chosen with minimal p-adic
    valuation, which keeps the transform p-integral and makes the diagonal a
    valid p-adic Jordan splitting for odd p.
    """
    n = len(g)
    m = frac_matrix(g)
    b = frac_matrix(identity(n))

    def apply_row(i, j, c):  # row i += c row j, and same on columns, and on b
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        for row in m:
            row[i] += c * row[j]
        b[i] = [x + c * y for x, y in zip(b[i], b[j])]

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]
        b[i], b[j] = b[j], b[i]

    for t in range(n):
        entries = [(i, j) for i in range(t, n) for j in range(t, i + 1) if m[i][j] != 0]
        if not entries:
            break
        if p is None:
            key = lambda ij: (ij[0] != ij[1], abs(m[ij[0]][ij[1]]))
        else:
            key = lambda ij: (_val(m[ij[0]][ij[1]], p), ij[0] != ij[1])
        i, j = min(entries, key=key)
        if i != j:
            # pull the off-diagonal pivot onto the diagonal first
            apply_row(i, j, 1)
            if m[i][i] == 0:
                raise ArithmeticError("could not realize pivot on the diagonal")
        if i != t:
            swap(t, i)
        for r in range(t + 1, n):
            if m[r][t] != 0:
                apply_row(r, t, -m[r][t] / m[t][t])
    diag = [m[i][i] for i in range(n)]
    return b, diag


def signature(g) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero count) of a symmetric matrix."""
    _, diag = congruent_diagonal(g)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    return pos, neg, len(diag) - pos - neg


def matrix_rank(a) -> int:
    """Rank over Q by row echelon elimination."""
    if not a:
        return 0
    m = frac_matrix(a)
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def ldl_decomposition(g) -> tuple[list[Fraction], FracMatrix]:
    """Split a positive definite symmetric matrix as sum-of-squares data.

    Returns (d, l) such that  x^t g x = sum_i d[i] * (x_i + sum_{j>i} l[i][j] x_j)^2.
    Raises ValueError when g is not positive definite.
    """
    n = len(g)
    q = frac_matrix(g)
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    d = [q[i][i] for i in range(n)]
    l = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return d, l
