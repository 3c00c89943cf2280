"""Small exact linear algebra over rationals.

All matrices are tuples of row tuples with Fraction entries; nothing here
is sized for more than a few dozen rows.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]


def to_fraction_matrix(rows) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Mat:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_vec(m: Mat, v) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def trace(m: Mat) -> Fraction:
    return sum(m[i][i] for i in range(len(m)))


def is_symmetric(m: Mat) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def determinant(m: Mat) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    a = [list(row) for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def solve(m: Mat, b) -> Vec:
    """Solve m x = b exactly; raises ValueError if m is singular."""
    n = len(m)
    a = [list(row) + [Fraction(b[i])] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def kernel_basis(rows) -> list[Vec]:
    """Basis of the right kernel of a (possibly non-square) rational matrix."""
    if not rows:
        return []
    ncols = len(rows[0])
    a = [list(map(Fraction, row)) for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -a[i][f]
        basis.append(tuple(v))
    return basis


def char_poly(m: Mat) -> list[Fraction]:
    """Coefficients [c0, ..., c_{n-1}, 1] of det(lam*I - m), Faddeev-LeVerrier."""
    n = len(m)
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    mk = m
    for k in range(1, n + 1):
        c = -trace(mk) / k
        coeffs[n - k] = c
        if k < n:
            shifted = tuple(
                tuple(mk[i][j] + (c if i == j else 0) for j in range(n)) for i in range(n)
            )
            mk = mat_mul(m, shifted)
    return coeffs


def inertia(m: Mat) -> tuple[int, int, int]:
    """Inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Uses sign changes in the characteristic polynomial; exact because all
    eigenvalues of a symmetric matrix are real, where Descartes' count is
    sharp.
    """
    if not is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    n = len(m)
    coeffs = char_poly(m)
    n_zero = 0
    while coeffs[n_zero] == 0:
        n_zero += 1
    stripped = coeffs[n_zero:]
    signs = [1 if c > 0 else -1 for c in stripped if c != 0]
    n_plus = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return n_plus, n - n_zero - n_plus, n_zero
