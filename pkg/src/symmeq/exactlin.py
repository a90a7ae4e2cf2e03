"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction; vectors are lists of Fraction.
Everything here works by fraction-free-ish Gaussian elimination with exact
pivoting, so results are theorems about the input, not numerics.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x):
    """Coerce ints/strings/Fractions to Fraction; floats go through repr so
    0.25 means 1/4 and 0.1 means 1/10 (decimal-to-rational)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def mat_copy(a):
    return [list(row) for row in a]


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), ZERO) for row in a]


def dot(u, v):
    return sum((u[j] * v[j] for j in range(len(v))), ZERO)


def rank(a):
    """Rank of a rational matrix."""
    if not a:
        return 0
    m = mat_copy(a)
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [m[i][j] - f * m[r][j] for j in range(cols)]
        r += 1
        if r == rows:
            break
    return r


def det(a):
    """Determinant of a square rational matrix."""
    n = len(a)
    m = mat_copy(a)
    sign = ONE
    acc = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        acc *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    return sign * acc


def solve(a, b):
    """Solve a @ x = b exactly.

    Returns (particular, nullspace_basis) where nullspace_basis is a list of
    vectors spanning the solution space of a @ x = 0, or None if the system
    is inconsistent.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    pivots = []  # (row, col)
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [aug[i][j] - f * aug[r][j] for j in range(cols + 1)]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None
    pivot_cols = {c for (_, c) in pivots}
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    particular = [ZERO] * cols
    for (i, c) in pivots:
        particular[c] = aug[i][cols]
    basis = []
    for fc in free_cols:
        v = [ZERO] * cols
        v[fc] = ONE
        for (i, c) in pivots:
            v[c] = -aug[i][fc]
        basis.append(v)
    return particular, basis


def nullspace(a):
    """Basis of the nullspace of a."""
    rows = len(a)
    res = solve(a, [ZERO] * rows)
    assert res is not None
    return res[1]
