"""Dense exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of
row tuples.  Every function is pure and returns fresh immutable values.
"""

from fractions import Fraction
from math import gcd, lcm

Vector = tuple
Matrix = tuple


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; use an exact rational")
    if isinstance(x, bool):
        raise TypeError("refusing bool as a rational")
    return Fraction(x)


def vec(values) -> Vector:
    return tuple(to_fraction(v) for v in values)


def mat(rows) -> Matrix:
    rows = tuple(vec(r) for r in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows


def zeros(rows, cols) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity(n) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def ncols(M, default=0):
    return len(M[0]) if M else default


def transpose(M, cols=None) -> Matrix:
    if not M:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*M))


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(M, v) -> Vector:
    return tuple(dot(row, v) for row in M)


def vec_mat(v, M) -> Vector:
    """Row vector times matrix."""
    return tuple(dot(v, col) for col in transpose(M, len(v)))


def matmul(A, B) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def rref(M):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` keeps only the nonzero rows and
    ``pivots[i]`` is the pivot column of row ``i``.
    """
    A = [list(map(Fraction, row)) for row in M]
    rows = len(A)
    cols = ncols(M)
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, cols=None):
    """Basis of ``{x : M x = 0}``, one vector per free column.

    The basis vector for free column ``f`` has a 1 in position ``f`` and
    zeros in the other free positions, so the output is canonical.
    """
    n = ncols(M, cols or 0)
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A, b):
    """Unique solution of ``A x = b`` or ``None``.

    ``None`` covers both the inconsistent and the underdetermined case.
    """
    n = ncols(A)
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if n in pivots or len(pivots) != n:
        return None
    return tuple(row[n] for row in R)


def particular_solution(A, b, cols=None):
    """Some solution of ``A x = b`` (free variables zero) or ``None``."""
    n = ncols(A, cols or 0)
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return tuple(x)


def det(M) -> Fraction:
    A = [list(map(Fraction, row)) for row in M]
    n = len(A)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        piv = A[c][c]
        result *= piv
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / piv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return sign * result


def inverse(M) -> Matrix:
    n = len(M)
    aug = tuple(tuple(row) + e for row, e in zip(M, identity(n)))
    R, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n:] for row in R)


def in_span(rows, v) -> bool:
    return rank(tuple(rows) + (tuple(v),)) == rank(tuple(rows))


def common_denominator(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def integer_row(v):
    """Scale a rational vector by its positive common denominator."""
    d = common_denominator(v)
    return tuple(int(Fraction(a) * d) for a in v)


def primitive(v):
    """Positive multiple of ``v`` that is a primitive integer vector."""
    w = integer_row(v)
    g = gcd(*w)
    if g == 0:
        return w
    return tuple(a // g for a in w)
