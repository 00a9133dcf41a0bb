"""Independent reference implementations used only by the tests.

Nothing here calls into the package's linear algebra: determinants are
Leibniz sums, vertices come from Cramer's rule, Pfaffians from the
perfect-matching expansion.
"""

from fractions import Fraction
from itertools import combinations, permutations


def perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for p in permutations(range(n)):
        term = Fraction(perm_sign(p))
        for i in range(n):
            term *= M[i][p[i]]
            if not term:
                break
        total += term
    return total


def cramer(A, b):
    d = leibniz_det(A)
    if d == 0:
        return None
    out = []
    for j in range(len(A)):
        Aj = [list(row) for row in A]
        for i in range(len(A)):
            Aj[i][j] = b[i]
        out.append(leibniz_det(Aj) / d)
    return tuple(out)


def vertex_oracle(epsilon, labels):
    """Vertices of ``{xi : <epsilon, xi> = 1, <L_s, xi> >= 0}`` by brute force."""
    m = len(epsilon) - 1
    rhs = [Fraction(1)] + [Fraction(0)] * m
    found = {}
    for S in combinations(range(len(labels)), m):
        A = [list(epsilon)] + [list(labels[s]) for s in S]
        xi = cramer(A, rhs)
        if xi is None:
            continue
        vals = [sum(a * x for a, x in zip(L, xi)) for L in labels]
        if all(v >= 0 for v in vals):
            found[xi] = frozenset(s for s, v in enumerate(vals) if v == 0)
    return found


def matchings(idx):
    if not idx:
        yield []
        return
    i = idx[0]
    for k in range(1, len(idx)):
        j = idx[k]
        rest = idx[1:k] + idx[k + 1 :]
        for m in matchings(rest):
            yield [(i, j)] + m


def pfaffian_matchings(M):
    """``Pf(M) = sum over perfect matchings of sign * prod a_ij``."""
    n = len(M)
    total = Fraction(0)
    for match in matchings(tuple(range(n))):
        seq = [a for pair in match for a in pair]
        term = Fraction(perm_sign(seq))
        for i, j in match:
            term *= M[i][j]
        total += term
    return total


def poly_from_roots(roots, quadratics=(), lead=1):
    """Coefficients (low first) of ``lead * prod (t - r) * prod ((t - a)^2 + b)``."""
    p = [Fraction(lead)]
    factors = [[-Fraction(r), Fraction(1)] for r in roots]
    factors += [[Fraction(a) ** 2 + Fraction(b), -2 * Fraction(a), Fraction(1)] for a, b in quadratics]
    for f in factors:
        out = [Fraction(0)] * (len(p) + len(f) - 1)
        for i, x in enumerate(p):
            for j, y in enumerate(f):
                out[i + j] += x * y
        p = out
    return tuple(p)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def gauss_det(M):
    """Determinant by fraction Gaussian elimination with row swaps."""
    A = [[Fraction(a) for a in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det
