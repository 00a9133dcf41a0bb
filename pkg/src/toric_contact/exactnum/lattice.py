"""Integer lattices: Smith and Hermite normal forms, kernels, saturation."""

from fractions import Fraction

from .linalg import common_denominator, integer_row


def _int_matrix(M):
    return [[int(a) for a in row] for row in M]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _freeze(A):
    return tuple(tuple(row) for row in A)


def smith_normal_form(M, cols=None):
    """Smith normal form ``U M V = D`` of an integer matrix.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative
    entries and each diagonal entry divides the next.  At every stage the
    pivot is the entry of smallest absolute value in the remaining block,
    ties broken by lowest (row, column) index, so the transforms are
    reproducible.
    """
    A = _int_matrix(M)
    m = len(A)
    n = len(A[0]) if A else (cols or 0)
    U = _eye(m)
    V = _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = abs(A[i][j])
                    if a and (best is None or a < best[0]):
                        best = (a, i, j)
            if best is None:
                return _freeze(U), _freeze(A), _freeze(V)
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return _freeze(U), _freeze(A), _freeze(V)


def invariant_factors(M, cols=None):
    """Nonzero diagonal entries of the Smith form, in order."""
    _, D, _ = smith_normal_form(M, cols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix, zero rows dropped.

    Pivots are positive and strictly increasing in column; entries above
    a pivot lie in ``[0, pivot)``.  Two integer matrices have the same
    output exactly when their rows span the same lattice.
    """
    A = _int_matrix(rows)
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[k] = A[k], A[r]
            p = A[r][c]
            done = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    done = done and A[i][c] == 0
            if done:
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            p = A[r][c]
            for i in range(r):
                q = A[i][c] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return tuple(tuple(row) for row in A[:r] if any(row))


def integer_kernel(M, cols=None):
    """HNF basis of the saturated lattice ``{v in Z^n : M v = 0}``.

    ``M`` may have rational entries; rows are cleared of denominators
    first, which does not change the kernel.
    """
    rows = [integer_row(row) for row in M]
    n = len(rows[0]) if rows else (cols or 0)
    if not rows:
        return hermite_normal_form(_eye(n))
    _, D, V = smith_normal_form(rows)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    basis = [tuple(V[i][j] for i in range(n)) for j in range(r, n)]
    return hermite_normal_form(basis) if basis else ()


def saturate(rows, cols=None):
    """HNF basis of ``span_Q(rows) ∩ Z^n``."""
    n = len(rows[0]) if rows else (cols or 0)
    if not rows:
        return ()
    kernel = integer_kernel(rows, n)
    return integer_kernel(kernel, n)


def lattice_basis(vectors, cols=None):
    """HNF basis (rational entries) of the Z-span of rational vectors."""
    vectors = [tuple(Fraction(a) for a in v) for v in vectors]
    if not vectors:
        return ()
    denom = common_denominator(a for v in vectors for a in v)
    ints = [[int(a * denom) for a in v] for v in vectors]
    return tuple(tuple(Fraction(a, denom) for a in row) for row in hermite_normal_form(ints))


def is_unimodular_extension(rows):
    """True when the integer rows are a Z-basis of their saturation.

    Equivalent to the Smith form having full rank with all invariant
    factors equal to one.
    """
    if not rows:
        return True
    factors = invariant_factors(rows)
    return len(factors) == len(rows) and all(d == 1 for d in factors)


def torsion_factors(rows, cols=None):
    """Invariant factors > 1 of ``saturation(rows) / span_Z(rows)``."""
    if not rows:
        return []
    return [d for d in invariant_factors(rows, cols) if d > 1]
