"""Pfaffian pencils: degeneracy polynomials, l-contact test and fatness.

A pencil is ``t_1 w_1 + ... + t_ell w_ell`` for skew ``2m x 2m`` matrices
``w_i``.  The degree-``m`` defining polynomial of the degeneracy locus is
its Pfaffian (the determinant is its square), with ``Pf(J) = +1`` for
``J`` block diagonal in ``[[0, 1], [-1, 0]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotSkew, OddSize, ZeroPolynomial
from .exactnum.linalg import primitive
from .exactnum.poly import MultiPoly
from .exactnum.sturm import evaluate, isolate_roots, sturm_count, upoly


def _is_zero(a):
    return a.is_zero() if isinstance(a, MultiPoly) else a == 0


def check_skew(M):
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotSkew("matrix is not square")
    if n % 2:
        raise OddSize(f"size {n} is odd")
    for i in range(n):
        if not _is_zero(M[i][i]):
            raise NotSkew(f"nonzero diagonal entry at {i}", witness=(i, i))
        for j in range(i + 1, n):
            if not _is_zero(M[i][j] + M[j][i]):
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite", witness=(i, j))


def pfaffian_poly(M):
    """Pfaffian by first-row expansion, memoised on the remaining index set.

    Works for entries that are Fractions or :class:`MultiPoly`; the
    expansion is ``Pf = sum_j (-1)^(j-1) a_{0 j} Pf(M without rows/cols 0, j)``.
    """
    check_skew(M)
    n = len(M)
    one = _one_like(M)
    memo = {}

    def pf(idx):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        i, rest = idx[0], idx[1:]
        total = one * 0
        for k, j in enumerate(rest):
            a = M[i][j]
            if _is_zero(a):
                continue
            minor = pf(rest[:k] + rest[k + 1 :])
            term = a * minor
            total = total + term if k % 2 == 0 else total - term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def _one_like(M):
    for row in M:
        for a in row:
            if isinstance(a, MultiPoly):
                return MultiPoly.constant(1, a.nvars)
    return Fraction(1)


def J(m):
    """The standard ``2m x 2m`` symplectic matrix, ``Pf(J) = 1``."""
    n = 2 * m
    return tuple(
        tuple(Fraction(1 if (j == i + 1 and i % 2 == 0) else -1 if (i == j + 1 and j % 2 == 0) else 0) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class SkewPencil:
    ell: int
    m: int
    matrices: tuple

    def __post_init__(self):
        mats = tuple(tuple(tuple(Fraction(a) for a in row) for row in w) for w in self.matrices)
        object.__setattr__(self, "matrices", mats)
        if self.ell < 1 or len(mats) != self.ell:
            raise ValueError(f"expected {self.ell} matrices, got {len(mats)}")
        for w in mats:
            if len(w) != 2 * self.m:
                raise ValueError(f"matrices must be {2 * self.m} x {2 * self.m}")
            check_skew(w)

    def matrix(self):
        """``sum t_i w_i`` as a matrix of linear forms."""
        n = 2 * self.m
        return tuple(
            tuple(MultiPoly.linear_form([w[a][b] for w in self.matrices]) for b in range(n))
            for a in range(n)
        )

    def at(self, t):
        n = 2 * self.m
        return tuple(
            tuple(sum((Fraction(ti) * w[a][b] for ti, w in zip(t, self.matrices)), Fraction(0)) for b in range(n))
            for a in range(n)
        )


def degeneracy_polynomial(pencil):
    if pencil.m == 0:
        return MultiPoly.constant(1, pencil.ell)
    return pfaffian_poly(pencil.matrix())


def product_sphere_pencil(ms):
    """``w_i`` is ``J_{2 m_i}`` in the ``i``-th diagonal slot; ``Pf = prod t_i^{m_i}``."""
    ms = [int(a) for a in ms]
    if any(a < 0 for a in ms):
        raise ValueError("multiplicities must be nonnegative")
    m = sum(ms)
    n = 2 * m
    mats = []
    start = 0
    for a in ms:
        w = [[Fraction(0)] * n for _ in range(n)]
        Ja = J(a)
        for i in range(2 * a):
            for j in range(2 * a):
                w[start + i][start + j] = Ja[i][j]
        mats.append(tuple(map(tuple, w)))
        start += 2 * a
    return SkewPencil(len(ms), m, tuple(mats))


def block_sum(*pencils):
    """Direct sum of pencils with the same ``ell``."""
    ell = pencils[0].ell
    if any(p.ell != ell for p in pencils):
        raise ValueError("pencils must share ell")
    m = sum(p.m for p in pencils)
    n = 2 * m
    mats = []
    for i in range(ell):
        w = [[Fraction(0)] * n for _ in range(n)]
        start = 0
        for p in pencils:
            k = 2 * p.m
            for a in range(k):
                for b in range(k):
                    w[start + a][start + b] = p.matrices[i][a][b]
            start += k
        mats.append(tuple(map(tuple, w)))
    return SkewPencil(ell, m, tuple(mats))


def quaternionic_pencil(x, y):
    """4x4 pencil with ``Pf = -(x^2 + y^2)`` for linear forms ``x, y``.

    ``x`` and ``y`` are coefficient vectors over ``t_1 .. t_ell``.
    """
    ell = len(x)
    mats = []
    for i in range(ell):
        a, b = Fraction(x[i]), Fraction(y[i])
        mats.append(
            (
                (0, a, b, 0),
                (-a, 0, 0, b),
                (-b, 0, 0, -a),
                (0, -b, a, 0),
            )
        )
    return SkewPencil(ell, 2, tuple(mats))


def linear_pencil(x):
    """2x2 pencil whose Pfaffian is the linear form ``x``."""
    return SkewPencil(len(x), 1, tuple(((0, a), (-a, 0)) for a in x))


# --- classification --------------------------------------------------------


def _normalize_linear(h):
    coeffs = [h.coefficient(tuple(int(i == j) for j in range(h.nvars))) for i in range(h.nvars)]
    v = primitive(coeffs)
    lead = next(a for a in v if a)
    if lead < 0:
        v = tuple(-a for a in v)
    return MultiPoly.linear_form(v)


def classify_lcontact(poly):
    """``(h, m)`` when ``poly = c * h^m`` for a linear form ``h``, else None.

    If ``poly = c h^m`` every ``(m-1)``-th order partial derivative is a
    multiple of ``h``; the first nonzero one is taken as the candidate and
    the power identity is then checked exactly.  ``h`` is returned as a
    primitive integer form with positive leading coefficient.
    """
    if poly.is_zero():
        raise ZeroPolynomial("classify_lcontact of the zero polynomial")
    m = poly.degree()
    if m < 1 or not poly.is_homogeneous():
        return None
    ell = poly.nvars
    h = None
    for alpha in _exponents(ell, m - 1):
        d = poly
        for i, k in enumerate(alpha):
            for _ in range(k):
                d = d.derivative(i)
        if not d.is_zero():
            h = d
            break
    h = _normalize_linear(h)
    hm = h**m
    # c from any monomial of h^m
    exps, c0 = hm.items()[0]
    c = poly.coefficient(exps) / c0
    if c == 0 or poly != hm * c:
        return None
    return h, m


def _exponents(ell, total):
    """Exponent vectors of the given total degree in decreasing lex order."""
    if ell == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponents(ell - 1, total - first):
            yield (first,) + rest


# --- fatness ---------------------------------------------------------------


@dataclass(frozen=True)
class FatVerdict:
    verdict: str  # "yes" | "no" | "unknown"
    witness: object = None
    reason: str = ""
    samples: int = 0


def _rational_roots(p, limit=10**12):
    """Rational roots of a univariate polynomial by the rational root test.

    Returns None when the coefficients are too large to enumerate divisors.
    """
    p = upoly(p)
    if p and p[0] == 0:
        rest = _rational_roots(p[1:], limit) or []
        return [Fraction(0)] + [r for r in rest if r != 0]
    if len(p) <= 1:
        return []
    ints = primitive(p)
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > limit or an > limit:
        return None
    roots = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            for r in (Fraction(num, den), Fraction(-num, den)):
                if evaluate(p, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _divisors(n):
    out = set()
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.update((d, n // d))
    return sorted(out)


def is_fat(pencil, samples=200):
    """Does ``Pf(sum t_i w_i)`` vanish only at ``t = 0`` over the reals?

    ``ell = 1``: exact (``Pf = c t^m``).  ``ell = 2``: exact, by a Sturm
    count on ``Pf(1, s)`` and a direct check of the line ``t_1 = 0``.
    ``ell >= 3``: a rational grid is sampled; an exact zero or two values
    of opposite sign give "no" (the unit sphere is connected), otherwise
    the answer is "unknown".
    """
    P = degeneracy_polynomial(pencil)
    ell = pencil.ell
    if P.is_zero():
        return FatVerdict("no", (1,) + (0,) * (ell - 1), "Pfaffian vanishes identically")
    if ell == 1:
        return FatVerdict("yes", None, "Pfaffian is a nonzero multiple of t^m")
    if ell == 2:
        f = P.restrict(1, (1, 0))
        if len(f) > 1 and sturm_count(f) > 0:
            roots = _rational_roots(f)
            if roots:
                return FatVerdict("no", (Fraction(1), roots[0]), "real root of Pf(1, s)")
            lo, hi = isolate_roots(f)[0]
            return FatVerdict("no", {"t1": 1, "t2_interval": (lo, hi)}, "real root of Pf(1, s) isolated by Sturm")
        if P.evaluate((0, 1)) == 0:
            return FatVerdict("no", (Fraction(0), Fraction(1)), "Pf vanishes on t1 = 0")
        return FatVerdict("yes", None, "no real root of Pf(1, s) and Pf(0, 1) != 0")
    seen = {}
    count = 0
    radius = 1
    while count < samples:
        for t in product(range(-radius, radius + 1), repeat=ell):
            if max(map(abs, t)) != radius:
                continue
            count += 1
            val = P.evaluate(t)
            if val == 0:
                return FatVerdict("no", tuple(Fraction(a) for a in t), "exact zero at a sample", count)
            sign = val > 0
            if sign not in seen:
                seen[sign] = t
            if len(seen) == 2:
                return FatVerdict(
                    "no",
                    {"positive": seen[True], "negative": seen[False]},
                    "opposite signs on the connected unit sphere",
                    count,
                )
            if count >= samples:
                break
        radius += 1
    return FatVerdict("unknown", None, "no zero or sign change at the samples", count)
