"""Univariate rational polynomials and Sturm real-root counting.

A polynomial is a tuple of Fraction coefficients, lowest degree first,
with no trailing zeros; the zero polynomial is ``()``.  Interval
endpoints are Fractions or ``math.inf`` / ``-math.inf``.
"""

import math
from fractions import Fraction

from ..errors import ZeroPolynomial


def upoly(coeffs):
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p):
    return len(p) - 1


def evaluate(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def derivative(p):
    return upoly(i * a for i, a in enumerate(p) if i)


def divmod_poly(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, bi in enumerate(b):
            a[shift + i] -= f * bi
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return upoly(q), upoly(a)


def monic(p):
    return tuple(a / p[-1] for a in p) if p else p


def gcd_poly(a, b):
    a, b = upoly(a), upoly(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def squarefree_part(p):
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = upoly(p)
    if degree(p) < 1:
        return p
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0]


def sturm_chain(p):
    chain = [upoly(p), derivative(upoly(p))]
    while chain[-1]:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        chain.append(tuple(-a for a in rem))
    return chain[:-1]


def sign_at(p, x):
    """Sign of ``p`` at a rational point or at +/- infinity."""
    if not p:
        return 0
    if x == math.inf:
        return 1 if p[-1] > 0 else -1
    if x == -math.inf:
        s = 1 if p[-1] > 0 else -1
        return s if degree(p) % 2 == 0 else -s
    v = evaluate(p, x)
    return (v > 0) - (v < 0)


def sign_variations(chain, x):
    signs = [s for s in (sign_at(q, x) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, a=-math.inf, b=math.inf):
    """Number of distinct real roots of ``p`` in the half-open ``(a, b]``.

    The chain is built on the squarefree part, on which zero entries are
    dropped at endpoints; a root sitting exactly at ``b`` is counted and
    one at ``a`` is not.
    """
    p = upoly(p)
    if not p:
        raise ZeroPolynomial("sturm_count of the zero polynomial")
    if not a < b:
        raise ValueError("need a < b")
    chain = sturm_chain(squarefree_part(p))
    return sign_variations(chain, a) - sign_variations(chain, b)


def is_root(p, x):
    return x not in (math.inf, -math.inf) and evaluate(upoly(p), x) == 0


def root_bound(p):
    """Cauchy bound: every real root has absolute value below it."""
    p = upoly(p)
    return 1 + max((abs(a / p[-1]) for a in p[:-1]), default=Fraction(0))


def isolate_roots(p):
    """Disjoint intervals ``(lo, hi]`` each holding exactly one real root.

    Intervals are returned in increasing order; an interval with
    ``lo == hi`` never occurs, but ``hi`` may itself be the root.
    """
    p = squarefree_part(p)
    if not p:
        raise ZeroPolynomial("isolate_roots of the zero polynomial")
    chain = sturm_chain(p)

    def count(lo, hi):
        return sign_variations(chain, lo) - sign_variations(chain, hi)

    B = root_bound(p)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)
