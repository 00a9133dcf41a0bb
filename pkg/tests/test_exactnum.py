import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toric_contact.errors import ZeroPolynomial
from toric_contact.exactnum import (
    MultiPoly,
    hermite_normal_form,
    integer_kernel,
    invariant_factors,
    isolate_roots,
    saturate,
    smith_normal_form,
    sturm_count,
    to_fraction,
)
from toric_contact.exactnum.linalg import rank

from oracles import leibniz_det, matmul, poly_from_roots

small_int = st.integers(-6, 6)


def int_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def check_snf(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, M), V) == [list(r) for r in D]
    assert abs(leibniz_det(U)) == 1 and abs(leibniz_det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0
    return diag


def test_to_fraction_refuses_floats():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("3/4") == Fraction(3, 4)


def test_snf_examples():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    U, D, V = smith_normal_form([[2, 4]])
    assert D == ((2, 0),)
    assert check_snf([[1, 1], [1, -1]]) == [1, 2]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_snf_properties(M):
    diag = check_snf(M)
    assert sum(1 for d in diag if d) == rank(M)


def test_integer_kernel_examples():
    basis = integer_kernel([[1, 1, 1]])
    assert basis == ((1, 0, -1), (0, 1, -1))
    # same lattice as {(1,-1,0), (0,1,-1)}
    assert hermite_normal_form([(1, -1, 0), (0, 1, -1)]) == basis
    assert integer_kernel([[2, 1], [1, 1]]) == ()
    assert integer_kernel([[0, 0, 0], [0, 0, 0]]) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@settings(max_examples=60, deadline=None)
@given(int_matrices(3, 5))
def test_integer_kernel_saturated(M):
    basis = integer_kernel(M)
    n = len(M[0])
    assert len(basis) == n - rank(M)
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    if basis:
        assert invariant_factors(basis) == [1] * len(basis)
        assert hermite_normal_form(basis) == basis


def test_saturate():
    assert saturate([(2, 0), (0, 2)]) == ((1, 0), (0, 1))
    assert saturate([(2, 4, 6)]) == ((1, 2, 3),)


@settings(max_examples=40, deadline=None)
@given(int_matrices(3, 3))
def test_hnf_invariant_under_row_operations(M):
    mixed = [list(r) for r in M]
    if len(mixed) > 1:
        mixed[0] = [a + 3 * b for a, b in zip(mixed[0], mixed[1])]
        mixed.reverse()
    assert hermite_normal_form(M) == hermite_normal_form(mixed)


# --- Sturm -----------------------------------------------------------------


def test_sturm_examples():
    assert sturm_count((-1, 0, 1)) == 2
    assert sturm_count((1, 0, 1)) == 0
    # t^3 - 3t + 1 has roots near -1.88, 0.35, 1.53
    p = (1, -3, 0, 1)
    assert sturm_count(p, 0, 2) == 2
    # oracle: sign changes on a fine grid inside (0, 2)
    grid = [Fraction(k, 100) for k in range(0, 201)]
    vals = [sum(c * x**i for i, c in enumerate(p)) for x in grid]
    assert sum(1 for a, b in zip(vals, vals[1:]) if a * b < 0) == 2


def test_sturm_endpoint_convention():
    p = poly_from_roots([0, 1])
    assert sturm_count(p, 0, 1) == 1  # (0, 1] holds 1 only
    assert sturm_count(p, -1, 0) == 1
    assert sturm_count(p, -math.inf, math.inf) == 2


def test_sturm_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        sturm_count(())
    with pytest.raises(ValueError):
        sturm_count((1, 1), 2, 1)


def test_sturm_random_against_construction():
    rng = random.Random(7)
    for _ in range(1000):
        deg = rng.choice([3, 4])
        nreal = rng.choice([0, 1, 2, deg]) if deg == 4 else rng.choice([1, 3])
        roots = [Fraction(rng.randint(-20, 20), rng.randint(1, 5)) for _ in range(nreal)]
        quads = [(Fraction(rng.randint(-5, 5), 2), Fraction(rng.randint(1, 9), 4)) for _ in range((deg - nreal) // 2)]
        p = poly_from_roots(roots, quads, lead=rng.choice([-3, -1, 1, 2]))
        assert sturm_count(p) == len(set(roots))
        a = Fraction(rng.randint(-8, 8), 2)
        b = a + Fraction(rng.randint(1, 16), 2)
        assert sturm_count(p, a, b) == len({r for r in roots if a < r <= b})


def test_isolate_roots():
    roots = [Fraction(-3, 2), Fraction(1, 3), Fraction(2)]
    p = poly_from_roots(roots, [(0, 1)])
    intervals = isolate_roots(p)
    assert len(intervals) == 3
    for (lo, hi), r in zip(intervals, roots):
        assert lo < r <= hi


# --- MultiPoly ---------------------------------------------------------------


def polys(nvars=2):
    term = st.tuples(st.tuples(*[st.integers(0, 3)] * nvars), st.integers(-5, 5))
    return st.lists(term, max_size=5).map(lambda ts: MultiPoly(nvars, dict(ts)))


@settings(max_examples=80, deadline=None)
@given(polys(), polys(), polys())
def test_multipoly_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == 0


@settings(max_examples=50, deadline=None)
@given(polys(), polys(), st.tuples(small_int, small_int))
def test_multipoly_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


def test_multipoly_printing():
    t1, t2 = MultiPoly.variable(0, 2), MultiPoly.variable(1, 2)
    assert str(t1 * t2) == "t1*t2"
    assert str(t2**2) == "t2^2"
    assert str(-(t1**2 + t2**2)) == "-t1^2 - t2^2"
    assert str((t1 + t2) * Fraction(1, 2)) == "1/2*t1 + 1/2*t2"
    assert str(MultiPoly(2)) == "0"


def test_multipoly_drops_zero_terms():
    p = MultiPoly(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): Fraction(1)}
    assert (p - p).is_zero()
