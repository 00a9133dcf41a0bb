import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toric_contact.errors import NotSkew, OddSize, ZeroPolynomial
from toric_contact.exactnum import MultiPoly, sturm_count
from toric_contact.models import congruent, random_skew, random_unimodular
from toric_contact.pencil import (
    J,
    SkewPencil,
    block_sum,
    classify_lcontact,
    degeneracy_polynomial,
    is_fat,
    linear_pencil,
    pfaffian_poly,
    product_sphere_pencil,
    quaternionic_pencil,
)

from oracles import gauss_det, pfaffian_matchings

F = Fraction
t1, t2, t3 = (MultiPoly.variable(i, 3) for i in range(3))
s1, s2 = (MultiPoly.variable(i, 2) for i in range(2))


def test_pfaffian_examples():
    assert pfaffian_poly(J(2)) == 1
    assert pfaffian_poly(J(3)) == 1
    p = MultiPoly.variable(0, 1) * 3
    assert pfaffian_poly(((0, p), (-p, 0))) == p
    zero = MultiPoly(2)
    M = (
        (zero, s1, s2, zero),
        (-s1, zero, zero, s2),
        (-s2, zero, zero, -s1),
        (zero, -s2, s1, zero),
    )
    assert pfaffian_poly(M) == -(s1**2 + s2**2)


def test_pfaffian_errors():
    with pytest.raises(OddSize):
        pfaffian_poly(((0, 1, 0), (-1, 0, 0), (0, 0, 0)))
    with pytest.raises(NotSkew):
        pfaffian_poly(((0, 1), (1, 0)))
    with pytest.raises(NotSkew):
        pfaffian_poly(((1, 0), (0, 0)))


def test_degeneracy_examples():
    assert degeneracy_polynomial(product_sphere_pencil((1, 1))) == s1 * s2
    assert degeneracy_polynomial(product_sphere_pencil((0, 2))) == s2**2
    for m in (1, 2, 3):
        t = MultiPoly.variable(0, 1)
        assert degeneracy_polynomial(product_sphere_pencil((m,))) == t**m
    assert degeneracy_polynomial(quaternionic_pencil((1, 0), (0, 1))) == -(s1**2 + s2**2)


def test_classify_examples():
    assert classify_lcontact(s2**2) == (s2, 2)
    assert classify_lcontact(s1 * s2) is None
    assert classify_lcontact((s1 + s2) ** 3) == (s1 + s2, 3)
    assert classify_lcontact((s1 - 2 * s2) ** 2 * F(-3, 5)) == (s1 - 2 * s2, 2)
    assert classify_lcontact(s1**2 + s2**2) is None
    with pytest.raises(ZeroPolynomial):
        classify_lcontact(MultiPoly(2))


def test_fat_examples():
    v = is_fat(quaternionic_pencil((1, 0), (0, 1)))
    assert v.verdict == "yes"
    v = is_fat(product_sphere_pencil((1, 1)))
    assert v.verdict == "no" and v.witness == (1, 0)
    assert is_fat(product_sphere_pencil((3,))).verdict == "yes"
    assert is_fat(product_sphere_pencil((0, 2))).verdict == "no"


def test_fat_zero_pfaffian():
    zero = ((0, 0), (0, 0))
    P = block_sum(linear_pencil((1, 0)), SkewPencil(2, 1, (zero, zero)))
    assert degeneracy_polynomial(P).is_zero()
    assert is_fat(P).verdict == "no"


def test_fat_irrational_root_is_isolated():
    # Pf = t1^2 - 2 t2^2 has only irrational zeros on t1 = 1
    Q = SkewPencil(2, 2, (
        ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)),
        ((0, 0, 1, 0), (0, 0, 0, 2), (-1, 0, 0, 0), (0, -2, 0, 0)),
    ))
    assert degeneracy_polynomial(Q) == s1**2 - 2 * s2**2
    v = is_fat(Q)
    assert v.verdict == "no" and v.witness["t1"] == 1
    lo, hi = v.witness["t2_interval"]
    assert sturm_count((1, 0, -2), lo, hi) == 1


def test_fat_ell3_sampling():
    v = is_fat(product_sphere_pencil((1, 1, 1)))
    assert v.verdict == "no" and v.witness == (-1, -1, 0)
    mats = [[[0] * 4 for _ in range(4)] for _ in range(3)]
    # a12 = t1, a34 = t1, a13 = t2, a24 = -t2, a14 = t3, a23 = t3 gives Pf = t1^2 + t2^2 + t3^2
    entries = {0: [(0, 1), (2, 3)], 1: [(0, 2)], 2: [(0, 3), (1, 2)]}
    for k, pairs in entries.items():
        for i, j in pairs:
            mats[k][i][j], mats[k][j][i] = 1, -1
    mats[1][1][3], mats[1][3][1] = -1, 1
    definite = SkewPencil(3, 2, tuple(tuple(map(tuple, w)) for w in mats))
    assert degeneracy_polynomial(definite) == t1**2 + t2**2 + t3**2
    v = is_fat(definite, samples=50)
    assert v.verdict == "unknown" and v.samples == 50


# --- randomized properties -------------------------------------------------


def test_pfaffian_against_matchings():
    rng = random.Random(4)
    for n in (2, 4, 6, 8):
        for _ in range(5):
            pen = random_skew(rng, n, 1)
            M = pen.at((1,))
            assert pfaffian_poly(M) == pfaffian_matchings(M)


def test_pfaffian_squares_to_determinant():
    rng = random.Random(9)
    for _ in range(25):
        ell = rng.randint(1, 3)
        n = 2 * rng.randint(1, 4)
        pen = random_skew(rng, n, ell)
        D = degeneracy_polynomial(pen)
        assert D.is_zero() or (D.is_homogeneous() and D.degree() == pen.m)
        for _ in range(4):
            t = tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ell))
            assert D.evaluate(t) ** 2 == gauss_det(pen.at(t))


def test_block_multiplicativity():
    rng = random.Random(10)
    for _ in range(20):
        ell = rng.randint(1, 2)
        A = random_skew(rng, 2 * rng.randint(1, 2), ell)
        B = random_skew(rng, 2 * rng.randint(1, 2), ell)
        assert degeneracy_polynomial(block_sum(A, B)) == degeneracy_polynomial(A) * degeneracy_polynomial(B)


def test_congruence_scales_by_determinant():
    rng = random.Random(12)
    pen = random_skew(rng, 4, 2)
    A = ((1, 2, 0, 0), (0, 1, 0, 0), (0, 0, 3, 0), (0, 0, 1, 1))
    assert degeneracy_polynomial(congruent(pen, A)) == degeneracy_polynomial(pen) * 3
    U = random_unimodular(4, rng)
    assert degeneracy_polynomial(congruent(pen, U)) == degeneracy_polynomial(pen) * gauss_det(U)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=3).filter(lambda ms: 0 < sum(ms) <= 4))
def test_lcontact_on_product_pencils(ms):
    pen = product_sphere_pencil(ms)
    D = degeneracy_polynomial(pen)
    expected = MultiPoly.constant(1, len(ms))
    for i, k in enumerate(ms):
        expected = expected * MultiPoly.variable(i, len(ms)) ** k
    assert D == expected
    lc = classify_lcontact(D)
    assert (lc is not None) == (sum(1 for k in ms if k) == 1)
    if lc is not None:
        assert lc[1] == sum(ms)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_fat_excludes_lcontact(seed):
    rng = random.Random(seed)
    ell = rng.randint(1, 2)
    blocks = []
    for _ in range(rng.randint(1, 2)):
        x = tuple(rng.randint(-2, 2) for _ in range(ell))
        y = tuple(rng.randint(-2, 2) for _ in range(ell))
        blocks.append(quaternionic_pencil(x, y) if rng.random() < 0.6 else linear_pencil(x))
    pen = block_sum(*blocks)
    D = degeneracy_polynomial(pen)
    if D.is_zero():
        return
    if is_fat(pen).verdict == "yes" and ell > 1:
        assert classify_lcontact(D) is None
