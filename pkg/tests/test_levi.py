import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toric_contact.errors import EmptySlice, NotSurjective, UnknownFace, ZeroLambda
from toric_contact.exactnum.linalg import mat_vec, rank
from toric_contact.levi import (
    LabelCone,
    LeviPair,
    TorusData,
    check_transversality,
    levi_pair_from_map,
    quotient_map,
    slice_polytope,
)
from toric_contact.models import random_delzant_labels

F = Fraction
SQUARE_L = ((0, 0, 1, 1), (1, 0, -1, 0), (0, 1, 0, -1))


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def sphere_pair(m):
    return levi_pair_from_map(identity(m + 1), (1,) * (m + 1))


def square_pair():
    return levi_pair_from_map(SQUARE_L, (1, 0, 0))


def commutes(pair):
    return all(mat_vec(pair.L_map, v) == tuple(c * e for e in pair.epsilon) for v, c in zip(pair.g, pair.lam))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sphere_pair(m):
    pair = sphere_pair(m)
    assert pair.g == ((1,) * (m + 1),)
    assert pair.lam == (1,)
    assert pair.ell == 1 and pair.m == m
    assert commutes(pair)


def test_square_pair():
    pair = square_pair()
    assert pair.g == ((1, 0, 1, 0), (0, 1, 0, 1))
    assert pair.lam == (1, 1)
    assert commutes(pair)
    assert rank(pair.u) == pair.n - pair.ell


def test_pair_errors():
    with pytest.raises(NotSurjective):
        levi_pair_from_map(((1, 0, 0), (0, 0, 0)), (1, 0))
    # a surjective L never kills g, so lambda = 0 only arises when prescribed
    with pytest.raises(ZeroLambda):
        LeviPair.from_subspace([(1, 0)], (0,))
    with pytest.raises(ValueError):
        levi_pair_from_map(identity(2), (0, 0))


def test_quotient_map_kills_epsilon():
    eps = (F(2), F(-1), F(3))
    d = quotient_map(eps)
    assert mat_vec(d, eps) == (0, 0)
    assert rank(d) == 2


def test_from_subspace_recovers_data():
    pair = LeviPair.from_subspace([(1, 0, 1, 0), (0, 1, 0, 1)], (1, 2))
    assert pair.g == ((1, 0, 1, 0), (0, 1, 0, 1))
    assert pair.lam == (1, 2)
    assert commutes(pair)


def test_slice_sphere_is_standard_simplex():
    for m in (1, 2, 3):
        S = slice_polytope(TorusData.standard(m + 1), sphere_pair(m))
        assert [v.point for v in S.vertices] == sorted(identity(m + 1))


def test_slice_square():
    S = slice_polytope(TorusData.standard(4), square_pair())
    pts = {v.point for v in S.vertices}
    assert pts == {(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)}
    for v in S.vertices:
        assert v.active == {s for s in range(4) if v.point[s] == 0}


def test_slice_empty():
    # x1 = 1 contradicts -x1 >= 0
    pair = LeviPair.from_subspace([(1, 0)], (1,))
    torus = TorusData(2, ((-1, 0), (0, 1), (0, -1)))
    with pytest.raises(EmptySlice):
        slice_polytope(torus, pair)


def test_transversality_square():
    torus, pair = TorusData.standard(4), square_pair()
    lattice = slice_polytope(torus, pair).lattice
    for S in lattice.elements:
        assert check_transversality(torus, pair, S, lattice)
    # x1 = x3 = 0 contradicts x1 + x3 = 1, so {0, 2} is not a face
    with pytest.raises(UnknownFace):
        check_transversality(torus, pair, {0, 2}, lattice)


def test_transversality_fails_for_dependent_labels():
    # on a genuine face span{e_s} meets g trivially, so failure comes from dependence:
    # e_2 = e_0 + e_1 vanishes at the simplex vertex (0, 0, 1)
    torus = TorusData(3, ((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)))
    pair = sphere_pair(2)
    sliced = slice_polytope(torus, pair)
    assert frozenset({0, 1, 2}) in sliced.lattice
    assert not check_transversality(torus, pair, {0, 1, 2}, sliced.lattice)
    assert check_transversality(torus, pair, {0, 3}, sliced.lattice)


def test_sphere_vertices_transversal():
    for m in (1, 2, 3):
        torus, pair = TorusData.standard(m + 1), sphere_pair(m)
        sliced = slice_polytope(torus, pair)
        for v in sliced.vertices:
            assert len(v.active) == m
            assert check_transversality(torus, pair, v.active, sliced.lattice)


def test_random_delzant_vertices_transversal():
    rng = random.Random(3)
    for _ in range(15):
        torus, pair, _ = random_delzant_labels(rng)
        assert commutes(pair)
        assert len(pair.g) + rank(pair.u) == pair.n
        sliced = slice_polytope(torus, pair)
        for v in sliced.vertices:
            assert check_transversality(torus, pair, v.active, sliced.lattice)


@settings(max_examples=60, deadline=None)
@given(
    st.tuples(*[st.integers(0, 4)] * 4).filter(lambda x: (x[0] + x[2]) * (x[1] + x[3]) > 0),
    st.fractions(min_value=F(1, 10), max_value=10),
)
def test_label_cone_scaling(x, c):
    torus = TorusData.standard(4)
    sliced = slice_polytope(torus, square_pair())
    cone = LabelCone(torus, frozenset(sliced.lattice.faces))
    x = tuple(F(a) for a in x)
    cx = tuple(c * a for a in x)
    assert (x in cone) == (cx in cone)
    assert cone.active_set(x) == cone.active_set(cx)
    assert (x in cone) == (cone.active_set(x) in sliced.lattice)
