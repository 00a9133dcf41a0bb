import random
from fractions import Fraction

import pytest

from toric_contact.construct import (
    dimension_identities,
    fibre_radii,
    from_grassmann_data,
    from_labelled_polytope,
    rescaled,
    roundtrip_check,
    structure_groups,
)
from toric_contact.errors import LabelMismatch, NotLabelled, NotReeb, NotSimple
from toric_contact.exactnum.linalg import transpose
from toric_contact.grassmann import GrassmannPresentation, block_presentation, perturbed, reslice, square_model
from toric_contact.levi import TorusData, levi_pair_from_map
from toric_contact.models import (
    bad_triangle,
    input_polytope,
    pentagon,
    random_delzant_instance,
    random_grassmann,
    simplex,
    sphere_problem,
)
from toric_contact.polytope import AffineSlice, LabelledPolytope, labelled_polytope

F = Fraction
SQUARE_EPS = (1, 0, 0)
SQUARE_LABELS = ((0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1))


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def polytope_report(eps, labels):
    P = labelled_polytope(eps, labels)
    return P, from_labelled_polytope(P, transpose(P.labels, len(eps)), eps)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sphere_pipeline(m):
    P, r = polytope_report((1,) * (m + 1), identity(m + 1))
    assert (r.ell, r.dim_N, r.dim_M) == (1, 2 * m + 1, 2 * m + 2)
    assert r.pair.g == ((1,) * (m + 1),)
    assert r.status == "delzant" and r.uniqueness
    assert roundtrip_check(r, P).ok
    assert dimension_identities(r)


def test_square_pipeline():
    P, r = polytope_report(SQUARE_EPS, SQUARE_LABELS)
    assert (r.ell, r.dim_N) == (2, 6)
    assert r.positivity == (1, 1, 1, 1)
    assert {v.point for v in r.vertices} == {(1, 1, 0, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 0, 1, 1)}
    assert not r.uniqueness
    res = roundtrip_check(r, P)
    assert res.ok and res.lattice_match


def test_pentagon_pipeline():
    H = pentagon()
    P, r = polytope_report(H.epsilon(), H.labels())
    assert (r.ell, r.dim_N, r.m) == (3, 7, 2)
    assert all(a > 0 for a in r.positivity)
    assert r.status == "delzant"
    assert roundtrip_check(r, P).ok


def test_rescaled_label_fails_roundtrip():
    P, r = polytope_report(SQUARE_EPS, SQUARE_LABELS)
    res = roundtrip_check(r, rescaled(P, 1, 2))
    assert not res.ok
    assert res.facets == (1,)


def test_polytope_pipeline_errors():
    raw = LabelledPolytope(AffineSlice((1, 0, 0)), ((0, 1, 0), (0, 0, 1), (0, 1, 1), (1, -1, -1)))
    with pytest.raises(NotSimple):
        from_labelled_polytope(raw, transpose(raw.labels, 3), (1, 0, 0))
    P = labelled_polytope(SQUARE_EPS, SQUARE_LABELS)
    wrong = transpose(P.labels[::-1], 3)
    with pytest.raises(LabelMismatch):
        from_labelled_polytope(P, wrong, SQUARE_EPS)
    with pytest.raises(LabelMismatch):
        from_labelled_polytope(P, transpose(P.labels, 3), (2, 0, 0))


def test_square_presentation_report():
    _, _, Pres = square_model()
    r = from_grassmann_data(Pres)
    assert (r.dim_M, r.dim_N, r.ell, r.m) == (8, 6, 2, 2)
    assert all(f.free for f in r.faces)
    assert r.fibres["barycenter"]["point"] == (F(1, 2),) * 4
    assert r.fibres["barycenter"]["radii_squared"] == (1, 1, 1, 1)
    assert r.uniqueness and r.status == "delzant"
    assert len(r.reeb) == 4


@pytest.mark.parametrize("m", [1, 2, 3])
def test_sphere_presentation_report(m):
    r = from_grassmann_data(sphere_problem(m).presentation())
    assert (r.dim_M, r.dim_N) == (2 * m + 2, 2 * m + 1)
    assert r.uniqueness


def test_bad_triangle_is_orbifold_only():
    r = from_grassmann_data(bad_triangle())
    assert r.status == "orbifold-only"
    face = r.face({0, 1})
    assert not face.free and face.snf == (1, 2) and face.orbifold == (2,)
    assert all(f.free for f in r.faces if f.facets != (0, 1))
    assert structure_groups(r.torus, r.sliced.lattice)[(0, 1)] == (2,)


def test_grassmann_pipeline_errors():
    _, _, Pres = square_model()
    with pytest.raises(NotLabelled):
        from_grassmann_data(perturbed(Pres, 0, 0, 1))
    # rows x_s * (a_s, a_s) satisfy the labelling but give rank-one planes
    n = 4
    lin = tuple(
        tuple(((1, 1) if i == k and i in (0, 2) else (0, 0)) for i in range(n)) for k in range(n)
    )
    flat = GrassmannPresentation(Pres.torus, Pres.pair, ((0, 0),) * n, lin)
    with pytest.raises(NotReeb):
        from_grassmann_data(flat)
    with pytest.raises(ValueError):
        from_grassmann_data(Pres, TorusData(4, ((1, 0, 0, 0),) * 4))


def test_radii_vanish_exactly_on_facets():
    _, _, Pres = square_model()
    r = from_grassmann_data(Pres)
    for entry in r.fibres["vertices"]:
        x = entry["point"]
        radii = entry["radii_squared"]
        assert all(a >= 0 for a in radii)
        assert {s for s, a in enumerate(radii) if a == 0} == r.torus.active_set(x)
    assert fibre_radii(r.torus, (1, 1, 0, 0)) == (2, 2, 0, 0)


def test_random_delzant_roundtrips():
    rng = random.Random(17)
    for _ in range(30):
        inst = random_delzant_instance(rng)
        r = from_labelled_polytope(inst.polytope, inst.L_map, inst.epsilon)
        assert r.ell + r.m == r.facet_count
        assert dimension_identities(r)
        assert r.status == "delzant"
        assert all(f.free and f.orbifold == () for f in r.faces)
        assert roundtrip_check(r, inst.polytope).ok


def test_random_presentations():
    rng = random.Random(19)
    for _ in range(15):
        Pres = random_grassmann(rng)
        r = from_grassmann_data(Pres)
        assert dimension_identities(r)
        assert r.ell == len(Pres.pair.g)
        assert roundtrip_check(r, input_polytope(Pres)).ok
        for f in r.faces:
            if f.free:
                assert f.orbifold == ()


def test_reslice_stability():
    _, _, Pres = square_model()
    base = from_grassmann_data(Pres)
    res = reslice(Pres, (F(3, 2), 2))
    pair2 = res.sliced.pair
    again = from_grassmann_data(block_presentation(Pres.torus, pair2))
    assert [(f.facets, f.free, f.snf) for f in again.faces] == [(f.facets, f.free, f.snf) for f in base.faces]


def test_simplex_model_shapes():
    H = simplex(2, 3)
    P, r = polytope_report(H.epsilon(), H.labels())
    assert r.ell == 1 and roundtrip_check(r, P).ok
    assert levi_pair_from_map(r.pair.L_map, r.pair.epsilon) == r.pair
