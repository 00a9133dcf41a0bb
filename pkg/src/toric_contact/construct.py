"""Construction pipelines and their certificates.

``from_labelled_polytope`` starts from a labelled simple polytope in
``h*`` with ``t = Q^S`` and standard labels; ``from_grassmann_data``
starts from an affine presentation.  Both return a
:class:`ReductionReport` carrying only combinatorial data: dimensions,
the Levi pair, per-face freeness and orbifold groups, the momentum image
and the squared radii of the fibre tori.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InfeasiblePositivity,
    LabelMismatch,
    NotDelzant,
    NotInChart,
    NotLabelled,
    NotRational,
    NotReeb,
    NotSimple,
    NotTransversal,
)
from .exactnum.linalg import dot, rank, transpose
from .grassmann import (
    check_labels,
    chart_point,
    orbifold_groups,
    structure_group,
    verify_labelling,
)
from .levi import TorusData, check_transversality, levi_pair_from_map, slice_polytope
from .polytope import positive_feasible


@dataclass(frozen=True)
class FaceReport:
    facets: tuple
    transversal: bool
    free: bool  # Delzant at this face: stabilizer group in t is trivial
    snf: tuple  # invariant factors of the stacked labels
    orbifold: tuple | None  # invariant factors of the group in k; None if not rational


@dataclass
class ReductionReport:
    pipeline: str
    facet_count: int
    m: int
    ell: int
    dim_N: int
    dim_M: int
    pair: object
    torus: TorusData
    sliced: object
    positivity: tuple | None
    faces: list
    status: str  # "delzant" or "orbifold-only"
    fibres: dict = field(default_factory=dict)
    uniqueness: bool = False
    reeb: list = field(default_factory=list)

    @property
    def vertices(self):
        return self.sliced.vertices

    def face(self, S):
        key = tuple(sorted(S))
        return next(f for f in self.faces if f.facets == key)


def fibre_radii(torus, x):
    """Squared radii ``2 <x, e_s>`` of the circles in the fibre over ``x``."""
    return tuple(2 * torus.pairing(x, s) for s in torus.facets)


def _fibres(torus, sliced):
    centre = sliced.polytope.barycenter()
    centre = sliced.to_dual(centre)
    return {
        "barycenter": {"point": centre, "radii_squared": fibre_radii(torus, centre)},
        "vertices": [{"point": v.point, "radii_squared": fibre_radii(torus, v.point)} for v in sliced.vertices],
    }


def _face_reports(torus, pair, lattice):
    checks = check_labels(torus, lattice)
    failing = dict(checks.failures)
    try:
        groups = {S: orbifold_groups(torus, pair, S).factors for S in lattice.faces if S}
    except NotRational:
        groups = None
    out = []
    for S in lattice.elements:
        if not S:
            continue
        key = tuple(sorted(S))
        transversal = check_transversality(torus, pair, S, lattice)
        if checks.rational:
            snf = failing.get(key) or tuple([1] * len(S))
            free = key not in failing
        else:
            snf, free = (), False
        out.append(FaceReport(key, transversal, free, snf, None if groups is None else groups[S]))
    return checks, out


def from_labelled_polytope(polytope, L_map, epsilon):
    """Contact reduction data of a labelled simple polytope.

    ``t = Q^S`` with the standard lattice and labels, ``L(e_s) = L_s``.
    """
    lattice = polytope.lattice
    if not lattice.simple:
        w = lattice.witness
        raise NotSimple("polytope is not simple", witness={"vertex": w.point, "active": sorted(w.active)})
    L = tuple(tuple(Fraction(a) for a in row) for row in L_map)
    cols = transpose(L, len(polytope.labels))
    for s, (col, label) in enumerate(zip(cols, polytope.labels)):
        if col != label:
            raise LabelMismatch(f"L(e_{s}) != L_{s}", witness={"facet": s})
    if len(cols) != len(polytope.labels):
        raise LabelMismatch("L must have one column per facet")
    if tuple(Fraction(a) for a in epsilon) != polytope.slice.epsilon:
        raise LabelMismatch("epsilon differs from the polytope slice")
    pair = levi_pair_from_map(L, epsilon)
    k = len(polytope.labels)
    m = polytope.m
    ell = pair.ell
    assert ell == k - m, "dim g must equal |S| - m"
    positivity = positive_feasible(pair.g)
    if not positivity:
        raise InfeasiblePositivity(
            "g contains no strictly positive vector, inconsistent with a compact polytope",
            witness={"certificate": positivity.certificate},
        )
    torus = TorusData.standard(k)
    sliced = slice_polytope(torus, pair, max_facets=polytope.max_facets)
    checks, faces = _face_reports(torus, pair, lattice)
    bad = next((f for f in faces if not f.transversal), None)
    if bad is not None:
        raise NotTransversal("labels at a face meet g", witness={"face": list(bad.facets)})
    return ReductionReport(
        pipeline="polytope",
        facet_count=k,
        m=m,
        ell=ell,
        dim_N=k + m,
        dim_M=2 * k,
        pair=pair,
        torus=torus,
        sliced=sliced,
        positivity=positivity.vector,
        faces=faces,
        status="delzant" if checks.delzant else "orbifold-only",
        fibres=_fibres(torus, sliced),
        uniqueness=ell == 1,
    )


def from_grassmann_data(presentation, torus=None):
    """Toric contact manifold (or orbifold) report from an affine presentation."""
    P = presentation
    torus = torus or P.torus
    if torus != P.torus:
        raise ValueError("torus differs from the presentation's")
    labelling = verify_labelling(P)
    bad = [c for c in labelling if not c.ok]
    if bad:
        raise NotLabelled(
            f"Psi^T e_s does not vanish on facet {bad[0].facet}",
            witness={"facet": bad[0].facet, "vertex": bad[0].witness},
        )
    sliced = P.sliced
    lattice = sliced.lattice
    if not lattice.simple:
        w = lattice.witness
        raise NotSimple("slice polytope is not simple", witness={"vertex": w.point, "active": sorted(w.active)})
    pair = P.pair
    m, ell = sliced.m, pair.ell
    assert torus.n == m + ell, "dim t must equal m + ell"
    checks, faces = _face_reports(torus, pair, lattice)
    if not checks.rational:
        raise NotDelzant("labels are not in the lattice", witness={"facets": list(checks.non_lattice)})
    reeb = []
    for v in sliced.vertices:
        try:
            x = chart_point(pair.g, P.plane(v.point), pair.lam)
        except NotInChart as exc:
            raise NotReeb("plane over a vertex is not in the chart of g", witness={"vertex": v.point}) from exc
        if x != v.point:
            raise NotReeb("chart point differs from the vertex", witness={"vertex": v.point, "chart": x})
        reeb.append(v.point)
    return ReductionReport(
        pipeline="grassmann",
        facet_count=len(torus.labels),
        m=m,
        ell=ell,
        dim_N=2 * m + ell,
        dim_M=2 * (m + ell),
        pair=pair,
        torus=torus,
        sliced=sliced,
        positivity=None,
        faces=faces,
        status="delzant" if checks.delzant else "orbifold-only",
        fibres=_fibres(torus, sliced),
        uniqueness=ell == 1 or P.kind == "block",
        reeb=reeb,
    )


@dataclass(frozen=True)
class RoundtripResult:
    ok: bool
    missing: tuple = ()  # L^T images of input vertices not in the report
    extra: tuple = ()  # report vertices not hit by any input vertex
    facets: tuple = ()  # facets whose label values disagree
    lattice_match: bool = True

    def __bool__(self):
        return self.ok


def roundtrip_check(report, polytope):
    """Does ``Delta_{g,lambda}`` equal ``L^T`` of the input polytope?

    Vertices are compared as exact point sets.  For each input vertex the
    label values ``L_s(v)`` are compared with ``<L^T v, e_s>``, which
    names any facet whose label changed since the report was built; face
    lattices are compared as sets of facet sets.
    """
    L = report.pair.L_map
    if len(L) != polytope.slice.h_dim or len(L[0]) != report.torus.n:
        return RoundtripResult(False, lattice_match=False)
    LT = transpose(L, report.torus.n)
    images = {}
    for v in polytope.vertices:
        images[tuple(dot(col, v.point) for col in LT)] = v
    have = {w.point for w in report.vertices}
    missing = tuple(sorted(set(images) - have))
    extra = tuple(sorted(have - set(images)))
    facets = set()
    for x, v in images.items():
        for s in report.torus.facets:
            if s >= len(polytope.labels) or report.torus.pairing(x, s) != polytope.value(s, v.point):
                facets.add(s)
    lattice_match = set(polytope.lattice.faces) == set(report.sliced.lattice.faces)
    ok = not missing and not extra and not facets and lattice_match
    return RoundtripResult(ok, missing, extra, tuple(sorted(facets)), lattice_match)


def rescaled(polytope, s, factor):
    """Copy of a labelled polytope with label ``s`` multiplied by ``factor``."""
    from .polytope import LabelledPolytope

    labels = list(polytope.labels)
    labels[s] = tuple(Fraction(factor) * a for a in labels[s])
    return LabelledPolytope(polytope.slice, tuple(labels), polytope.max_facets)


def structure_groups(torus, lattice):
    """``structure_group`` on every nonempty face, keyed by sorted tuples."""
    return {tuple(sorted(S)): structure_group(torus, S).factors for S in lattice.elements if S}


def dimension_identities(report):
    """The bookkeeping identities both pipelines must satisfy."""
    ok = report.dim_N == 2 * report.m + report.ell and report.dim_M == 2 * (report.m + report.ell)
    if report.pipeline == "polytope":
        ok = ok and report.ell + report.m == report.facet_count
    return ok and report.torus.n == report.m + report.ell and rank(report.pair.g) == report.ell
