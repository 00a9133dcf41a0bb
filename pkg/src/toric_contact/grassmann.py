"""Grassmannian charts, affine presentations and lattice tests.

A presentation describes the polyhedral image ``Xi`` in ``Gr_ell(t*)``
by an affine map ``Psi`` from the slice polytope ``Delta_{g,lambda}`` to
``Hom(g*, t*)``: the plane over ``x`` is the column space of ``Psi(x)``.
Only such affine images are representable; curved images are out of
scope.

``Psi(x)`` is an ``n x ell`` matrix whose column ``j`` is the image of the
``j``-th dual basis vector of ``g*`` (dual to the HNF basis of ``g``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product

from .errors import (
    Degenerate,
    NotDelzantVertex,
    NotInChart,
    NotRational,
    UnknownFace,
)
from .exactnum.lattice import invariant_factors, lattice_basis, torsion_factors
from .exactnum.linalg import (
    dot,
    mat,
    primitive,
    rank,
    rref,
    solve,
    transpose,
    vec,
)
from .levi import LeviPair, TorusData, _coords_in_basis, check_transversality, slice_polytope
from .polytope import Vertex, tangent_cone


@dataclass(frozen=True)
class GrassmannPoint:
    """A subspace of ``t*`` stored as the RREF of any spanning rows."""

    rows: tuple

    def __post_init__(self):
        R, pivots = rref(mat(self.rows))
        if not pivots:
            raise ValueError("zero subspace")
        object.__setattr__(self, "rows", tuple(R[: len(pivots)]))

    @classmethod
    def from_columns(cls, M):
        return cls(transpose(M))

    @property
    def ell(self):
        return len(self.rows)

    def contains(self, x):
        return rank(self.rows + (vec(x),)) == self.ell


def chart_point(g, xi, lam):
    """The unique ``x`` in the plane ``xi`` with ``iota_g^T x = lam``.

    Writing ``x = sum c_i xi_i`` the condition is ``M^T c = lam`` with
    ``M[i][j] = <xi_i, g_j>``; the plane is in the chart iff ``M`` is
    invertible.
    """
    g = [vec(v) for v in g]
    lam = vec(lam)
    if xi.ell != len(g):
        raise NotInChart(f"plane has dimension {xi.ell}, g has dimension {len(g)}")
    Mt = tuple(tuple(dot(row, gj) for row in xi.rows) for gj in g)
    c = solve(Mt, lam)
    if c is None:
        raise NotInChart("iota_g^T restricted to the plane is singular")
    n = len(xi.rows[0])
    return tuple(sum((ci * row[k] for ci, row in zip(c, xi.rows)), Fraction(0)) for k in range(n))


@dataclass(frozen=True)
class GrassmannPresentation:
    """Affine chart data ``(g, lambda, Delta, Psi)``.

    ``Psi(x)[i][j] = constant[i][j] + sum_k linear[k][i][j] * x_k`` for
    ``x`` in ``t*``.  ``kind`` records how the data was built ("ell1",
    "block" or "custom"); it only feeds the informational uniqueness flag.
    """

    torus: TorusData
    pair: LeviPair
    constant: tuple
    linear: tuple
    kind: str = field(default="custom", compare=False)

    def __post_init__(self):
        n, ell = self.torus.n, self.pair.ell
        const = tuple(tuple(Fraction(a) for a in row) for row in self.constant)
        lin = tuple(tuple(tuple(Fraction(a) for a in row) for row in block) for block in self.linear)
        if len(const) != n or any(len(r) != ell for r in const):
            raise ValueError("constant part must be n x ell")
        if len(lin) != n or any(len(b) != n or any(len(r) != ell for r in b) for b in lin):
            raise ValueError("linear part must be n x n x ell")
        object.__setattr__(self, "constant", const)
        object.__setattr__(self, "linear", lin)

    @property
    def n(self):
        return self.torus.n

    @property
    def ell(self):
        return self.pair.ell

    @cached_property
    def sliced(self):
        return slice_polytope(self.torus, self.pair)

    def psi(self, x):
        n, ell = self.n, self.ell
        return tuple(
            tuple(
                self.constant[i][j] + sum((self.linear[k][i][j] * x[k] for k in range(n) if x[k]), Fraction(0))
                for j in range(ell)
            )
            for i in range(n)
        )

    def apply(self, x, covector):
        """``Psi(x)`` applied to an element of ``g*`` given in dual-basis coordinates."""
        P = self.psi(x)
        return tuple(dot(row, covector) for row in P)

    def plane(self, x):
        return GrassmannPoint.from_columns(self.psi(x))

    def check_invariants(self):
        """Exact checks of ``iota_g^T Psi = I`` and ``Psi(x) lambda = x`` on ``Delta``.

        Both sides are affine in ``x``, so checking on the vertices (an
        affine spanning set of the slice) settles them everywhere.  The
        first identity also certifies ``rank Psi(x) = ell`` on the whole
        slice.  Returns a list of failures, empty when all hold.
        """
        failures = []
        ell = self.ell
        for v in self.sliced.vertices:
            P = self.psi(v.point)
            G = tuple(tuple(dot(ga, col) for col in transpose(P, ell)) for ga in self.pair.g)
            if any(G[a][b] != (a == b) for a in range(ell) for b in range(ell)):
                failures.append({"check": "iota_g^T Psi = I", "vertex": v.point})
            if tuple(dot(row, self.pair.lam) for row in P) != v.point:
                failures.append({"check": "Psi(x) lambda = x", "vertex": v.point})
        return failures


def _zero_linear(n, ell):
    return tuple(tuple(tuple(Fraction(0) for _ in range(ell)) for _ in range(n)) for _ in range(n))


def codim_one_presentation(torus, pair):
    """``Psi(x) = x / lambda``: for ``ell = 1`` the plane is just the line through ``x``."""
    if pair.ell != 1:
        raise ValueError("codimension one only")
    n = torus.n
    lam = pair.lam[0]
    linear = tuple(
        tuple((Fraction(int(i == k)) / lam,) for i in range(n)) for k in range(n)
    )
    constant = tuple((Fraction(0),) for _ in range(n))
    return GrassmannPresentation(torus, pair, constant, linear, kind="ell1")


def block_presentation(torus, pair):
    """Product structure: ``Psi(x) lambda_j* = P_j x / lambda_j``.

    Requires the basis vectors of ``g`` to have disjoint supports covering
    all coordinates; ``P_j`` is the coordinate projection onto support
    ``j``.  Every ``lambda_j`` must be nonzero.
    """
    n, ell = torus.n, pair.ell
    supports = [frozenset(i for i, a in enumerate(v) if a) for v in pair.g]
    covered = set().union(*supports)
    if covered != set(range(n)) or sum(len(s) for s in supports) != n:
        raise ValueError("g basis supports must partition the coordinates")
    if any(a == 0 for a in pair.lam):
        raise Degenerate("block presentation needs every lambda_j nonzero")
    lin = [[[Fraction(0)] * ell for _ in range(n)] for _ in range(n)]
    for j, S in enumerate(supports):
        for i in S:
            lin[i][i][j] = 1 / pair.lam[j]
    linear = tuple(tuple(tuple(r) for r in b) for b in lin)
    constant = tuple(tuple(Fraction(0) for _ in range(ell)) for _ in range(n))
    return GrassmannPresentation(torus, pair, constant, linear, kind="block")


def product_of_simplices(dims):
    """Torus, pair and block presentation for ``Delta_{m_1} x ... x Delta_{m_k}``.

    ``t = Q^{sum(m_i + 1)}`` with the standard labels and ``g`` spanned by
    the all-ones vector of each block, ``lambda = (1, ..., 1)``.  ``(1, 1)``
    gives the square of the S^3 x S^3 model; a single entry gives a sphere.
    """
    n = sum(d + 1 for d in dims)
    torus = TorusData.standard(n)
    g = []
    start = 0
    for d in dims:
        g.append(tuple(int(start <= i < start + d + 1) for i in range(n)))
        start += d + 1
    pair = LeviPair.from_subspace(g, [1] * len(dims))
    if len(dims) == 1:
        return torus, pair, codim_one_presentation(torus, pair)
    return torus, pair, block_presentation(torus, pair)


SQUARE_L = ((0, 0, 1, 1), (1, 0, -1, 0), (0, 1, 0, -1))
SQUARE_EPSILON = (1, 0, 0)


def square_model():
    """The unit square with labels ``x, y, 1-x, 1-y`` and its block presentation.

    ``g = span{(1,0,1,0), (0,1,0,1)}``, ``lambda = (1, 1)`` and
    ``Psi(x) lambda_1* = (x1, 0, x3, 0)``, ``Psi(x) lambda_2* = (0, x2, 0, x4)``.
    """
    from .levi import levi_pair_from_map

    torus = TorusData.standard(4)
    pair = levi_pair_from_map(SQUARE_L, SQUARE_EPSILON)
    return torus, pair, block_presentation(torus, pair)


def perturbed(P, i, j, delta):
    """Copy of ``P`` with ``delta`` added to ``constant[i][j]``."""
    const = [list(r) for r in P.constant]
    const[i][j] += Fraction(delta)
    return GrassmannPresentation(P.torus, P.pair, tuple(map(tuple, const)), P.linear, kind="custom")


@dataclass(frozen=True)
class FacetCheck:
    facet: int
    ok: bool
    witness: tuple | None = None


def verify_labelling(P):
    """Per facet: does ``x -> Psi(x)^T e_s`` vanish on ``F_s``?

    The map is affine, so vanishing at the vertices of ``F_s`` decides it.
    """
    report = []
    verts = P.sliced.vertices
    for s in P.torus.facets:
        e = P.torus.labels[s]
        witness = None
        for v in verts:
            if s not in v.active:
                continue
            Pt = P.psi(v.point)
            value = tuple(sum((e[i] * Pt[i][j] for i in range(P.n)), Fraction(0)) for j in range(P.ell))
            if any(value):
                witness = v.point
                break
        report.append(FacetCheck(s, witness is None, witness))
    return report


def chart_certificate(P, g_prime, samples=4):
    """Rank certificate for ``Psi`` in the chart of another subspace ``g'``.

    ``det(iota_{g'}^T Psi(x))`` is a polynomial of degree <= ell on the
    slice.  For ``ell = 1`` it is affine and a common strict sign at the
    vertices is an exact proof; for ``ell >= 2`` the vertices and a grid
    of convex combinations are checked and the status is
    ``"certified-at-samples"``.
    """
    from .exactnum.linalg import det

    g_prime = [vec(v) for v in g_prime]
    verts = [v.point for v in P.sliced.vertices]

    def value(x):
        Psi = P.psi(x)
        M = tuple(tuple(dot(ga, col) for col in transpose(Psi, P.ell)) for ga in g_prime)
        return det(M)

    points = list(verts)
    if P.ell >= 2:
        k = len(verts)
        for weights in product(range(samples + 1), repeat=min(k, 3)):
            if sum(weights) == 0:
                continue
            w = [Fraction(a, sum(weights)) for a in weights]
            idx = range(min(k, 3))
            # rotate through vertex triples so every vertex gets mixed in
            for shift in range(k):
                chosen = [verts[(shift + i) % k] for i in idx]
                points.append(tuple(sum((wi * p[c] for wi, p in zip(w, chosen)), Fraction(0)) for c in range(P.n)))
    signs = set()
    for x in points:
        d = value(x)
        if d == 0:
            return {"status": "fails", "witness": x, "points": len(points)}
        signs.add(d > 0)
    if len(signs) > 1:
        return {"status": "fails", "witness": None, "points": len(points)}
    status = "exact" if P.ell == 1 else "certified-at-samples"
    return {"status": status, "witness": None, "points": len(points)}


# --- lattice tests ---------------------------------------------------------


@dataclass(frozen=True)
class LabelCheck:
    rational: bool
    delzant: bool
    failures: tuple  # (face, snf diagonal) pairs, faces as sorted tuples
    non_lattice: tuple  # facets whose label is not in the lattice

    @property
    def orbifold_only(self):
        return self.rational and not self.delzant


def _faces_of(lattice):
    elements = lattice.elements if hasattr(lattice, "elements") else lattice
    return sorted((frozenset(S) for S in elements if S), key=lambda S: (len(S), sorted(S)))


def check_labels(torus, lattice):
    """Rationality of every label and the Delzant condition on every face.

    ``lattice`` is a :class:`FaceLattice` or any iterable of facet sets.
    """
    non_lattice = tuple(
        s for s in torus.facets if any(a.denominator != 1 for a in torus.labels[s])
    )
    rational = not non_lattice
    failures = []
    if rational:
        for S in _faces_of(lattice):
            rows = [torus.labels[s] for s in sorted(S)]
            diag = invariant_factors(rows)
            if len(diag) != len(rows) or any(d != 1 for d in diag):
                failures.append((tuple(sorted(S)), tuple(diag)))
    delzant = rational and not failures
    return LabelCheck(rational, delzant, tuple(failures), non_lattice)


@dataclass(frozen=True)
class OrbifoldGroup:
    factors: tuple = ()

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def trivial(self):
        return not self.factors

    def __str__(self):
        if self.trivial:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.factors)


def structure_group(torus, S):
    """``(Lambda ∩ span e_S) / span_Z e_S`` in ``t``.

    This is the stabilizer group whose vanishing on every face is the
    Delzant (freeness) condition.
    """
    rows = [torus.labels[s] for s in sorted(S)]
    if any(a.denominator != 1 for r in rows for a in r):
        raise NotRational("labels must lie in the lattice", witness=sorted(S))
    return OrbifoldGroup(tuple(torsion_factors(rows)))


def kernel_lattice_coords(torus, pair):
    """``u_s`` in an HNF basis of ``u(Lambda)``, one integer row per facet.

    Raises NotRational when some ``u_s`` is not in ``u(Lambda)``.
    """
    u_cols = transpose(pair.u, pair.n)
    basis = lattice_basis(u_cols)
    coords = []
    for s in torus.facets:
        us = tuple(dot(row, torus.labels[s]) for row in pair.u)
        c = _coords_in_basis(basis, us)
        if c is None or any(a.denominator != 1 for a in c):
            raise NotRational(f"u(e_{s}) is not in the lattice u(Lambda)", witness={"facet": s, "u": us})
        coords.append(tuple(int(a) for a in c))
    return coords


def orbifold_groups(torus, pair, S):
    """``(Lambda_k ∩ span{u_s}) / span_Z{u_s}`` for ``s`` in ``S``, in ``k = h/<epsilon>``.

    ``Lambda_k = u(Lambda)``; each ``u_s`` is written in its HNF basis and
    the torsion is read off the Smith form.
    """
    coords = kernel_lattice_coords(torus, pair)
    rows = [coords[s] for s in sorted(S)]
    if not rows:
        return OrbifoldGroup()
    return OrbifoldGroup(tuple(torsion_factors(rows)))


# --- reslicing -------------------------------------------------------------


@dataclass(frozen=True)
class ResliceResult:
    sliced: object
    vertex_map: dict  # old vertex point -> new vertex point
    lattice_isomorphic: bool


def reslice(P, lam2):
    """Push ``Delta`` through ``x -> Psi(x) lam2`` and compare with ``Delta_{g,lam2}``."""
    lam2 = vec(lam2)
    if not any(lam2):
        raise Degenerate("lambda' must be nonzero")
    old = P.sliced
    m = old.m
    images = [tuple(dot(row, lam2) for row in lin) for lin in _linear_images(P, old.directions)]
    dim = rank(images) if images else 0
    if dim < m:
        raise Degenerate(f"image of Delta has dimension {dim} < {m}", witness={"lambda": lam2})
    pair2 = LeviPair.from_subspace(P.pair.g, lam2)
    new = slice_polytope(P.torus, pair2)
    new_verts = {v.point: v.active for v in new.vertices}
    mapping = {}
    for v in old.vertices:
        w = P.apply(v.point, lam2)
        if new_verts.get(w) != v.active:
            raise Degenerate("vertex image is not the matching vertex of the new slice", witness=v.point)
        mapping[v.point] = w
    if len(set(mapping.values())) != len(new_verts):
        raise Degenerate("vertex map is not a bijection")
    iso = set(old.lattice.faces) == set(new.lattice.faces)
    return ResliceResult(new, mapping, iso)


def _linear_images(P, directions):
    # the linear part of x -> Psi(x) on each direction, as n x ell matrices
    out = []
    for d in directions:
        out.append(
            tuple(
                tuple(sum((P.linear[k][i][j] * d[k] for k in range(P.n) if d[k]), Fraction(0)) for j in range(P.ell))
                for i in range(P.n)
            )
        )
    return out


# --- local cones -----------------------------------------------------------


def slice_cone(torus, pair, vertex, lattice=None):
    """Generators of the local model cone at a Delzant vertex, in ``t*``.

    With ``h_alpha = span{e_s : s in S}`` the isotropy weights are the dual
    basis ``beta_s`` of ``h_alpha*``.  A splitting ``chi: t -> h_alpha``
    gives ``chi^T beta_s`` with ``<chi^T beta_s, e_t> = delta_st``, and
    ``h_alpha^0 + cone(chi^T beta_s)`` is ``{y : <y, e_s> >= 0, s in S}``
    whatever ``chi`` is.  Intersecting with the tangent space
    ``ker iota_g^T`` of the slice leaves one ray per ``s``: the solution of
    ``<y, e_t> = delta_st`` (``t in S``), ``iota_g^T y = 0``, scaled to be
    primitive.
    """
    point = vertex.point if isinstance(vertex, Vertex) else vec(vertex)
    S = sorted(torus.active_set(point))
    m = torus.n - pair.ell
    if len(S) != m:
        raise NotDelzantVertex(f"vertex lies on {len(S)} facets, expected {m}", witness=S)
    try:
        ok = check_transversality(torus, pair, S, lattice)
    except UnknownFace as exc:
        raise NotDelzantVertex(str(exc), witness=S) from exc
    if not ok:
        raise NotDelzantVertex("labels at the vertex are not transversal to g", witness=S)
    A = tuple(torus.labels[s] for s in S) + tuple(pair.g)
    gens = []
    for s in S:
        rhs = tuple(Fraction(int(t == s)) for t in S) + (Fraction(0),) * pair.ell
        y = solve(A, rhs)
        gens.append(tuple(Fraction(a) for a in primitive(y)))
    return sorted(gens)


def tangent_cone_dual(sliced, vertex):
    """Tangent cone of ``Delta_{g,lambda}`` at a vertex, mapped into ``t*``."""
    point = vertex.point if isinstance(vertex, Vertex) else vec(vertex)
    chart = next(v for v in sliced.polytope.vertices if sliced.to_dual(v.point) == point)
    gens = tangent_cone(sliced.polytope, chart)
    out = []
    for d in gens:
        y = d[1:]
        x = tuple(sum((yj * dj[i] for yj, dj in zip(y, sliced.directions)), Fraction(0)) for i in range(len(point)))
        out.append(tuple(Fraction(a) for a in primitive(x)))
    return sorted(out)


def same_cone(gens_a, gens_b):
    """Equality of simplicial cones given by primitive generators."""
    norm = lambda gs: sorted(tuple(Fraction(a) for a in primitive(g)) for g in gs)
    return norm(gens_a) == norm(gens_b)
