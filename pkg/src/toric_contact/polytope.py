"""Labelled convex polytopes in an affine slice of ``h*``.

A point of ``h*`` is a rational vector ``xi``; the slice is
``{xi : <xi, epsilon> = 1}`` and a label ``L_s`` in ``h`` is read as the
affine function ``xi -> <L_s, xi>`` on it.  Vertices are reported in
``h*`` coordinates, so no chart on the slice is ever chosen implicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple

from .errors import (
    DegeneratePolytope,
    Empty,
    NotSimpleVertex,
    TooManyFacets,
    Unbounded,
)
from .exactnum.linalg import (
    dot,
    nullspace,
    primitive,
    rank,
    rref,
    solve,
    sub,
    transpose,
    vec,
)

DEFAULT_MAX_FACETS = 20


@dataclass(frozen=True)
class AffineSlice:
    epsilon: tuple

    def __post_init__(self):
        object.__setattr__(self, "epsilon", vec(self.epsilon))
        if all(a == 0 for a in self.epsilon):
            raise ValueError("epsilon must be nonzero")

    @property
    def h_dim(self):
        return len(self.epsilon)

    @property
    def m(self):
        return self.h_dim - 1

    def contains(self, xi):
        return dot(self.epsilon, xi) == 1

    def directions(self):
        """Basis of ``epsilon^0``, the model space of the slice."""
        return nullspace((self.epsilon,))


class Vertex(NamedTuple):
    point: tuple
    active: frozenset


@dataclass(frozen=True)
class LabelledPolytope:
    """``{xi in slice : L_s(xi) >= 0 for all s}`` with its labels kept verbatim.

    Facets are indexed ``0 .. len(labels) - 1``.  Construction only checks
    shapes; :func:`labelled_polytope` also enforces compactness, nonempty
    interior and that every label cuts out a facet.
    """

    slice: AffineSlice
    labels: tuple
    max_facets: int = field(default=DEFAULT_MAX_FACETS, compare=False)

    def __post_init__(self):
        labels = tuple(vec(L) for L in self.labels)
        object.__setattr__(self, "labels", labels)
        for L in labels:
            if len(L) != self.slice.h_dim:
                raise ValueError("label length must equal dim h")
            if all(a == 0 for a in L):
                raise ValueError("labels must be nonzero")

    @property
    def m(self):
        return self.slice.m

    @property
    def facets(self):
        return range(len(self.labels))

    def value(self, s, xi):
        return dot(self.labels[s], xi)

    def active_set(self, xi):
        return frozenset(s for s in self.facets if self.value(s, xi) == 0)

    def contains(self, xi):
        return self.slice.contains(xi) and all(self.value(s, xi) >= 0 for s in self.facets)

    @cached_property
    def vertices(self):
        return enumerate_vertices(self)

    @cached_property
    def lattice(self):
        return face_lattice(self)

    def check(self):
        """Raise unless the interior is nonempty and every label is a facet."""
        verts = self.vertices
        if rank([v.point for v in verts]) != self.m + 1:
            raise DegeneratePolytope("polytope has empty interior")
        for s in self.facets:
            on = [v.point for v in verts if s in v.active]
            if not on or rank(on) != self.m:
                raise DegeneratePolytope(
                    f"label {s} meets the polytope in a face of codimension > 1",
                    witness={"facet": s},
                )
        return self

    def barycenter(self):
        pts = [v.point for v in self.vertices]
        return tuple(sum(c) / len(pts) for c in zip(*pts))


def labelled_polytope(epsilon, labels, max_facets=DEFAULT_MAX_FACETS):
    return LabelledPolytope(AffineSlice(epsilon), labels, max_facets).check()


# --- Fourier-Motzkin -------------------------------------------------------


@dataclass(frozen=True)
class PositivityResult:
    """Outcome of :func:`positive_feasible`.

    Exactly one of ``vector`` (a strictly positive element of the
    subspace) and ``certificate`` (nonnegative ``y != 0`` orthogonal to
    the subspace) is set.
    """

    vector: tuple | None
    coefficients: tuple | None
    certificate: tuple | None

    def __bool__(self):
        return self.vector is not None


def fourier_motzkin(A, b):
    """Decide ``A c >= b`` exactly by Fourier-Motzkin elimination.

    Returns ``(solution, None)`` when feasible and ``(None, y)`` otherwise,
    where ``y >= 0`` satisfies ``y A = 0`` and ``y . b > 0`` (a Farkas
    certificate).  Each derived row carries its multipliers on the
    original rows, which is how the certificate is recovered.
    """
    k = len(A)
    n = len(A[0]) if A else 0
    rows = [
        (tuple(Fraction(a) for a in A[i]), Fraction(b[i]), tuple(Fraction(int(i == j)) for j in range(k)))
        for i in range(k)
    ]
    stages = []
    for var in reversed(range(n)):
        stages.append(rows)
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        new = [r for r in rows if r[0][var] == 0]
        for p in pos:
            for q in neg:
                fp, fq = -q[0][var], p[0][var]
                new.append(
                    (
                        tuple(fp * x + fq * y for x, y in zip(p[0], q[0])),
                        fp * p[1] + fq * q[1],
                        tuple(fp * x + fq * y for x, y in zip(p[2], q[2])),
                    )
                )
        rows = _dedupe(new)
    for coeffs, rhs, mult in rows:
        if rhs > 0:
            return None, mult
    # back substitution, first variable first
    c = [Fraction(0)] * n
    for var, stage in zip(range(n), reversed(stages)):
        lo, hi = -math.inf, math.inf
        for coeffs, rhs, _ in stage:
            a = coeffs[var]
            if a == 0:
                continue
            rest = rhs - sum(coeffs[j] * c[j] for j in range(var))
            bound = rest / a
            if a > 0:
                lo = max(lo, bound)
            else:
                hi = min(hi, bound)
        c[var] = _pick(lo, hi)
    return tuple(c), None


def _dedupe(rows):
    seen = set()
    out = []
    for r in rows:
        coeffs, rhs, _ = r
        if all(a == 0 for a in coeffs) and rhs <= 0:
            continue
        scale = max((abs(a) for a in coeffs), default=Fraction(0)) or abs(rhs) or Fraction(1)
        key = (tuple(a / scale for a in coeffs), rhs / scale)
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def _pick(lo, hi):
    """A simple rational in ``[lo, hi]``: an integer near zero when possible."""
    if lo == -math.inf and hi == math.inf:
        return Fraction(0)
    if hi == math.inf:
        return Fraction(max(math.ceil(lo), 0))
    if lo == -math.inf:
        return Fraction(min(math.floor(hi), 0))
    lo_i, hi_i = math.ceil(lo), math.floor(hi)
    if lo_i <= hi_i:
        return Fraction(min(max(0, lo_i), hi_i))
    return (lo + hi) / 2


def positive_feasible(basis):
    """Strictly positive vector in ``span(basis)``, or a Farkas certificate.

    Positivity is homogeneous, so it is decided as ``B^T c >= 1``.
    """
    basis = [vec(v) for v in basis]
    if not basis:
        return PositivityResult(None, None, None)
    k = len(basis[0])
    A = transpose(basis)
    c, cert = fourier_motzkin(A, [1] * k)
    if c is None:
        return PositivityResult(None, None, cert)
    v = tuple(sum((ci * b[i] for ci, b in zip(c, basis)), Fraction(0)) for i in range(k))
    return PositivityResult(v, c, None)


def verify_positivity(basis, result):
    """Exact check of either branch of a :class:`PositivityResult`."""
    if result.vector is not None:
        return all(x > 0 for x in result.vector)
    y = result.certificate
    if y is None or not any(y) or any(a < 0 for a in y):
        return False
    return all(dot(y, v) == 0 for v in basis)


# --- vertices and faces ----------------------------------------------------


def recession_is_trivial(P):
    """True iff ``{d : <epsilon, d> = 0, L_s(d) >= 0}`` is ``{0}``.

    In coordinates ``d = B y`` on ``epsilon^0`` the cone is ``A y >= 0``.
    It is trivial iff ``A`` has full column rank and some strictly
    positive ``w`` has ``w A = 0``; the latter goes through Fourier-Motzkin.
    """
    B = P.slice.directions()
    m = len(B)
    if m == 0:
        return True
    A = [tuple(dot(L, b) for b in B) for L in P.labels]
    if rank(A) < m:
        return False
    kernel = nullspace(transpose(A, m), len(A))
    return bool(positive_feasible(kernel))


def enumerate_vertices(P):
    """All vertices of a compact labelled polytope, sorted lexicographically.

    Brute force over ``m``-subsets of labels, each solved exactly together
    with the slice equation.
    """
    if len(P.labels) > P.max_facets:
        raise TooManyFacets(f"{len(P.labels)} labels exceed the bound {P.max_facets}")
    if not recession_is_trivial(P):
        raise Unbounded("recession cone of the label system is nontrivial")
    m = P.m
    rhs = (Fraction(1),) + (Fraction(0),) * m
    found = {}
    for subset in combinations(P.facets, m):
        A = (P.slice.epsilon,) + tuple(P.labels[s] for s in subset)
        xi = solve(A, rhs)
        if xi is None or xi in found:
            continue
        if all(P.value(s, xi) >= 0 for s in P.facets):
            found[xi] = P.active_set(xi)
    if not found:
        raise Empty("no feasible point")
    return [Vertex(xi, found[xi]) for xi in sorted(found)]


@dataclass(frozen=True)
class Face:
    facets: frozenset
    vertices: tuple  # indices into the vertex list
    dim: int


@dataclass(frozen=True)
class FaceLattice:
    """Faces keyed by the set of labels vanishing on them.

    ``simple`` is True iff every vertex lies on exactly ``m`` facets;
    otherwise ``witness`` names an offending vertex.
    """

    faces: dict
    vertices: tuple
    simple: bool
    witness: Vertex | None = None

    @property
    def elements(self):
        return sorted(self.faces, key=lambda S: (len(S), sorted(S)))

    def __contains__(self, S):
        return frozenset(S) in self.faces

    def is_downward_closed(self):
        return all(
            frozenset(sub) in self.faces
            for S in self.faces
            for k in range(len(S))
            for sub in combinations(sorted(S), k)
        )

    def vertex_sets(self):
        return {v.active for v in self.vertices}


def face_lattice(P):
    verts = P.vertices
    m = P.m
    sets = {frozenset()}
    frontier = {v.active for v in verts}
    while frontier:
        sets |= frontier
        frontier = {a & b for a in sets for b in sets} - sets
    faces = {}
    for S in sets:
        idx = tuple(i for i, v in enumerate(verts) if S <= v.active)
        dim = rank([verts[i].point for i in idx]) - 1
        faces[S] = Face(S, idx, dim)
    witness = next((v for v in verts if len(v.active) != m), None)
    lattice = FaceLattice(faces, tuple(verts), witness is None, witness)
    if lattice.simple and not lattice.is_downward_closed():
        raise AssertionError("simple polytope with a face lattice that is not simplicial")
    return lattice


def tangent_cone(P, vertex):
    """Primitive edge directions at a simple vertex, one per active label.

    The direction for label ``s`` keeps the other active labels at zero
    and increases ``L_s``; it lies in ``epsilon^0``.
    """
    point = vertex.point if isinstance(vertex, Vertex) else vec(vertex)
    S = sorted(P.active_set(point))
    if len(S) != P.m:
        raise NotSimpleVertex(f"vertex has {len(S)} active labels, expected {P.m}", witness=S)
    gens = []
    for s in S:
        rows = (P.slice.epsilon,) + tuple(P.labels[t] for t in S if t != s)
        (d,) = nullspace(rows, P.slice.h_dim)
        if dot(P.labels[s], d) < 0:
            d = tuple(-a for a in d)
        gens.append(tuple(Fraction(a) for a in primitive(d)))
    return gens


def cone_contains(generators, v):
    """Exact membership of ``v`` in the cone on linearly independent generators."""
    if not generators:
        return all(a == 0 for a in v)
    A = transpose(generators)
    coeffs = solve_least(A, v)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def solve_least(A, b):
    """Solve ``A x = b`` for full-column-rank ``A`` (more rows allowed)."""
    n = len(A[0]) if A else 0
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(A, b))
    R, pivots = rref(aug)
    if n in pivots or len(pivots) != n:
        return None
    return tuple(row[n] for row in R[:n])


def vertex_differences_in_cone(P, vertex):
    gens = tangent_cone(P, vertex)
    return all(cone_contains(gens, sub(w.point, vertex.point)) for w in P.vertices)
