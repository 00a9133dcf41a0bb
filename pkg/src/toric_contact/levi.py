"""Levi pairs ``(g, lambda)`` from surjections ``L: t -> h``.

The quotient ``k = h / <epsilon>`` is represented by dropping the first
coordinate ``p`` where ``epsilon`` is nonzero: ``d(y) = y - (y_p /
epsilon_p) epsilon`` with coordinate ``p`` removed.  ``g`` is stored as the
HNF basis of the saturated kernel of ``u = d o L`` and ``lambda`` by its
values on that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import EmptySlice, NotSurjective, UnknownFace, ZeroLambda
from .exactnum.lattice import integer_kernel
from .exactnum.linalg import (
    dot,
    mat,
    mat_vec,
    nullspace,
    particular_solution,
    rank,
    rref,
    scale,
    transpose,
    vec,
)
from .polytope import AffineSlice, LabelledPolytope, Vertex


@dataclass(frozen=True)
class TorusData:
    """``t = Q^n`` with the standard lattice and labels ``e_s`` in ``t``."""

    n: int
    labels: tuple

    def __post_init__(self):
        labels = tuple(vec(e) for e in self.labels)
        object.__setattr__(self, "labels", labels)
        if self.n < 1:
            raise ValueError("torus dimension must be positive")
        for e in labels:
            if len(e) != self.n:
                raise ValueError("label length must equal the torus dimension")
            if all(a == 0 for a in e):
                raise ValueError("labels must be nonzero")

    @classmethod
    def standard(cls, n):
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def facets(self):
        return range(len(self.labels))

    def pairing(self, x, s):
        return dot(x, self.labels[s])

    def active_set(self, x):
        return frozenset(s for s in self.facets if self.pairing(x, s) == 0)

    def is_rational(self):
        return all(a.denominator == 1 for e in self.labels for a in e)


def quotient_pivot(epsilon):
    return next(i for i, a in enumerate(epsilon) if a != 0)


def quotient_map(epsilon):
    """Matrix of ``d: h -> k`` in the dropped-pivot basis, shape ``m x (m+1)``."""
    p = quotient_pivot(epsilon)
    rows = []
    for i in range(len(epsilon)):
        if i == p:
            continue
        rows.append(tuple(Fraction(int(j == i)) - (epsilon[i] / epsilon[p] if j == p else 0) for j in range(len(epsilon))))
    return tuple(rows)


@dataclass(frozen=True)
class LeviPair:
    L_map: tuple
    epsilon: tuple
    g: tuple
    lam: tuple
    u: tuple

    @property
    def ell(self):
        return len(self.g)

    @property
    def n(self):
        return len(self.L_map[0])

    @property
    def m(self):
        return len(self.L_map) - 1

    def lam_of(self, v):
        """``lambda`` evaluated on any vector of ``g``."""
        coeffs = _coords_in_basis(self.g, v)
        if coeffs is None:
            raise ValueError("vector not in g")
        return dot(coeffs, self.lam)

    @classmethod
    def from_subspace(cls, g_basis, lam):
        """Pair with prescribed ``g`` and ``lambda``.

        ``L`` is the canonical surjection onto ``t / ker lambda``: its rows
        are the RREF basis of the annihilator of ``ker lambda``, and
        ``epsilon = L(v0)`` for the first basis vector with ``lambda != 0``
        rescaled to ``lambda(v0) = 1``.
        """
        g_basis = [vec(v) for v in g_basis]
        lam = vec(lam)
        if not any(lam):
            raise ZeroLambda("lambda must be nonzero")
        n = len(g_basis[0])
        ker_coeffs = nullspace((lam,), len(lam))
        ker = [tuple(sum((c * v[i] for c, v in zip(k, g_basis)), Fraction(0)) for i in range(n)) for k in ker_coeffs]
        L_rows = nullspace(ker, n) if ker else [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        L_rows, _ = rref(L_rows)
        j = next(i for i, a in enumerate(lam) if a != 0)
        v0 = scale(1 / lam[j], g_basis[j])
        epsilon = mat_vec(L_rows, v0)
        pair = levi_pair_from_map(L_rows, epsilon)
        # re-express lambda on the canonical basis of the same subspace
        want = tuple(
            dot(_coords_in_basis(g_basis, v), lam) for v in pair.g
        )
        if want != pair.lam:
            raise AssertionError("levi pair reconstruction failed")
        return pair


def _coords_in_basis(basis, v):
    A = transpose(basis)
    aug = tuple(tuple(row) + (b,) for row, b in zip(A, v))
    R, pivots = rref(aug)
    k = len(basis)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, p in zip(R, pivots):
        x[p] = row[k]
    return tuple(x)


def levi_pair_from_map(L_map, epsilon):
    L = mat(L_map)
    epsilon = vec(epsilon)
    if not any(epsilon):
        raise ValueError("epsilon must be nonzero")
    if len(epsilon) != len(L):
        raise ValueError("epsilon must live in the target of L")
    if rank(L) != len(L):
        raise NotSurjective(f"L has rank {rank(L)} < dim h = {len(L)}")
    d = quotient_map(epsilon)
    u = tuple(tuple(dot(row, col) for col in transpose(L)) for row in d)
    n = len(L[0])
    g = tuple(tuple(Fraction(a) for a in v) for v in integer_kernel(u, n))
    p = quotient_pivot(epsilon)
    lam = []
    for v in g:
        Lv = mat_vec(L, v)
        c = Lv[p] / epsilon[p]
        if Lv != scale(c, epsilon):
            raise AssertionError("L(g) is not contained in span(epsilon)")
        lam.append(c)
    lam = tuple(lam)
    if not any(lam):
        raise ZeroLambda("L vanishes on g, so lambda = 0")
    return LeviPair(L, epsilon, g, lam, u)


@dataclass(frozen=True)
class SlicedPolytope:
    """``Delta_{g,lambda}`` as a labelled polytope plus its embedding in ``t*``.

    ``polytope`` lives on the slice ``{(1, y)}`` of ``Q^{m+1}``; a point
    ``(1, y)`` corresponds to ``origin + sum y_i directions[i]`` in ``t*``.
    Facet indices agree with the torus labels.
    """

    torus: TorusData
    pair: LeviPair
    polytope: LabelledPolytope
    origin: tuple
    directions: tuple

    def to_dual(self, xi):
        y = xi[1:]
        return tuple(
            self.origin[i] + sum((yj * d[i] for yj, d in zip(y, self.directions)), Fraction(0))
            for i in range(len(self.origin))
        )

    @cached_property
    def vertices(self):
        """Vertices in ``t*`` with their active sets, sorted."""
        return sorted(Vertex(self.to_dual(v.point), v.active) for v in self.polytope.vertices)

    @property
    def lattice(self):
        return self.polytope.lattice

    @property
    def m(self):
        return self.polytope.m


def slice_polytope(torus, pair, max_facets=None):
    """``{x in t* : iota_g^T x = lambda, <x, e_s> >= 0}`` realised directly.

    The affine space ``iota_g^T x = lambda`` is parametrised by an RREF
    particular solution and nullspace basis; labels are pulled back to
    that chart.  The map ``L`` is not used, so comparing with ``L^T`` of a
    polytope in ``h*`` is a genuine check.
    """
    if pair.n != torus.n:
        raise ValueError("pair and torus dimensions disagree")
    if pair.ell + pair.m != torus.n:
        raise ValueError("need n = m + ell")
    if not any(pair.lam):
        raise EmptySlice("lambda = 0 is excluded")
    G = tuple(pair.g)
    origin = particular_solution(G, pair.lam, torus.n)
    if origin is None:
        raise EmptySlice("iota_g^T x = lambda has no solution")
    directions = tuple(nullspace(G, torus.n))
    labels = []
    for e in torus.labels:
        labels.append((dot(origin, e),) + tuple(dot(d, e) for d in directions))
    m = len(directions)
    eps = (Fraction(1),) + (Fraction(0),) * m
    kwargs = {} if max_facets is None else {"max_facets": max_facets}
    P = LabelledPolytope(AffineSlice(eps), tuple(labels), **kwargs)
    from .errors import Empty

    try:
        P.vertices
    except Empty as exc:
        raise EmptySlice("Delta_{g,lambda} is empty") from exc
    return SlicedPolytope(torus, pair, P, origin, directions)


def check_transversality(torus, pair, S, lattice=None):
    """True iff ``{e_s : s in S}`` is independent and meets ``g`` only in 0."""
    S = frozenset(S)
    if lattice is None:
        lattice = slice_polytope(torus, pair).lattice
    if S not in lattice:
        raise UnknownFace(f"{sorted(S)} is not a face", witness=sorted(S))
    rows = [torus.labels[s] for s in sorted(S)]
    return rank(rows + list(pair.g)) == len(rows) + pair.ell


@dataclass(frozen=True)
class LabelCone:
    """``C_e = {x : <x, e_s> >= 0 for all s, S_x in Phi}``."""

    torus: TorusData
    faces: frozenset

    def active_set(self, x):
        return self.torus.active_set(x)

    def __contains__(self, x):
        x = vec(x)
        if any(self.torus.pairing(x, s) < 0 for s in self.torus.facets):
            return False
        return self.active_set(x) in self.faces
