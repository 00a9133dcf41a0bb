"""Model problems and random instance generators.

Polytopes are written as ``<n_s, y> + c_s >= 0`` on ``Q^m`` and embedded in
``h = Q^{m+1}`` with ``epsilon = (1, 0, ..., 0)`` and labels
``L_s = (c_s, n_s)``, so ``xi = (1, y)`` on the slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PropertyFailure
from .exactnum.linalg import identity, matmul, rank, transpose
from .grassmann import codim_one_presentation, product_of_simplices, square_model
from .levi import TorusData, levi_pair_from_map
from .pencil import SkewPencil, product_sphere_pencil, quaternionic_pencil
from .polytope import AffineSlice, LabelledPolytope, labelled_polytope
from .problem import Problem


@dataclass(frozen=True)
class HalfSpaces:
    """``{y in Q^m : <n_s, y> + c_s >= 0}``."""

    normals: tuple
    offsets: tuple

    @property
    def m(self):
        return len(self.normals[0])

    def labels(self):
        return tuple((Fraction(c),) + tuple(Fraction(a) for a in n) for n, c in zip(self.normals, self.offsets))

    def epsilon(self):
        return (Fraction(1),) + (Fraction(0),) * self.m

    def polytope(self, checked=True):
        if checked:
            return labelled_polytope(self.epsilon(), self.labels())
        return LabelledPolytope(AffineSlice(self.epsilon()), self.labels())

    def L_map(self):
        return transpose(self.labels(), self.m + 1)

    def transformed(self, A, b):
        """Substitute ``y = A y' + b``; unimodular ``A`` keeps Delzant data Delzant."""
        At = transpose(A)
        normals = tuple(tuple(sum(At[i][k] * n[k] for k in range(self.m)) for i in range(self.m)) for n in self.normals)
        offsets = tuple(c + sum(nk * bk for nk, bk in zip(n, b)) for n, c in zip(self.normals, self.offsets))
        return HalfSpaces(normals, offsets)


def _e(i, m, sign=1):
    return tuple(sign * int(i == j) for j in range(m))


def simplex(m, a=1):
    return HalfSpaces(tuple(_e(i, m) for i in range(m)) + (tuple([-1] * m),), (0,) * m + (a,))


def box(sides):
    m = len(sides)
    return HalfSpaces(
        tuple(_e(i, m) for i in range(m)) + tuple(_e(i, m, -1) for i in range(m)),
        (0,) * m + tuple(sides),
    )


def hirzebruch(a, b, k):
    """Trapezoid ``y1, y2 >= 0``, ``y2 <= b``, ``y1 + k y2 <= a`` (``a > k b``)."""
    return HalfSpaces(((1, 0), (0, 1), (0, -1), (-1, -k)), (0, 0, b, a))


def pentagon(a=2, b=2, c=3):
    """Square ``[0,a] x [0,b]`` with the corner ``(a, b)`` cut by ``y1 + y2 <= c``."""
    return HalfSpaces(((1, 0), (0, 1), (-1, 0), (0, -1), (-1, -1)), (0, 0, a, b, c))


def prism(base, height):
    """``base x [0, height]`` for a 2-dimensional base."""
    normals = tuple(tuple(n) + (0,) for n in base.normals) + ((0, 0, 1), (0, 0, -1))
    return HalfSpaces(normals, tuple(base.offsets) + (0, height))


# --- the bundled corpus ----------------------------------------------------


def problem_from_presentation(P, **options):
    return Problem(
        torus_dim=P.torus.n,
        labels=P.torus.labels,
        L_map=P.pair.L_map,
        epsilon=P.pair.epsilon,
        constant=P.constant,
        linear=P.linear,
        options=options,
    )


def sphere_problem(m):
    torus = TorusData.standard(m + 1)
    pair = levi_pair_from_map(identity(m + 1), (1,) * (m + 1))
    return problem_from_presentation(codim_one_presentation(torus, pair))


def square_problem():
    _, _, P = square_model()
    return problem_from_presentation(P, **{"lambda": (Fraction(1), Fraction(2))})


def s1s5_problem():
    pen = product_sphere_pencil((0, 2))
    return Problem(pencil_ell=pen.ell, pencil_m=pen.m, matrices=pen.matrices)


def s3s3_pencil_problem():
    pen = product_sphere_pencil((1, 1))
    return Problem(pencil_ell=pen.ell, pencil_m=pen.m, matrices=pen.matrices)


def quaternionic_problem():
    pen = quaternionic_pencil((1, 0), (0, 1))
    return Problem(pencil_ell=pen.ell, pencil_m=pen.m, matrices=pen.matrices)


BAD_LABELS = ((0, 1, 1), (0, 1, -1), (1, -1, 0))


def bad_triangle():
    """Codimension one, labels ``(0,1,1), (0,1,-1), (1,-1,0)``: Z/2 at face {0, 1}."""
    torus = TorusData(3, BAD_LABELS)
    pair = levi_pair_from_map(identity(3), (1, 0, 0))
    return codim_one_presentation(torus, pair)


def bad_problem():
    return problem_from_presentation(bad_triangle(), face=(0, 1))


def pentagon_problem():
    H = pentagon()
    L = H.L_map()
    return Problem(torus_dim=len(H.normals), labels=identity(len(H.normals)), L_map=L, epsilon=H.epsilon())


def corpus():
    """Name -> Problem for the bundled example files."""
    return {
        "simplex": sphere_problem(2),
        "square": square_problem(),
        "s1s5": s1s5_problem(),
        "s3s3_pencil": s3s3_pencil_problem(),
        "quaternionic": quaternionic_problem(),
        "bad": bad_problem(),
        "pentagon": pentagon_problem(),
    }


# --- random instances ------------------------------------------------------


def random_unimodular(m, rng, steps=None):
    A = [list(r) for r in identity(m)]
    for _ in range(steps if steps is not None else 2 * m):
        i, j = rng.sample(range(m), 2) if m > 1 else (0, 0)
        if i == j:
            break
        q = rng.choice([-2, -1, 1, 2])
        A[i] = [a + q * b for a, b in zip(A[i], A[j])]
    if rng.random() < 0.5:
        A[0] = [-a for a in A[0]]
    return tuple(tuple(Fraction(a) for a in r) for r in A)


def change_h_basis(labels, epsilon, B):
    """Coordinates ``xi = B^T xi'`` on ``h*``: labels and epsilon become ``B L``."""
    apply = lambda v: tuple(sum(B[i][k] * v[k] for k in range(len(v))) for i in range(len(B)))
    return tuple(apply(L) for L in labels), apply(epsilon)


def random_delzant(rng, max_m=3, max_ell=2, max_facets=7):
    """A random Delzant polytope as :class:`HalfSpaces` (then transformed)."""
    while True:
        m = rng.randint(1, max_m)
        r = lambda: rng.randint(1, 3)
        if m == 1:
            H = box((r(),)) if rng.random() < 0.5 else simplex(1, r())
        elif m == 2:
            kind = rng.choice(["simplex", "box", "hirzebruch", "pentagon"])
            if kind == "simplex":
                H = simplex(2, r())
            elif kind == "box":
                H = box((r(), r()))
            elif kind == "hirzebruch":
                k, b = rng.randint(0, 2), r()
                H = hirzebruch(k * b + r(), b, k)
            else:
                a, b = rng.randint(2, 3), rng.randint(2, 3)
                H = pentagon(a, b, max(a, b) + rng.randint(1, min(a, b) - 1))
        else:
            kind = rng.choice(["simplex", "prism", "box"])
            if kind == "simplex":
                H = simplex(3, r())
            elif kind == "prism":
                H = prism(simplex(2, r()), r())
            else:
                H = box((r(), r(), r()))
        ell = len(H.normals) - H.m
        if ell > max_ell or len(H.normals) > max_facets:
            continue
        A = random_unimodular(H.m, rng)
        b = tuple(rng.randint(-2, 2) for _ in range(H.m))
        return H.transformed(A, b)


@dataclass(frozen=True)
class PolytopeInstance:
    polytope: LabelledPolytope
    L_map: tuple
    epsilon: tuple


def random_delzant_instance(rng, max_m=3, max_ell=2, max_facets=7, change_basis=True):
    """Delzant labelled polytope with ``t = Q^S`` data, optionally in a random basis of ``h``."""
    H = random_delzant(rng, max_m, max_ell, max_facets)
    labels, eps = H.labels(), H.epsilon()
    if change_basis:
        labels, eps = change_h_basis(labels, eps, random_unimodular(H.m + 1, rng))
    P = labelled_polytope(eps, labels)
    return PolytopeInstance(P, transpose(labels, H.m + 1), eps)


def random_delzant_labels(rng, **kw):
    """Delzant data in a random lattice basis of ``t``: ``(torus, pair, instance)``.

    With ``T`` unimodular, ``e_s = T f_s`` and ``L' = L T^{-1}``, so
    ``L'(e_s) = L_s``; both lattice tests are invariant under ``T``.
    """
    from .exactnum.linalg import inverse

    inst = random_delzant_instance(rng, **kw)
    k = len(inst.polytope.labels)
    T = random_unimodular(k, rng)
    labels = transpose(T, k)  # columns of T
    L2 = matmul(inst.L_map, inverse(T))
    torus = TorusData(k, labels)
    pair = levi_pair_from_map(L2, inst.epsilon)
    return torus, pair, inst


def random_simple_polytope(rng, max_m=3, max_facets=8, attempts=200):
    """Random simple labelled polytope (not necessarily rational-Delzant).

    A simplex or box is cut by random half-spaces through integer data;
    labels that do not define facets are dropped and non-simple results
    are rejected.  A random change of basis on ``h`` follows.
    """
    for _ in range(attempts):
        m = rng.randint(1, max_m)
        base = simplex(m, rng.randint(2, 4)) if rng.random() < 0.5 else box(tuple(rng.randint(1, 3) for _ in range(m)))
        normals, offsets = list(base.normals), list(base.offsets)
        for _ in range(rng.randint(0, max_facets - len(normals))):
            n = tuple(rng.randint(-3, 3) for _ in range(m))
            if not any(n):
                continue
            normals.append(n)
            offsets.append(rng.randint(1, 6))
        H = HalfSpaces(tuple(normals), tuple(offsets))
        try:
            raw = H.polytope(checked=False)
            verts = raw.vertices
        except PropertyFailure:
            continue
        keep = [s for s in raw.facets if rank([v.point for v in verts if s in v.active]) == m]
        if len(keep) > max_facets:
            continue
        labels = tuple(H.labels()[s] for s in keep)
        eps = H.epsilon()
        if rng.random() < 0.5:
            labels, eps = change_h_basis(labels, eps, random_unimodular(m + 1, rng))
        try:
            P = labelled_polytope(eps, labels)
        except PropertyFailure:
            continue
        if P.lattice.simple:
            return P
    raise RuntimeError("no simple polytope found")


def random_grassmann(rng, max_m=3):
    """Affine presentation: a cone over a Delzant polytope (ell = 1) or a product of simplices."""
    if rng.random() < 0.5:
        H = random_delzant(rng, max_m=max_m, max_ell=3, max_facets=7)
        labels = H.labels()
        torus = TorusData(H.m + 1, labels)
        pair = levi_pair_from_map(identity(H.m + 1), H.epsilon())
        return codim_one_presentation(torus, pair)
    while True:
        dims = tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 2)))
        if sum(dims) <= max_m:
            return product_of_simplices(dims)[2]


def input_polytope(P):
    """The labelled polytope in ``h*`` with labels ``L(e_s)`` behind a presentation."""
    from .exactnum.linalg import mat_vec

    labels = tuple(mat_vec(P.pair.L_map, e) for e in P.torus.labels)
    return labelled_polytope(P.pair.epsilon, labels)


def random_skew(rng, n, ell, lo=-4, hi=4):
    mats = []
    for _ in range(ell):
        w = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                w[i][j] = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
                w[j][i] = -w[i][j]
        mats.append(tuple(map(tuple, w)))
    return SkewPencil(ell, n // 2, tuple(mats))


def congruent(pencil, A):
    """``A^T w_i A`` for each matrix; the Pfaffian scales by ``det A``."""
    At = transpose(A)
    return SkewPencil(pencil.ell, pencil.m, tuple(matmul(matmul(At, w), A) for w in pencil.matrices))

