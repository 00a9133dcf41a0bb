"""Sparse multivariate polynomials with exact rational coefficients."""

from fractions import Fraction
from itertools import product


class MultiPoly:
    """Polynomial in ``nvars`` variables ``t1 .. t_nvars``.

    Terms map exponent tuples to nonzero Fractions.  Instances are
    treated as immutable; every operation returns a new polynomial.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, i, nvars):
        """The variable ``t_{i+1}`` (0-based index ``i``)."""
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def linear_form(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self):
        return not self._terms

    def degree(self):
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self._terms}) <= 1

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for (e1, c1), (e2, c2) in product(self._terms.items(), other._terms.items()):
            e = tuple(a + b for a, b in zip(e1, e2))
            terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("nonnegative integer powers only")
        result = MultiPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point):
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def derivative(self, i):
        terms = {}
        for exps, c in self._terms.items():
            if exps[i]:
                e = list(exps)
                e[i] -= 1
                terms[tuple(e)] = c * exps[i]
        return MultiPoly(self.nvars, terms)

    def restrict(self, var, fixed):
        """Univariate coefficients (low first) in ``var``, others fixed.

        ``fixed`` gives values for every variable; the entry at ``var``
        is ignored.
        """
        coeffs = {}
        for exps, c in self._terms.items():
            term = c
            for j, (x, e) in enumerate(zip(fixed, exps)):
                if j != var and e:
                    term *= Fraction(x) ** e
            coeffs[exps[var]] = coeffs.get(exps[var], 0) + term
        top = max(coeffs, default=-1)
        out = [Fraction(coeffs.get(k, 0)) for k in range(top + 1)]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.items():
            mono = "*".join(
                f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out
