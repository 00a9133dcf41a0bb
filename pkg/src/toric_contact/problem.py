"""Problem files: strict JSON ingestion and canonical serialization.

Rationals are strings ``"p"`` or ``"p/q"``; JSON numbers are accepted only
for counts and indices, and any floating-point literal is rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParseError, SchemaError

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
TOP_KEYS = {"schema_version", "torus", "L_map", "epsilon", "presentation", "pencil", "options"}
OPTION_KEYS = {"lambda", "face", "samples"}


class _Float(str):
    """Marker for a float literal, rejected during validation."""


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def parse_text(text):
    try:
        return json.loads(text, parse_float=_Float, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}", witness={"line": exc.lineno}) from exc


# --- validation helpers ----------------------------------------------------


def _fail(path, msg):
    raise SchemaError(f"{path}: {msg}", witness={"field": path})


def _find_floats(obj, path="$"):
    if isinstance(obj, _Float):
        _fail(path, f"floating-point number {obj} is not allowed; use a rational string")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _find_floats(v, f"{path}.{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _find_floats(v, f"{path}[{i}]")


def _rational(x, path):
    if isinstance(x, bool) or not isinstance(x, str) or not _RATIONAL.match(x.strip()):
        _fail(path, f"expected a rational string like \"3\" or \"-1/2\", got {json.dumps(x)}")
    value = Fraction(x.strip())
    return value


def _int(x, path, minimum=None):
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, f"expected an integer, got {json.dumps(x)}")
    if minimum is not None and x < minimum:
        _fail(path, f"must be >= {minimum}")
    return x


def _vector(x, path, length=None):
    if not isinstance(x, list):
        _fail(path, "expected an array")
    if length is not None and len(x) != length:
        _fail(path, f"expected {length} entries, got {len(x)}")
    return tuple(_rational(a, f"{path}[{i}]") for i, a in enumerate(x))


def _matrix(x, path, rows=None, cols=None):
    if not isinstance(x, list) or not x:
        _fail(path, "expected a nonempty array of rows")
    if rows is not None and len(x) != rows:
        _fail(path, f"expected {rows} rows, got {len(x)}")
    width = cols if cols is not None else (len(x[0]) if isinstance(x[0], list) else None)
    return tuple(_vector(r, f"{path}[{i}]", width) for i, r in enumerate(x))


def _obj(x, path, allowed):
    if not isinstance(x, dict):
        _fail(path, "expected an object")
    extra = sorted(set(x) - allowed)
    if extra:
        _fail(f"{path}.{extra[0]}", "unknown field")
    return x


# --- the problem -----------------------------------------------------------


@dataclass
class Problem:
    schema_version: int = SCHEMA_VERSION
    torus_dim: int | None = None
    labels: tuple | None = None
    L_map: tuple | None = None
    epsilon: tuple | None = None
    constant: tuple | None = None
    linear: tuple | None = None
    pencil_ell: int | None = None
    pencil_m: int | None = None
    matrices: tuple | None = None
    options: dict = field(default_factory=dict)

    # builders for the library objects
    def torus(self):
        from .levi import TorusData

        if self.labels is None:
            if self.L_map is None:
                raise SchemaError("$.torus: required for this command", witness={"field": "$.torus"})
            return TorusData.standard(len(self.L_map[0]))
        return TorusData(self.torus_dim, self.labels)

    def require_map(self):
        if self.L_map is None or self.epsilon is None:
            raise SchemaError("$.L_map: L_map and epsilon are required for this command", witness={"field": "$.L_map"})

    def polytope(self, max_facets=None):
        """Polytope in ``h*`` with labels ``L(e_s)``."""
        from .exactnum.linalg import mat_vec
        from .polytope import DEFAULT_MAX_FACETS, AffineSlice, LabelledPolytope

        self.require_map()
        torus = self.torus()
        labels = tuple(mat_vec(self.L_map, e) for e in torus.labels)
        return LabelledPolytope(AffineSlice(self.epsilon), labels, max_facets or DEFAULT_MAX_FACETS)

    def pair(self):
        from .levi import levi_pair_from_map

        self.require_map()
        return levi_pair_from_map(self.L_map, self.epsilon)

    def presentation(self):
        from .grassmann import GrassmannPresentation

        if self.constant is None:
            raise SchemaError("$.presentation: required for this command", witness={"field": "$.presentation"})
        torus, pair = self.torus(), self.pair()
        if pair.ell != len(self.constant[0]):
            raise SchemaError(
                f"$.presentation.constant: expected {pair.ell} columns (dim g), got {len(self.constant[0])}",
                witness={"field": "$.presentation.constant"},
            )
        P = GrassmannPresentation(torus, pair, self.constant, self.linear)
        return _recognise(P)

    def skew_pencil(self):
        from .pencil import SkewPencil

        if self.matrices is None:
            raise SchemaError("$.pencil: required for this command", witness={"field": "$.pencil"})
        return SkewPencil(self.pencil_ell, self.pencil_m, self.matrices)

    # serialization
    def to_dict(self):
        out = {"schema_version": self.schema_version}
        if self.labels is not None:
            out["torus"] = {"dim": self.torus_dim, "labels": rationals(self.labels)}
        if self.L_map is not None:
            out["L_map"] = rationals(self.L_map)
        if self.epsilon is not None:
            out["epsilon"] = rationals(self.epsilon)
        if self.constant is not None:
            out["presentation"] = {"constant": rationals(self.constant), "linear": rationals(self.linear)}
        if self.matrices is not None:
            out["pencil"] = {"ell": self.pencil_ell, "m": self.pencil_m, "matrices": rationals(self.matrices)}
        if self.options:
            opts = dict(self.options)
            if "lambda" in opts:
                opts["lambda"] = rationals(opts["lambda"])
            if "face" in opts:
                opts["face"] = sorted(int(s) for s in opts["face"])
            out["options"] = opts
        return out


def _recognise(P):
    """Tag a presentation equal to a standard builder's output with its kind."""
    from dataclasses import replace

    from .grassmann import block_presentation, codim_one_presentation

    for kind, build in (("ell1", codim_one_presentation), ("block", block_presentation)):
        try:
            Q = build(P.torus, P.pair)
        except Exception:
            continue
        if (Q.constant, Q.linear) == (P.constant, P.linear):
            return replace(P, kind=kind)
    return P


def parse_problem(text):
    raw = parse_text(text)
    return validate(raw)


def load_problem(path):
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


def validate(raw):
    _find_floats(raw)
    _obj(raw, "$", TOP_KEYS)
    if "schema_version" not in raw:
        _fail("$.schema_version", "missing")
    if raw["schema_version"] != SCHEMA_VERSION:
        _fail("$.schema_version", f"unsupported version {raw['schema_version']!r}")
    p = Problem()
    n = None
    if "torus" in raw:
        t = _obj(raw["torus"], "$.torus", {"dim", "labels"})
        if "dim" not in t or "labels" not in t:
            _fail("$.torus", "needs dim and labels")
        n = _int(t["dim"], "$.torus.dim", 1)
        p.torus_dim = n
        p.labels = _matrix(t["labels"], "$.torus.labels", cols=n)
        for i, e in enumerate(p.labels):
            if not any(e):
                _fail(f"$.torus.labels[{i}]", "labels must be nonzero")
    if ("L_map" in raw) != ("epsilon" in raw):
        _fail("$.L_map" if "L_map" not in raw else "$.epsilon", "L_map and epsilon go together")
    if "L_map" in raw:
        p.L_map = _matrix(raw["L_map"], "$.L_map", cols=n)
        n = n or len(p.L_map[0])
        p.epsilon = _vector(raw["epsilon"], "$.epsilon", len(p.L_map))
        if not any(p.epsilon):
            _fail("$.epsilon", "must be nonzero")
    if "presentation" in raw:
        pr = _obj(raw["presentation"], "$.presentation", {"constant", "linear"})
        if p.L_map is None:
            _fail("$.presentation", "needs L_map and epsilon")
        if "constant" not in pr or "linear" not in pr:
            _fail("$.presentation", "needs constant and linear")
        p.constant = _matrix(pr["constant"], "$.presentation.constant", rows=n)
        ell = len(p.constant[0])
        lin = pr["linear"]
        if not isinstance(lin, list) or len(lin) != n:
            _fail("$.presentation.linear", f"expected {n} blocks")
        p.linear = tuple(_matrix(b, f"$.presentation.linear[{k}]", rows=n, cols=ell) for k, b in enumerate(lin))
    if "pencil" in raw:
        pc = _obj(raw["pencil"], "$.pencil", {"ell", "m", "matrices"})
        for key in ("ell", "m", "matrices"):
            if key not in pc:
                _fail(f"$.pencil.{key}", "missing")
        p.pencil_ell = _int(pc["ell"], "$.pencil.ell", 1)
        p.pencil_m = _int(pc["m"], "$.pencil.m", 0)
        mats = pc["matrices"]
        if not isinstance(mats, list) or len(mats) != p.pencil_ell:
            _fail("$.pencil.matrices", f"expected {p.pencil_ell} matrices")
        size = 2 * p.pencil_m
        p.matrices = tuple(
            _matrix(w, f"$.pencil.matrices[{i}]", rows=size, cols=size) if size else ()
            for i, w in enumerate(mats)
        )
    if "options" in raw:
        o = _obj(raw["options"], "$.options", OPTION_KEYS)
        opts = {}
        if "lambda" in o:
            opts["lambda"] = _vector(o["lambda"], "$.options.lambda")
        if "face" in o:
            if not isinstance(o["face"], list):
                _fail("$.options.face", "expected an array of facet indices")
            k = len(p.labels) if p.labels is not None else (len(p.L_map[0]) if p.L_map else None)
            face = []
            for i, s in enumerate(o["face"]):
                _int(s, f"$.options.face[{i}]", 0)
                if k is not None and s >= k:
                    _fail(f"$.options.face[{i}]", f"facet index {s} out of range")
                face.append(s)
            opts["face"] = tuple(sorted(set(face)))
        if "samples" in o:
            opts["samples"] = _int(o["samples"], "$.options.samples", 1)
        p.options = opts
    return p


# --- canonical JSON --------------------------------------------------------


def to_json(obj):
    """Convert library values to JSON-ready data with rational strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, (frozenset, set)):
        return sorted(to_json(a) for a in obj)
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(a) for a in obj]
    if hasattr(obj, "_asdict"):
        return to_json(obj._asdict())
    return str(obj)


def rationals(obj):
    """Like :func:`to_json` but integers in numeric slots become strings too."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(Fraction(obj))
    if isinstance(obj, (list, tuple)):
        return [rationals(a) for a in obj]
    return to_json(obj)


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit_problem(problem):
    return dumps(problem.to_dict())
