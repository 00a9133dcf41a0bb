"""``toricctl``: run one read-only analysis on one problem file.

Exit codes: 0 success, 1 input or validation error, 2 a property or
certification failure (the report then carries a witness).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import construct, grassmann, levi, pencil, polytope
from .errors import InputError, PropertyFailure, SchemaError, TooManyFacets
from .problem import dumps, load_problem, rationals, to_json

COMMANDS = ("vertices", "faces", "levi", "delzant", "orbifold", "pencil", "fat", "reslice", "construct", "roundtrip")


def max_facets():
    raw = os.environ.get("TORICCTL_MAX_FACETS", "")
    if not raw:
        return polytope.DEFAULT_MAX_FACETS
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"TORICCTL_MAX_FACETS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("TORICCTL_MAX_FACETS must be positive")
    return value


def parse_lambda(text):
    from .problem import _vector

    return _vector([a.strip() for a in text.split(",")], "--lambda")


# --- serialization of library values ---------------------------------------


def vertex_json(v):
    return {"point": rationals(v.point), "active": sorted(v.active)}


def face_list(lattice):
    return [
        {"facets": sorted(S), "dim": lattice.faces[S].dim, "vertices": list(lattice.faces[S].vertices)}
        for S in lattice.elements
    ]


def pair_json(pair):
    return {
        "L_map": rationals(pair.L_map),
        "epsilon": rationals(pair.epsilon),
        "g": rationals(pair.g),
        "lambda": rationals(pair.lam),
        "u": rationals(pair.u),
        "ell": pair.ell,
        "m": pair.m,
    }


def report_json(r):
    return {
        "pipeline": r.pipeline,
        "status": r.status,
        "facet_count": r.facet_count,
        "m": r.m,
        "ell": r.ell,
        "dim_N": r.dim_N,
        "dim_M": r.dim_M,
        "levi_pair": pair_json(r.pair),
        "positivity_witness": rationals(r.positivity) if r.positivity is not None else None,
        "vertices": [vertex_json(v) for v in r.vertices],
        "faces": [
            {
                "facets": list(f.facets),
                "transversal": f.transversal,
                "free": f.free,
                "snf": list(f.snf),
                "orbifold_group": list(f.orbifold) if f.orbifold is not None else None,
            }
            for f in r.faces
        ],
        "fibres": rationals_deep(r.fibres),
        "uniqueness_known": r.uniqueness,
        "reeb_vertices": [rationals(x) for x in r.reeb],
    }


def rationals_deep(obj):
    from fractions import Fraction

    if isinstance(obj, dict):
        return {k: rationals_deep(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rationals_deep(a) for a in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    return to_json(obj)


# --- commands ----------------------------------------------------------------


def _sliced(problem):
    return levi.slice_polytope(problem.torus(), problem.pair(), max_facets=max_facets())


def cmd_vertices(problem, args):
    P = problem.polytope(max_facets())
    return 0, {"m": P.m, "facets": len(P.labels), "vertices": [vertex_json(v) for v in P.vertices]}


def cmd_faces(problem, args):
    P = problem.polytope(max_facets())
    L = P.lattice
    return 0, {
        "simple": L.simple,
        "witness": vertex_json(L.witness) if L.witness else None,
        "faces": face_list(L),
    }


def cmd_levi(problem, args):
    torus, pair = problem.torus(), problem.pair()
    sliced = levi.slice_polytope(torus, pair, max_facets=max_facets())
    return 0, {
        "levi_pair": pair_json(pair),
        "slice_vertices": [vertex_json(v) for v in sliced.vertices],
        "transversal": [
            {"face": sorted(S), "ok": levi.check_transversality(torus, pair, S, sliced.lattice)}
            for S in sliced.lattice.elements
            if S
        ],
    }


def cmd_delzant(problem, args):
    torus = problem.torus()
    sliced = _sliced(problem)
    check = grassmann.check_labels(torus, sliced.lattice)
    report = {
        "rational": check.rational,
        "delzant": check.delzant,
        "non_lattice_facets": list(check.non_lattice),
        "failures": [{"face": list(S), "snf": list(d)} for S, d in check.failures],
    }
    if not check.delzant:
        witness = report["failures"][0] if check.failures else {"facets": list(check.non_lattice)}
        report["witness"] = witness
        return 2, report
    return 0, report


def cmd_orbifold(problem, args):
    torus, pair = problem.torus(), problem.pair()
    sliced = levi.slice_polytope(torus, pair, max_facets=max_facets())
    face = problem.options.get("face")
    faces = [frozenset(face)] if face is not None else [S for S in sliced.lattice.elements if S]
    rows = []
    for S in faces:
        if S not in sliced.lattice:
            raise levi.UnknownFace(f"{sorted(S)} is not a face", witness={"face": sorted(S)})
        rows.append(
            {
                "face": sorted(S),
                "group": list(grassmann.orbifold_groups(torus, pair, S).factors),
                "torus_stabilizer": list(grassmann.structure_group(torus, S).factors),
            }
        )
    return 0, {"groups": rows}


def cmd_pencil(problem, args):
    pen = problem.skew_pencil()
    poly = pencil.degeneracy_polynomial(pen)
    lc = pencil.classify_lcontact(poly) if not poly.is_zero() else None
    return 0, {
        "ell": pen.ell,
        "m": pen.m,
        "degeneracy_polynomial": str(poly),
        "l_contact": {"form": str(lc[0]), "multiplicity": lc[1]} if lc else None,
    }


def cmd_fat(problem, args):
    pen = problem.skew_pencil()
    samples = args.samples or problem.options.get("samples") or 200
    v = pencil.is_fat(pen, samples=samples)
    return 0, {"verdict": v.verdict, "witness": rationals_deep(v.witness), "reason": v.reason, "samples": v.samples}


def _presentation(problem):
    P = problem.presentation()
    if len(P.torus.labels) > max_facets():
        raise TooManyFacets(f"{len(P.torus.labels)} facets exceed the bound {max_facets()}")
    return P


def cmd_reslice(problem, args):
    P = _presentation(problem)
    lam = parse_lambda(args.lam) if args.lam else problem.options.get("lambda")
    if lam is None:
        raise SchemaError("--lambda: required for reslice", witness={"field": "--lambda"})
    if len(lam) != P.ell:
        raise SchemaError(f"--lambda: expected {P.ell} entries", witness={"field": "--lambda"})
    res = grassmann.reslice(P, lam)
    return 0, {
        "lambda": rationals(lam),
        "vertices": [vertex_json(v) for v in res.sliced.vertices],
        "vertex_map": [{"from": rationals(a), "to": rationals(b)} for a, b in sorted(res.vertex_map.items())],
        "face_lattice_isomorphic": res.lattice_isomorphic,
    }


def _construct(problem):
    if problem.constant is not None:
        return construct.from_grassmann_data(_presentation(problem))
    P = problem.polytope(max_facets()).check()
    torus = problem.torus()
    if torus.labels != levi.TorusData.standard(torus.n).labels:
        raise InputError("the polytope pipeline needs standard torus labels; supply a presentation otherwise")
    return construct.from_labelled_polytope(P, problem.L_map, problem.epsilon)


def cmd_construct(problem, args):
    return 0, report_json(_construct(problem))


def cmd_roundtrip(problem, args):
    report = _construct(problem)
    P = problem.polytope(max_facets())
    res = construct.roundtrip_check(report, P)
    out = {
        "ok": res.ok,
        "missing": [rationals(x) for x in res.missing],
        "extra": [rationals(x) for x in res.extra],
        "mismatched_facets": list(res.facets),
        "face_lattice_match": res.lattice_match,
    }
    return (0 if res.ok else 2), out


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# --- driver --------------------------------------------------------------------


def run(command, path, lam=None, fmt="json", samples=None):
    """Run one command; returns ``(exit_code, report_dict)``."""
    args = argparse.Namespace(lam=lam, format=fmt, samples=samples)
    report = {"command": command, "file": os.path.basename(path)}
    try:
        problem = load_problem(path)
        code, body = HANDLERS[command](problem, args)
        report["result"] = body
        report["status"] = "ok" if code == 0 else "failure"
    except InputError as exc:
        code = 1
        report.update(status="error", error=_error_json(exc))
    except PropertyFailure as exc:
        code = 2
        report.update(status="failure", error=_error_json(exc))
    except (ValueError, ZeroDivisionError) as exc:
        code = 1
        report.update(status="error", error={"type": "InvalidInput", "message": str(exc), "witness": None})
    except OSError as exc:
        code = 1
        report.update(status="error", error={"type": "IOError", "message": str(exc), "witness": None})
    return code, report


def _error_json(exc):
    return {"type": type(exc).__name__, "message": str(exc), "witness": rationals_deep(exc.witness)}


def emit_report(report):
    """Deterministic bytes: sorted keys, rational strings, fixed indentation."""
    return dumps(report).encode("utf-8")


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_inline(item[k])}" for k in sorted(item)))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _flat(v):
    return isinstance(v, list) and all(not isinstance(a, (dict, list)) for a in v)


def _inline(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "(" + ", ".join(_inline(a) for a in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}={_inline(v[k])}" for k in sorted(v)) + "}"
    return str(v)


def build_parser():
    p = argparse.ArgumentParser(prog="toricctl", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", help="comma-separated rationals, e.g. 1,3/2")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--samples", type=int, help="sample budget for fatness with ell >= 3")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.samples is not None and args.samples < 1:
        sys.stderr.write("toricctl: --samples must be positive\n")
        return 1
    code, report = run(args.command, args.file, args.lam, args.format, args.samples)
    if args.format == "text":
        sys.stdout.write("\n".join(render_text(report)) + "\n")
    else:
        sys.stdout.buffer.write(emit_report(report))
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
