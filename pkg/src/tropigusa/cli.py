"""Command-line front end.

Every subcommand reads one JSON document (``--input``), validates it against
the schema shipped in ``tropigusa/schemas`` and prints a report.  JSON output
is deterministic: sorted keys and exact rationals written as strings.

Exit status: 0 on success, 1 when the request has no mathematical answer
(a domain error, reported as ``{"error": {"code": ..., "message": ...}}`` on
stderr), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .errors import InputError, ParseError, SchemaError, TropigusaError
from .igusa import QuinticModel, igusa_from_quintic, sextic_to_quintic, trop_igusa
from .metgraph import MetricGraph, graph_jacobian, spanning_tree_count
from .redtype import INTERPRETATIONS, classify, epsilon, thickness, w_table
from .torsion import (
    CycleDivisorSpec,
    Genus2TorsionConfig,
    elliptic_trop,
    genus2_trop,
    nonzero_slope_scan,
)
from .tropfun import breakpoints_csv
from .valfield import ValuedField

COMMANDS = ("invariants", "classify", "skeleton", "graphjac", "tropcycle", "tropgenus2", "scan")
_SCHEMA = {
    "invariants": "curve",
    "classify": "curve",
    "skeleton": "curve",
    "graphjac": "graph",
    "tropcycle": "tropcycle",
    "tropgenus2": "tropgenus2",
    "scan": "scan",
}
_FORMATS = {
    "skeleton": {"json", "dot"},
    "graphjac": {"json", "dot"},
    "tropcycle": {"json", "csv"},
    "tropgenus2": {"json", "csv"},
}
_UNIT_COMMANDS = {"skeleton", "graphjac"}


def load_schema(name: str) -> dict:
    text = resources.files("tropigusa").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def _validate(command: str, doc) -> None:
    try:
        jsonschema.validate(doc, load_schema(_SCHEMA[command]))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{command} input at {where}: {exc.message}") from None


def _read_input(path: str | None):
    if path is None:
        raise InputError("--input is required for this command")
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _rational(text, what: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what}: {text!r} is not a rational number") from None


# ---------------------------------------------------------------------------
# curves


def _field(doc) -> ValuedField:
    spec = doc["field"]
    return ValuedField(spec["kind"], spec.get("p", 0))


def _model(doc):
    K = _field(doc)
    coeffs = [K(str(c)) for c in doc["coeffs"]]
    if len(coeffs) == 7:
        if "root" not in doc:
            raise SchemaError("a sextic needs a rational 'root' to move to infinity")
        return K, sextic_to_quintic(K, coeffs, K(str(doc["root"]))), True
    if "root" in doc:
        raise SchemaError("'root' only applies to sextic input (seven coefficients)")
    return K, QuinticModel.from_monomial(K, coeffs), False


def _curve_pipeline(doc):
    K, q, from_sextic = _model(doc)
    J = igusa_from_quintic(q)
    tv = trop_igusa(J)
    eps = epsilon(K.residue_char)
    base = {
        "field": K.to_json(),
        "quintic": {
            "monomial": [str(c) for c in q.monomial()],
            "alternating": [str(c) for c in q.v],
            "from_sextic": from_sextic,
        },
    }
    return K, q, J, tv, eps, base


def cmd_invariants(doc, args) -> dict:
    _, _, J, tv, eps, out = _curve_pipeline(doc)
    out["invariants"] = {k: str(v) for k, v in J.as_dict().items()}
    out["tropical"] = {k: str(v) for k, v in tv.as_dict().items()}
    out["epsilon"] = eps
    return out


def _classify_report(doc):
    _, _, _, tv, eps, out = _curve_pipeline(doc)
    w = w_table(tv, eps)
    verdict = classify(w)
    out["tropical"] = {k: str(v) for k, v in tv.as_dict().items()}
    out["epsilon"] = eps
    out["w_table"] = {k: str(v) for k, v in w.as_dict().items()}
    out.update(verdict.to_json())
    out["interpretations"] = list(INTERPRETATIONS)
    return out, verdict, tv, eps


def cmd_classify(doc, args) -> dict:
    return _classify_report(doc)[0]


def cmd_skeleton(doc, args):
    out, verdict, tv, eps = _classify_report(doc)
    s = thickness(verdict, tv, eps)
    out["skeleton"] = s.to_json()
    unit = None if args.unit is None else _rational(args.unit, "--unit")
    out["skeleton"]["graph_jacobian"] = list(graph_jacobian(s.dual_graph, unit).invariant_factors)
    return out, s.dual_graph.to_dot()


# ---------------------------------------------------------------------------
# graphs and torsion


def _graph(doc) -> MetricGraph:
    verts = []
    for v in doc["vertices"]:
        verts.append(v if isinstance(v, str) else (v["name"], v.get("genus", 0)))
    edges = [(a, b, _rational(length, "edge length")) for a, b, length in doc["edges"]]
    if any(length <= 0 for _, _, length in edges):
        raise SchemaError("edge lengths must be positive")
    if len({v if isinstance(v, str) else v[0] for v in verts}) != len(verts):
        raise SchemaError("vertex names must be distinct")
    return MetricGraph.build(verts, edges)


def cmd_graphjac(doc, args):
    G = _graph(doc)
    raw = args.unit if args.unit is not None else doc.get("unit")
    unit = None if raw is None else _rational(raw, "unit")
    jac = graph_jacobian(G, unit)
    out = {
        "graph": G.to_json(),
        "genus": G.genus,
        "betti_number": G.betti_number,
        "invariant_factors": list(jac.invariant_factors),
        "group": str(jac),
        "order": jac.order,
        "spanning_trees": spanning_tree_count(G, unit),
    }
    return out, G.to_dot()


def cmd_tropcycle(doc, args):
    N = doc["N"]
    specs = []
    for d in doc["divisors"]:
        if isinstance(d, dict):
            specs.append(CycleDivisorSpec.from_points(N, d))
        else:
            specs.append(CycleDivisorSpec(N, tuple(d)))
    rep = elliptic_trop(N, specs)
    named = [(f"F{k + 1}", F) for k, F in enumerate(rep.functions)]
    return rep.to_json(), breakpoints_csv(named, list(range(N)))


def cmd_tropgenus2(doc, args):
    kw = {}
    if "e0" in doc or "e2" in doc:
        kw = {
            "e0": _rational(doc.get("e0"), "e0") if "e0" in doc else None,
            "e2": _rational(doc.get("e2"), "e2") if "e2" in doc else None,
        }
    cfg = Genus2TorsionConfig(doc["e1"], doc["i"], doc["j"], **kw)
    rep = genus2_trop(cfg, check=doc.get("check", True))
    return rep.to_json(), rep.breakpoints_csv()


def cmd_scan(doc, args) -> dict:
    return nonzero_slope_scan(doc["e1_max"]).to_json()


_HANDLERS = {
    "invariants": cmd_invariants,
    "classify": cmd_classify,
    "skeleton": cmd_skeleton,
    "graphjac": cmd_graphjac,
    "tropcycle": cmd_tropcycle,
    "tropgenus2": cmd_tropgenus2,
    "scan": cmd_scan,
}
_EXT = {"json": "json", "dot": "dot", "csv": "csv"}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tropigusa",
        description="Genus-2 reduction types from tropical Igusa invariants, "
        "graph Jacobians and torsion tropicalizations, in exact arithmetic.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "invariants": "Igusa J/I invariants and their valuations",
        "classify": "stable reduction type from the w-table",
        "skeleton": "thicknesses, component group and dual graph",
        "graphjac": "invariant factors of the Jacobian of a metric graph",
        "tropcycle": "tropicalize an elliptic N-cycle from principal divisors",
        "tropgenus2": "genus-2 3-torsion tropicalization on the first cycle",
        "scan": "exhaustive nonzero-slope check for genus-2 configurations",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("--input", "-i", help="JSON input file ('-' for stdin)")
        sp.add_argument("--out", "-o", help="directory to write the report files into")
        sp.add_argument("--format", "-f", choices=sorted(_EXT), default="json")
        sp.add_argument("--unit", help="subdivision unit, an exact rational such as 1/2")
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cmd = args.command
    try:
        if args.format != "json" and args.format not in _FORMATS.get(cmd, ()):
            raise InputError(f"{cmd} has no {args.format} output")
        if args.unit is not None and cmd not in _UNIT_COMMANDS:
            raise InputError("--unit applies to skeleton and graphjac only")
        if cmd == "scan" and args.input is None:
            doc = {"e1_max": 30}
        else:
            doc = _read_input(args.input)
        _validate(cmd, doc)
        result = _HANDLERS[cmd](doc, args)
    except TropigusaError as exc:
        sys.stderr.write(dumps({"error": exc.to_dict()}))
        return exc.exit_status

    report, extra = result if isinstance(result, tuple) else (result, None)
    texts = {"json": dumps(report)}
    if extra is not None:
        texts["dot" if cmd in ("skeleton", "graphjac") else "csv"] = extra
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for fmt, text in texts.items():
            (outdir / f"{cmd}.{_EXT[fmt]}").write_text(text)
    sys.stdout.write(texts[args.format])
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
