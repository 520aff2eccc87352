"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage or input-format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .braids import (
    BraidError,
    BraidParseError,
    alexander_of_closure,
    alexander_turks_head,
    conway_turks_head,
    parse_braid,
    turks_head_roots,
)
from .exact import (
    AlgebraError,
    GaussianRational,
    LaurentPolynomial,
    PolyParseError,
    format_rational,
    lucas,
    normalize_alexander,
    parse_poly,
)
from .graphs import (
    GraphError,
    GraphFormatError,
    dominance,
    gershgorin_certificate,
    inertia,
    parse_graph,
    reduced_laplacian,
    spanning_tree_count,
)
from .magnus import (
    LongitudeFormatError,
    MagnusError,
    first_nontrivial_degree,
    nonzero_invariants,
    parse_longitudes,
)
from .obstructions import ObstructionError, fox_milnor_test, independence_certificate
from .turks_head import (
    LemmaCheckError,
    TurksHeadError,
    cha_alexander,
    det_turks_head,
    lemma_det_int_report,
)


class UsageError(Exception):
    pass


FORMAT_ERRORS = (PolyParseError, BraidParseError, GraphFormatError, LongitudeFormatError, UsageError)
DOMAIN_ERRORS = (
    AlgebraError,
    BraidError,
    GraphError,
    MagnusError,
    ObstructionError,
    TurksHeadError,
    LemmaCheckError,
)


def _plain(x: Any) -> Any:
    """Convert results to JSON-ready values; rationals become ``p/q`` strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, LaurentPolynomial):
        return str(x)
    if isinstance(x, GaussianRational):
        return str(x)
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, complex):
        return [repr(x.real), repr(x.imag)]
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _fmt_text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt_text(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt_text(v)}" for k, v in sorted(value.items())) + "}"
    return str(value)


def render(report: dict, as_json: bool) -> str:
    report = _plain(report)
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = [f"subcommand: {report['subcommand']}"]
    for k, v in sorted(report["inputs"].items()):
        lines.append(f"input.{k}: {_fmt_text(v)}")
    for k, v in report["results"].items():
        lines.append(f"{k}: {_fmt_text(v)}")
    lines.append(f"status: {report['status']}")
    return "\n".join(lines) + "\n"


# Subcommand handlers return (inputs, results).


def _int(text: str, what: str = "n") -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def cmd_turks(args) -> tuple[dict, dict]:
    n = _int(args.n)
    inputs = {"n": n}
    if args.action == "det":
        d = det_turks_head(n)
        expected = lucas(2 * n) - 2
        return inputs, {"det": d, "lucas_2n_minus_2": expected, "lucas_check": d == expected}
    if args.action == "lemma":
        return inputs, lemma_det_int_report(n).as_dict()
    if args.action == "alexander":
        delta = alexander_turks_head(n)
        return inputs, {"alexander": delta, "det": abs(delta.evaluate(-1)).numerator}
    if args.action == "conway":
        nabla = conway_turks_head(n)
        return inputs, {"conway": nabla, "det": nabla.evaluate(GaussianRational(0, -2)).exact_abs()}
    if args.action == "roots":
        roots = turks_head_roots(n)
        delta = alexander_turks_head(n)
        resid = max(abs(delta.evaluate_complex(r)) for r in roots)
        return inputs, {"roots": roots, "count": len(roots), "max_residual": float(f"{resid:.3e}")}
    raise UsageError(f"unknown turks action {args.action!r}")


def cmd_braid(args) -> tuple[dict, dict]:
    w = parse_braid(args.word)
    delta = alexander_of_closure(w)
    return {"word": str(w)}, {"alexander": delta, "det": abs(delta.evaluate(-1)).numerator}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_graph(args) -> tuple[dict, dict]:
    g = parse_graph(_read(args.file))
    inputs = {"file": args.file, "vertices": g.order, "edges": len(g.edges())}
    pivot = args.pivot if args.pivot is not None else g.vertices[0]
    if args.action == "count":
        return inputs, {"pivot": pivot, "spanning_tree_count": spanning_tree_count(g, pivot)}
    m = reduced_laplacian(g, pivot)
    if args.action == "inertia":
        pos, neg, zero = inertia(m)
        return inputs, {"pivot": pivot, "inertia": [pos, neg, zero]}
    if args.action == "gershgorin":
        labels = [v for v in g.vertices if v != pivot]
        disks = [
            {"vertex": v, "center": d.center, "radius": d.radius}
            for v, d in zip(labels, gershgorin_certificate(m))
        ]
        return inputs, {"pivot": pivot, "disks": disks, "dominance": dominance(m)}
    raise UsageError(f"unknown graph action {args.action!r}")


def cmd_obstruct(args) -> tuple[dict, dict]:
    if args.action == "cha":
        n = _int(args.n)
        if n < 1:
            raise UsageError("n must be positive")
        delta = cha_alexander(n)
        inputs = {"n": n}
        tag = f"K_{n}"
    else:
        if (args.braid is None) == (args.poly is None):
            raise UsageError("fox-milnor needs exactly one of --braid or --poly")
        if args.braid is not None:
            delta = alexander_of_closure(parse_braid(args.braid))
            inputs = {"braid": args.braid}
        else:
            delta = normalize_alexander(parse_poly(args.poly, var="t"))
            inputs = {"poly": args.poly}
        tag = ""
    v = fox_milnor_test(delta, tag)
    return inputs, {
        "alexander": delta,
        "delta_is_square": v.delta_is_square,
        "det": v.det,
        "det_is_square": v.det_is_square,
        "witness": v.witness,
        "obstructed": v.obstructed,
    }


def cmd_independence(args) -> tuple[dict, dict]:
    try:
        family = [int(x) for x in args.family.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"family must be comma-separated integers, got {args.family!r}") from None
    cert = independence_certificate(family)
    return {"family": family}, {
        "pairwise_coprime": cert.pairwise_coprime,
        "non_coprime_pairs": [list(p) for p in cert.non_coprime_pairs],
        "alexander_pairwise_coprime": cert.alexander_pairwise_coprime,
        "alexander_common_factors": [list(p) for p in cert.alexander_common_factors],
        "det_int_ok": cert.det_int_ok,
        "eta_denominators_nonconstant": cert.eta_denominators_nonconstant,
        "det_int_reports": [r.as_dict() for r in cert.det_int_reports],
        "failures": list(cert.failures),
        "conclusion": cert.conclusion,
    }


def cmd_milnor(args) -> tuple[dict, dict]:
    longitudes = parse_longitudes(_read(args.file))
    d = _int(args.degree, "degree")
    if d < 1:
        raise UsageError("degree must be at least 1")
    inputs = {"file": args.file, "degree": d, "strands": len(longitudes)}
    if args.action == "first-degree":
        return inputs, {"first_nontrivial_degree": first_nontrivial_degree(longitudes, d)}
    invs = nonzero_invariants(longitudes, d)
    return inputs, {
        "invariants": [{"indices": "".join(str(i) if i < 10 else f"({i})" for i in k), "value": v} for k, v in invs],
        "first_nontrivial_degree": min((len(k) - 1 for k, _ in invs), default=None),
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="concordance-lab", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("turks", help="Turk's head knots Th(3, n)", parents=[common])
    t.add_argument("action", choices=["det", "lemma", "alexander", "conway", "roots"])
    t.add_argument("n")
    t.set_defaults(func=cmd_turks)

    b = sub.add_parser("braid", help="braid closures", parents=[common])
    b.add_argument("action", choices=["alexander"])
    b.add_argument("word")
    b.set_defaults(func=cmd_braid)

    g = sub.add_parser("graph", help="weighted graph files", parents=[common])
    g.add_argument("action", choices=["count", "inertia", "gershgorin"])
    g.add_argument("file")
    g.add_argument("--pivot", help="vertex whose row and column are removed (default: first)")
    g.set_defaults(func=cmd_graph)

    o = sub.add_parser("obstruct", help="squareness obstructions", parents=[common])
    o.add_argument("action", choices=["fox-milnor", "cha"])
    o.add_argument("n", nargs="?")
    o.add_argument("--braid")
    o.add_argument("--poly")
    o.set_defaults(func=cmd_obstruct)

    i = sub.add_parser("independence", help="independence certificate for a family", parents=[common])
    i.add_argument("family", help="comma-separated odd indices, e.g. 5,7,11,13")
    i.set_defaults(func=cmd_independence)

    m = sub.add_parser("milnor", help="Milnor invariants from longitude files", parents=[common])
    m.add_argument("action", nargs="?", choices=["invariants", "first-degree"], default="invariants")
    m.add_argument("--file", required=True)
    m.add_argument("--degree", default="8")
    m.set_defaults(func=cmd_milnor)
    return p


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command == "obstruct" and args.action == "cha" and args.n is None:
            raise UsageError("obstruct cha needs n")
        if args.command == "obstruct" and args.action == "fox-milnor" and args.n is not None:
            raise UsageError(f"unexpected argument {args.n!r}")
        inputs, results = args.func(args)
    except FORMAT_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=err)
        return 1
    report = {
        "subcommand": " ".join(
            x for x in (args.command, getattr(args, "action", None)) if x
        ),
        "inputs": inputs,
        "results": results,
        "status": "ok",
    }
    out.write(render(report, args.json))
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
