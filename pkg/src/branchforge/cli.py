"""Command-line front end.

Every subcommand produces one report envelope::

    {"command", "input", "verdict", "data", "witness", "timing_ms"}

printed either as JSON (``--json``, keys sorted, rationals as "p/q") or as
plain text.  Exit codes: 0 for success or a positive verdict, 1 for a
negative verdict, 2 for input and scope errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .algebra import Poly, format_rational
from .deform import build_msqh, genericity_check, parse_msqh_spec
from .equising import cri1_equisingular, cri2_check, jacobian_polygon, prepare_family
from .errors import BranchforgeError
from .irreducible import IrreducibilityReport, abhyankar_irreducible
from .milnor import milnor_lattice, milnor_resultant, milnor_semigroup
from .parser import parse
from .puiseux import char_exponents, newton_puiseux
from .semigroup import (SemigroupData, char_from_generators, monomial_curve_equations,
                        validate_plane_semigroup)
from .toric import ledger_from_char, ledger_with_thetas, strict_transform_chain

EXIT = {"yes": 0, "no": 1, "error": 2}


class Report(dict):
    """The envelope; a plain dict so it serializes directly."""

    @classmethod
    def make(cls, command: str, text: str, verdict: str, data: dict | None = None,
             witness: dict | None = None) -> Report:
        return cls(command=command, input=text, verdict=verdict, data=data or {},
                   witness=witness, timing_ms=None)


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if isinstance(obj, Fraction):
        return int(obj) if obj.denominator == 1 else format_rational(obj)
    if isinstance(obj, Poly):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return _jsonable(obj.as_dict())
    return str(obj)


def to_json(report: Report) -> str:
    return json.dumps(_jsonable(report), sort_keys=True)


def to_text(report: Report) -> str:
    lines = [f"{report['command']}: {report['input']}", f"verdict: {report['verdict']}"]
    for key in sorted(report["data"]):
        lines.append(f"{key}: {json.dumps(_jsonable(report['data'][key]), sort_keys=True)}")
    if report["witness"]:
        lines.append(f"witness: {json.dumps(_jsonable(report['witness']), sort_keys=True)}")
    if report["timing_ms"] is not None:
        lines.append(f"timing_ms: {report['timing_ms']}")
    return "\n".join(lines)


# input handling -----------------------------------------------------------

def _branch_input(text: str) -> Poly:
    """Parse a lambda-free polynomial and bring it into Weierstrass shape when possible."""
    f = parse(text)
    if f.has_lambda():
        raise BranchforgeError("this command expects a polynomial in x and y only")
    if f.is_monic_y():
        return f
    return prepare_family(f)


def _irreducibility(f: Poly) -> IrreducibilityReport:
    report = abhyankar_irreducible(f)
    if report.verdict == "error":
        raise BranchforgeError(report.message or "irreducibility check failed")
    return report


def _witness(report: IrreducibilityReport) -> dict | None:
    return report.witness.as_dict() if report.witness else None


# subcommands ---------------------------------------------------------------

def cmd_semigroup(text: str, args) -> Report:
    if re.fullmatch(r"\s*\d+(\s*,\s*\d+)*\s*", text):
        sg = SemigroupData(tuple(int(v) for v in text.split(",")))
        check = validate_plane_semigroup(sg)
        if not check:
            return Report.make("semigroup", text, "no", {"semigroup": list(sg.gens)},
                               {"condition": "invalid-semigroup", "reason": check.witness})
        verdict, witness = "yes", None
    else:
        report = _irreducibility(_branch_input(text))
        if report.verdict != "yes":
            return Report.make("semigroup", text, "no", {}, _witness(report))
        sg, verdict, witness = report.semigroup, "yes", None
    c = char_from_generators(sg)
    data = {
        "semigroup": list(sg.gens),
        "char": {"n": c.n, "b": list(c.b), "e": list(c.e), "nseq": list(c.nseq), "mseq": list(c.mseq)},
        "conductor": sg.conductor(),
        "monomial_curve": [str(eq) for eq in monomial_curve_equations(sg)],
    }
    return Report.make("semigroup", text, verdict, data, witness)


def cmd_irreducible(text: str, args) -> Report:
    report = _irreducibility(_branch_input(text))
    data = {
        "prepared": report.prepared,
        "Bbar": list(report.state.Bbar),
        "E": list(report.state.E),
        "N": list(report.state.N),
        "roots": list(report.state.roots),
        "polygons": [[list(v) for v in p.vertices] for p in report.polygons],
    }
    if report.semigroup is not None:
        data["semigroup"] = list(report.semigroup.gens)
    return Report.make("irreducible", text, report.verdict, data, _witness(report))


def cmd_approx_roots(text: str, args) -> Report:
    report = _irreducibility(_branch_input(text))
    roots = list(report.state.roots)
    data = {"roots": roots, "degrees": [r.deg_y() for r in roots]}
    return Report.make("approx-roots", text, report.verdict, data, _witness(report))


def cmd_milnor(text: str, args) -> Report:
    f = _branch_input(text)
    mu_res = milnor_resultant(f)
    report = _irreducibility(f)
    data = {"resultant": mu_res, "semigroup": None, "lattice": None, "agreement": None}
    if report.verdict == "yes":
        c = char_from_generators(report.semigroup)
        data["semigroup"] = milnor_semigroup(report.semigroup)
        data["lattice"] = milnor_lattice(c)
        data["agreement"] = mu_res == data["semigroup"] == data["lattice"]
    verdict = "no" if data["agreement"] is False else "yes"
    return Report.make("milnor", text, verdict, data)


def cmd_jacobian_polygon(text: str, args) -> Report:
    f = parse(text)
    if not f.is_monic_y():
        f = prepare_family(f)
    poly = jacobian_polygon(f)
    return Report.make("jacobian-polygon", text, "yes", {"polygon": [list(v) for v in poly.vertices]})


def cmd_equisingular(text: str, args) -> Report:
    f = prepare_family(parse(text))
    methods = ["cri1", "cri2"] if args.method == "both" else [args.method]
    runners = {"cri1": cri1_equisingular, "cri2": cri2_check}
    reports = {m: runners[m](f) for m in methods}
    data = {"prepared": f}
    for m, r in reports.items():
        data[m] = {"verdict": r.verdict, "trace": [list(t) for t in r.trace], "note": r.note, **r.data}
    verdicts = [r.verdict for r in reports.values()]
    if "error" in verdicts and "no" not in verdicts:
        note = next(r.note for r in reports.values() if r.verdict == "error")
        raise BranchforgeError(note or "equisingularity check failed")
    verdict = "no" if "no" in verdicts else "yes"
    witness = next((r.witness for r in reports.values() if r.verdict == "no"), None)
    return Report.make("equisingular", text, verdict, data, witness)


def cmd_resolve(text: str, args) -> Report:
    f = _branch_input(text)
    report = _irreducibility(f)
    if report.verdict != "yes":
        return Report.make("resolve", text, "no", {}, _witness(report))
    ledger = ledger_from_char(char_from_generators(report.semigroup))
    ledger = ledger_with_thetas(ledger, strict_transform_chain(report.prepared, ledger))
    rows = [{"j": l.j, "n": l.n, "m": l.m, "c": l.c, "d": l.d, "theta": l.theta} for l in ledger.levels]
    return Report.make("resolve", text, "yes", {"ledger": rows, "semigroup": list(ledger.gens.gens)})


def cmd_msqh(text: str, args) -> Report:
    if not args.spec:
        raise BranchforgeError("msqh needs --spec FILE")
    spec = parse_msqh_spec(Path(args.spec).read_text())
    report = _irreducibility(_branch_input(text))
    if report.verdict != "yes":
        raise BranchforgeError("msqh needs an irreducible branch")
    c = char_from_generators(report.semigroup)
    deformation = build_msqh(report.prepared, c, spec)
    gen = genericity_check(spec, c)
    data = {
        "deformation": str(deformation),
        "terms": [{"t": list(w), "poly": p} for w, p in sorted(deformation.terms.items())],
        "generic": gen.generic,
        "levels": [{"j": l.j, "q": list(l.coefficients), "square_free": l.square_free} for l in gen.levels],
    }
    witness = None
    if not gen.generic:
        bad = next(l for l in gen.levels if not l.square_free)
        witness = {"condition": "repeated-root", "level": bad.j, "q": list(bad.coefficients)}
    return Report.make("msqh", text, "yes" if gen.generic else "no", data, witness)


def cmd_puiseux(text: str, args) -> Report:
    f = _branch_input(text)
    params = newton_puiseux(f, args.trunc)
    rows = []
    for p in params:
        row = {"n": p.n, "exact": p.exact, "trunc": p.trunc,
               "terms": [[e, c] for e, c in sorted(p.coeffs.items())]}
        try:
            c = char_exponents(p)
            row["char"] = [c.n, *c.b]
        except BranchforgeError:
            row["char"] = None
        rows.append(row)
    verdict = "yes" if len(params) == 1 else "no"
    return Report.make("puiseux", text, verdict, {"branches": rows, "count": len(params)})


COMMANDS: dict[str, Callable] = {
    "semigroup": cmd_semigroup,
    "approx-roots": cmd_approx_roots,
    "irreducible": cmd_irreducible,
    "milnor": cmd_milnor,
    "jacobian-polygon": cmd_jacobian_polygon,
    "equisingular": cmd_equisingular,
    "resolve": cmd_resolve,
    "msqh": cmd_msqh,
    "puiseux": cmd_puiseux,
}


def analyze(command: str, text: str, args) -> Report:
    """Run one analysis; errors become an envelope with verdict "error"."""
    start = time.perf_counter()
    try:
        report = COMMANDS[command](text, args)
    except (BranchforgeError, OSError) as exc:
        report = Report.make(command, text, "error", {"message": str(exc)})
    if getattr(args, "timing", False):
        report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON envelope")
    common.add_argument("--timing", action="store_true", help="record wall-clock time in timing_ms")
    common.add_argument("--batch", metavar="FILE", help="analyze every non-empty line of FILE")
    common.add_argument("--workers", type=int, default=4, help="threads used in batch mode")

    parser = argparse.ArgumentParser(prog="branchforge", description="Plane branch singularity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        p.add_argument("expr", nargs="?", help="polynomial expression (x, y, lambda)")
        if name == "equisingular":
            p.add_argument("--method", choices=("cri1", "cri2", "both"), default="cri1")
        if name == "msqh":
            p.add_argument("--spec", metavar="FILE")
        if name == "puiseux":
            p.add_argument("--trunc", type=int, default=None)
    return parser


def _batch_inputs(path: str) -> list[str]:
    lines = Path(path).read_text().splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.batch:
        try:
            inputs = _batch_inputs(args.batch)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    elif args.expr is not None:
        inputs = [args.expr]
    else:
        parser.error("an expression or --batch FILE is required")
    if len(inputs) == 1:
        reports = [analyze(args.command, inputs[0], args)]
    else:
        with ThreadPoolExecutor(max_workers=max(args.workers, 1)) as pool:
            reports = list(pool.map(lambda t: analyze(args.command, t, args), inputs))
    render = to_json if args.json else to_text
    print(("\n" if args.json else "\n\n").join(render(r) for r in reports))
    return max(EXIT[r["verdict"]] for r in reports) if reports else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
