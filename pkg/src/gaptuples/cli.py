"""Command-line front end: ``gaptuples <command> [flags]``.

Exit codes: 0 ok, 1 check failure, 2 usage error, 3 indeterminate sign.
Big integers are written as decimal strings in every JSON payload.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import adjoin, diagrams, empirical, forms, optimize, reference, sieve
from .arith import primes_up_to
from .poly import Poly

EXIT_CODES = {"ok": 0, "fail": 1, "usage": 2, "indeterminate": 3}
EH_DEFAULT_B = Fraction(201, 100)
DEFAULT_B = Fraction(4)
DEFAULT_ETA = Fraction(1, 340)


class UsageError(ValueError):
    pass


@dataclass
class CommandOutcome:
    status: str  # ok | fail | indeterminate
    payload: dict
    human_summary: str
    checks: list[reference.Check] = field(default_factory=list)

    def __post_init__(self):
        if self.status == "fail" and not self.checks:
            raise AssertionError("a failing outcome must name the check that failed")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "payload": self.payload,
        }


def _outcome(payload: dict, summary: str, checks: list[reference.Check]) -> CommandOutcome:
    status = "ok" if all(c.ok for c in checks) else "fail"
    return CommandOutcome(status, payload, summary, checks)


# input handling


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_input(args) -> dict:
    if args.input is None:
        return {}
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        doc = json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {args.input}: {exc}") from None
    if isinstance(doc, list):
        doc = {"forms": doc}
    if not isinstance(doc, dict):
        raise UsageError("input JSON must be an object or a list of forms")
    return doc


def _tuple_from(args, doc: dict) -> forms.FormTuple:
    if args.forms:
        return forms.FormTuple.of(*(s.strip() for s in args.forms.split(",") if s.strip()))
    if args.offsets is not None:
        return forms.FormTuple.shifts(args.offsets)
    for key in ("forms", "tuple"):
        if key in doc:
            return forms.FormTuple.from_json(doc[key])
    raise UsageError("no tuple given: use --input, --forms or --offsets")


def _diagram_from(args, doc: dict, tup: forms.FormTuple) -> diagrams.RelationDiagram | None:
    if "edges" in doc:
        return diagrams.RelationDiagram.from_json({"tuple": tup.to_json(), "edges": doc["edges"]})
    return diagrams.canonical_diagram(tup) if tup.is_sorted else None


def _config(args, doc: dict) -> sieve.SieveConfig:
    cfg = doc.get("config", {})
    k = args.k if args.k is not None else cfg.get("k")
    if k is None:
        raise UsageError("--k is required")
    B = args.B if args.B is not None else cfg.get("B", EH_DEFAULT_B if args.eh else DEFAULT_B)
    eta = args.eta if args.eta is not None else cfg.get("eta", DEFAULT_ETA)
    nu = args.nu if args.nu is not None else cfg.get("nu", 2)
    degree = args.degree if args.degree is not None else cfg.get("degree", 2)
    return sieve.SieveConfig(int(k), int(nu), Fraction(B), Fraction(eta), int(degree))


# commands


def cmd_check_admissible(args) -> CommandOutcome:
    tup = _tuple_from(args, _load_input(args))
    adm = forms.is_admissible(tup)
    nu = {str(p): forms.nu_p(tup, p) for p in primes_up_to(max(tup.k, 2))}
    payload = {"tuple": tup.to_json(), "admissible": adm.admissible, "witness": adm.witness, "nu": nu}
    if adm:
        summary = f"{tup} is admissible"
    else:
        summary = f"{tup} is inadmissible: the forms cover every residue mod {adm.witness}"
    return _outcome(payload, summary, [reference.Check("admissible", adm.admissible, f"witness {adm.witness}")])


def cmd_distance(args) -> CommandOutcome:
    tup = _tuple_from(args, _load_input(args))
    if tup.k != 2:
        raise UsageError(f"distance needs exactly 2 forms, got {tup.k}")
    value = forms.dist(tup[0], tup[1])
    return _outcome({"tuple": tup.to_json(), "dist": str(value)}, f"dist({tup[0]}, {tup[1]}) = {value}", [])


def cmd_diameter(args) -> CommandOutcome:
    tup = _tuple_from(args, _load_input(args))
    if tup.k < 3:
        raise UsageError(f"diameter needs at least 3 forms, got {tup.k}")
    payload = {"tuple": tup.to_json(), "max_diameter": str(forms.max_diameter(tup))}
    if tup.k == 3:
        payload["diam"] = str(forms.diam(*tup))
        summary = f"diam{tup} = {payload['diam']}"
    else:
        summary = f"max diameter of {tup} = {payload['max_diameter']} (k - 1 = {tup.k - 1})"
    return _outcome(payload, summary, [])


def cmd_diagram(args) -> CommandOutcome:
    doc = _load_input(args)
    tup = _tuple_from(args, doc)
    diagram = _diagram_from(args, doc, tup)
    if diagram is None:
        raise forms.OrderError("canonical diagram needs the forms sorted by b/a")
    report = diagrams.check(diagram)
    payload = {"diagram": diagram.to_json(), "report": report.to_json()}
    checks = [reference.Check("consistent", report.consistent)]
    rendering = diagram.to_dot() if args.format == "dot" else diagram.to_text()
    lines = [rendering]
    if args.shift:
        try:
            conclusion = diagrams.shift_conclusion(diagram, args.shift, eh=args.eh)
        except diagrams.HypothesisError as exc:
            checks.append(reference.Check(f"shift hypotheses ({args.shift})", False, str(exc)))
        else:
            payload["shift"] = conclusion.to_json()
            checks.append(reference.Check(f"shift hypotheses ({args.shift})", True))
            lines.append(
                f"{conclusion.function}(x) = {conclusion.function}(x+a) = {conclusion.function}(x+b) = {conclusion.value}"
                f" for infinitely many x, some {conclusion.r_min} <= a < b <= {conclusion.r_max}"
            )
    compatible = [f for f, ok in report.compatible_for.items() if ok]
    lines.append(f"coefficients {report.coefficients}; compatible for: {', '.join(compatible) or 'none'}")
    return _outcome(payload, "\n".join(lines), checks)


def _transform_from(args, doc: dict) -> adjoin.AdjoinTransform:
    if args.A is not None:
        return adjoin.AdjoinTransform(args.A, args.B_shift or 0)
    if "transform" in doc:
        return adjoin.AdjoinTransform.from_json(doc["transform"])
    if "A" in doc:
        return adjoin.AdjoinTransform(int(doc["A"]), int(doc.get("B", 0)))
    raise UsageError("no transform given: use --A/--shift-B or an input with A and B")


def _adjoined_payload(T: adjoin.AdjoinTransform, out: adjoin.Adjoined) -> dict:
    adm = forms.is_admissible(out.forms)
    payload = {
        "transform": T.to_json(),
        "tuple": out.forms.to_json(),
        "factors": [str(g) for g in out.factors],
        "admissible": adm.admissible,
        "witness": adm.witness,
    }
    if out.diagram is not None:
        payload["diagram"] = out.diagram.to_json()
        payload["report"] = diagrams.check(out.diagram).to_json()
    return payload


def cmd_adjoin(args) -> CommandOutcome:
    doc = _load_input(args)
    tup = _tuple_from(args, doc)
    T = _transform_from(args, doc)
    out = adjoin.apply_tuple(T, tup, _diagram_from(args, doc, tup))
    payload = _adjoined_payload(T, out)
    summary = f"{T} {tup} = {out.forms}\nadjoining factors {out.factors}"
    return _outcome(payload, summary, [])


def cmd_adjoin_construct(args) -> CommandOutcome:
    doc = _load_input(args)
    tup = _tuple_from(args, doc)
    if args.g is not None:
        spec = adjoin.AdjoinSpec(args.g)
    elif "g" in doc:
        spec = adjoin.AdjoinSpec.from_json(doc)
    else:
        raise UsageError("no adjoining factors given: use --g or an input with g")
    if len(spec.factors) != tup.k:
        raise UsageError(f"{len(spec.factors)} factors for a {tup.k}-tuple")
    try:
        T = adjoin.construct(tup, spec)
    except adjoin.ConstructionError as exc:
        return _outcome({"tuple": tup.to_json(), "g": spec.to_json()["g"]}, str(exc),
                        [reference.Check("construction", False, str(exc))])
    out = adjoin.apply_tuple(T, tup, _diagram_from(args, doc, tup))
    payload = _adjoined_payload(T, out)
    checks = [
        reference.Check("factors realized", out.factors == list(spec.factors)),
        reference.Check("admissible", payload["admissible"], f"witness {payload['witness']}"),
    ]
    return _outcome(payload, f"{T}\n{out.forms}", checks)


def _poly_from(args, doc: dict) -> Poly:
    if args.P is not None:
        return Poly(_rational(c.strip()) for c in args.P.split(","))
    if "P" in doc:
        return Poly.from_json(doc["P"])
    raise UsageError("no polynomial given: use --P or an input with P")


def _sign_outcome(status: str, payload: dict, summary: str, checks: list[reference.Check]) -> CommandOutcome:
    if status == "indeterminate":
        return CommandOutcome("indeterminate", payload, summary, checks)
    return _outcome(payload, summary, checks)


def cmd_sieve_eval(args) -> CommandOutcome:
    doc = _load_input(args)
    config = _config(args, doc)
    result = sieve.evaluate(_poly_from(args, doc), config)
    payload = result.to_json()
    lines = [f"{name} = {payload['decimal'][name]}" for name in ("J0", "J1", "J2", "J3", "J")]
    lines.append(f"J = {result.J}")
    lines.append(f"sign: {result.status}")
    return _sign_outcome(result.status, payload, "\n".join(lines), [])


def cmd_optimize(args) -> CommandOutcome:
    config = _config(args, _load_input(args))
    result = optimize.maximize(config)
    payload = result.to_json()
    summary = (
        f"lambda_max = {result.lambda_max:.10f} (nu = {config.nu})\n"
        f"P = {Poly(result.p_best)}\nJ = {payload['J_decimal']} ({result.sign.status})"
    )
    if result.diagnostic:
        summary += f"\n{result.diagnostic}"
    check = reference.Check("certified J > 0", result.positive, result.sign.status)
    return _sign_outcome(result.sign.status, payload, summary, [check])


def cmd_minimal_k(args) -> CommandOutcome:
    doc = _load_input(args)
    cfg = doc.get("config", {})
    nu = args.nu if args.nu is not None else cfg.get("nu", 2)
    B = args.B if args.B is not None else Fraction(cfg.get("B", EH_DEFAULT_B if args.eh else DEFAULT_B))
    eta = args.eta if args.eta is not None else Fraction(cfg.get("eta", DEFAULT_ETA))
    degree = args.degree if args.degree is not None else cfg.get("degree", 2)
    k, scanned = optimize.minimal_k(int(nu), B, eta, int(degree), args.k_max)
    payload = {
        "k": k,
        "scan": [{"k": r.config.k, "lambda_max": r.lambda_max, "positive": r.positive} for r in scanned],
    }
    summary = f"minimal k = {k}" if k is not None else f"no k <= {args.k_max} certified"
    return _outcome(payload, summary, [reference.Check("k found", k is not None)])


def cmd_count(args) -> CommandOutcome:
    tup = _tuple_from(args, _load_input(args))
    if args.limit is None:
        raise UsageError("--limit N is required")
    params = empirical.BetaParams(args.limit, args.eta if args.eta is not None else DEFAULT_ETA, args.C)
    threshold = args.threshold if args.threshold is not None else min(2, tup.k)
    result = empirical.count_simultaneous(tup, params, threshold)
    payload = {"tuple": tup.to_json(), "N": str(params.N), "eta": str(params.eta), "threshold": threshold}
    payload.update(result.to_json())
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            payload["csv_rows"] = empirical.write_csv(tup, params, fh)
    summary = f"{result.count} n in ({params.N}, {2 * params.N}] with >= {threshold} sifted E2 values"
    return _outcome(payload, summary, [])


def cmd_hl_compare(args) -> CommandOutcome:
    tup = _tuple_from(args, _load_input(args))
    if args.limit is None:
        raise UsageError("--limit x is required")
    try:
        cmp = empirical.hl_compare(args.limit, tup)
    except empirical.InadmissibleError as exc:
        payload = {"tuple": tup.to_json(), "actual": empirical.pi_tuple(args.limit, tup), "predicted": 0.0}
        return _outcome(payload, str(exc), [reference.Check("admissible", False, str(exc))])
    payload = {"tuple": tup.to_json(), "x": str(args.limit)}
    payload.update(cmp.to_json())
    summary = f"actual {cmp.actual}, predicted {cmp.predicted:.1f}, ratio {cmp.ratio:.4f}"
    return _outcome(payload, summary, [])


def cmd_scan_gaps(args) -> CommandOutcome:
    if args.limit is None or args.window is None:
        raise UsageError("--limit and --window are required")
    nu = args.nu if args.nu is not None else 2
    scan = empirical.scan_gaps(args.kind, args.j, nu, args.window, args.limit)
    payload = {"kind": args.kind, "j": args.j, "nu": nu, "window": args.window, "limit": str(args.limit)}
    payload.update(scan.to_json())
    summary = f"{scan.count} runs of {nu + 1} terms within {args.window}; first {scan.first_witness}"
    return _outcome(payload, summary, [reference.Check("witness found", scan.count > 0)])


def cmd_verify_paper(args) -> CommandOutcome:
    checks = reference.replay(include_optimizer=not args.skip_optimizer)
    payload = {"checks": [c.to_json() for c in checks], "passed": sum(c.ok for c in checks), "total": len(checks)}
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}: {c.detail}" for c in checks]
    lines.append(f"{payload['passed']}/{payload['total']} checks passed")
    return _outcome(payload, "\n".join(lines), checks)


COMMANDS = {
    "check-admissible": cmd_check_admissible,
    "distance": cmd_distance,
    "diameter": cmd_diameter,
    "diagram": cmd_diagram,
    "adjoin": cmd_adjoin,
    "adjoin-construct": cmd_adjoin_construct,
    "sieve-eval": cmd_sieve_eval,
    "optimize": cmd_optimize,
    "minimal-k": cmd_minimal_k,
    "count": cmd_count,
    "hl-compare": cmd_hl_compare,
    "scan-gaps": cmd_scan_gaps,
    "verify-paper": cmd_verify_paper,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON input file, or - for stdin")
    common.add_argument("--json", action="store_true", help="print the JSON outcome instead of a summary")
    common.add_argument("--eh", action="store_true", help="assume level of distribution close to 1 (B = 201/100, k >= 5)")

    tuple_args = argparse.ArgumentParser(add_help=False)
    tuple_args.add_argument("--forms", help='comma-separated forms, e.g. "2m+1,3m+2"')
    tuple_args.add_argument("--offsets", type=_int_list, help="monic tuple m+h for these offsets")

    sieve_args = argparse.ArgumentParser(add_help=False)
    sieve_args.add_argument("--k", type=int)
    sieve_args.add_argument("--nu", type=int)
    sieve_args.add_argument("--B", type=_rational)
    sieve_args.add_argument("--eta", type=_rational)
    sieve_args.add_argument("--degree", type=int)

    parser = argparse.ArgumentParser(prog="gaptuples", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, parents):
        return sub.add_parser(name, help=help_text, parents=[common, *parents])

    add("check-admissible", "admissibility and nu_p for p <= k", [tuple_args])
    add("distance", "dist of two sorted forms", [tuple_args])
    add("diameter", "diam of three sorted forms, or max diameter of a sorted tuple", [tuple_args])
    p = add("diagram", "canonical relation diagram and compatibility", [tuple_args])
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--shift", metavar="F", help="also derive the shift conclusion for F in d, omega, Omega, h")
    p = add("adjoin", "apply T_{A,B} to a tuple", [tuple_args])
    p.add_argument("--A", type=int)
    p.add_argument("--shift-B", dest="B_shift", type=int, help="the B of T_{A,B} (default 0)")
    p = add("adjoin-construct", "find T_{A,B} realizing requested adjoining factors", [tuple_args])
    p.add_argument("--g", type=_int_list, help="comma-separated adjoining factors")
    p = add("sieve-eval", "exact J0..J3 and J for a polynomial", [sieve_args])
    p.add_argument("--P", help='coefficients of P, constant first, e.g. "3/20,3/5,10"')
    add("optimize", "best polynomial of a given degree, with exact sign", [sieve_args])
    p = add("minimal-k", "smallest k with a certified positive J", [sieve_args])
    p.add_argument("--k-max", type=int, default=40)
    p = add("count", "n in (N, 2N] with many sifted E2 values", [tuple_args])
    p.add_argument("--limit", type=int, help="N")
    p.add_argument("--eta", type=_rational)
    p.add_argument("--C", type=int, help="extra lower bound on the small prime factor")
    p.add_argument("--threshold", type=int, help="required number of forms (default 2)")
    p.add_argument("--csv", help="write per-n rows to this CSV file")
    p = add("hl-compare", "prime tuple count against the singular series prediction", [tuple_args])
    p.add_argument("--limit", type=int, help="x")
    p = add("scan-gaps", "runs of sequence terms within a window", [])
    p.add_argument("--kind", choices=("S", "s", "q"), default="q")
    p.add_argument("--j", type=int, default=3)
    p.add_argument("--nu", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--limit", type=int)
    p = add("verify-paper", "replay every published construction and constant", [])
    p.add_argument("--skip-optimizer", action="store_true")
    return parser


def run(command: str, **flags) -> CommandOutcome:
    """Run ``command`` with keyword flags (argparse destination names)."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}")
    args = build_parser().parse_args([command])
    for key, value in flags.items():
        if not hasattr(args, key):
            raise UsageError(f"{command} has no flag {key!r}")
        setattr(args, key, value)
    return COMMANDS[command](args)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        outcome = COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        # OrderError, ConfigError, DiagramError and malformed forms are all ValueErrors
        print(f"gaptuples {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CODES["usage"]
    if args.json:
        print(json.dumps(outcome.to_json(), indent=2))
    else:
        print(outcome.human_summary)
        if args.command != "verify-paper":
            for c in outcome.checks:
                if not c.ok:
                    print(f"check failed: {c.name}" + (f" ({c.detail})" if c.detail else ""), file=sys.stderr)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
