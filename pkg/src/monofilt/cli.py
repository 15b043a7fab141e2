"""Command-line entry points for the pipelines.

Commands parse one ideal, run the requested analysis, and emit a report in
one of three formats: a human-readable table, a canonical JSON document, or
a flat CSV table for spreadsheets.  Reports embed the tool version and an
echo of the mathematical configuration; execution details such as the jobs
count are deliberately left out so identical inputs produce byte-identical
reports at any parallelism degree.

Exit codes: 0 success, 1 bad input or an infeasible request, 2 internal
certificate failure (an emitted filtration failed re-validation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from .closure import (
    closure_powers_report,
    integral_closure_power,
    newton_polyhedron,
    noetherian_exponent,
    rees_cofinality_constant,
)
from .epsilon import epsilon_estimate, filtration_bound_check
from .errors import CertificateError, InfeasibleError, MonofiltError
from .filtration import cm_certificate
from .powers import ass_stability, powers_report
from .ring import parse_problem, zero_ideal
from .superficial import CyclicFilteredModule, find_superficial

_FORMATS = ("human", "json", "csv")


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; spec reserves 2 for certificate
    # failures, so route usage problems to exit code 1.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub, *, nmax_default: int):
    sub.add_argument("--ideal", help="inline input, e.g. 'vars: x,y ; ideal: x^2, x*y'")
    sub.add_argument("--ideal-file", help="path to a file holding the same input form")
    sub.add_argument("--nmax", type=int, default=nmax_default, help="largest power to sweep")
    sub.add_argument("--window", type=int, default=4, help="trailing window for stabilization detection")
    sub.add_argument("--order-max", type=int, default=3, dest="order_max",
                     help="largest superficial order to try")
    sub.add_argument("--out", help="write the report to this path instead of stdout")
    sub.add_argument("--format", choices=_FORMATS, default="human")
    sub.add_argument("--jobs", type=int, default=None,
                     help="parallelism degree (default: MONOFILT_JOBS or 1)")


def build_parser() -> _Parser:
    parser = _Parser(prog="monofilt", description=__doc__)
    parser.add_argument("--version", action="version", version=f"monofilt {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    powers = commands.add_parser("powers", help="prime filtrations of R/I^n with analyzers")
    _add_common(powers, nmax_default=8)
    powers.add_argument(
        "--mode",
        choices=("naive", "theorem", "both"),
        default="theorem",
        help="construction mode; 'both' emits two reports (CSV keeps the theorem table)",
    )

    ass = commands.add_parser("ass", help="associated primes of R/I^n per power")
    _add_common(ass, nmax_default=10)

    superficial = commands.add_parser("superficial", help="search for a certified superficial element")
    _add_common(superficial, nmax_default=24)

    closure = commands.add_parser("closure", help="Newton polyhedron and integral closures of powers")
    _add_common(closure, nmax_default=8)

    epsilon = commands.add_parser("epsilon", help="torsion lengths and the epsilon-multiplicity estimate")
    _add_common(epsilon, nmax_default=20)

    cm = commands.add_parser("cm", help="localization certificate for Cohen-Macaulay powers")
    _add_common(cm, nmax_default=6)
    return parser


def _load_ideal(args):
    if bool(args.ideal) == bool(args.ideal_file):
        raise MonofiltError("provide exactly one of --ideal or --ideal-file")
    text = args.ideal
    if args.ideal_file:
        with open(args.ideal_file, "r", encoding="utf-8") as handle:
            text = handle.read()
    ctx, I = parse_problem(text)
    if I.is_unit() or I.is_zero():
        raise MonofiltError("the ideal must be proper and nonzero")
    return ctx, I


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("MONOFILT_JOBS", "")
    return max(1, int(env)) if env.isdigit() and env else 1


def _config_echo(args, ctx, I) -> dict:
    echo = {
        "vars": list(ctx.variable_names),
        "ideal": I.generator_strings(),
        "nmax": args.nmax,
        "window": args.window,
        "order_max": args.order_max,
    }
    if getattr(args, "mode", None) is not None:
        echo["mode"] = args.mode
    return echo


def _envelope(command: str, config: dict, body: dict) -> dict:
    return {
        "tool": {"name": "monofilt", "version": __version__},
        "command": command,
        "config": config,
        "report": body,
    }


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _prime_label(names) -> str:
    return ",".join(names)


# -- powers ------------------------------------------------------------------


def _powers_body(I, args, mode: str, jobs: int) -> dict:
    report = powers_report(
        I,
        args.nmax,
        mode,
        window=args.window,
        order_max=args.order_max,
        jobs=jobs,
    )
    return report.to_document()


def _human_powers(doc: dict) -> list:
    lines = [f"mode: {doc['mode']}  n_max: {doc['n_max']}"]
    lines.append("  n  steps  fallback  primes")
    for row in doc["per_n"]:
        primes = " ".join("(" + _prime_label(p) + ")" for p in row["primes"])
        lines.append(f"{row['n']:>3}  {row['steps']:>5}  {str(row['fallback']):<8}  {primes}")
    union = " ".join("(" + _prime_label(p) + ")" for p in doc["primes_union"])
    lines.append(f"prime factors across the sweep: {union}")
    lines.append(f"stabilization: {json.dumps(doc['stabilization'], sort_keys=True)}")
    for entry in doc["growth"]:
        exp = "insufficient data" if entry["exponent"] is None else f"{entry['exponent']:.3f}"
        lines.append(f"growth ({_prime_label(entry['prime'])}): {exp} [{entry['points']} points]")
    if doc["superficial"] is not None:
        lines.append(f"superficial: {json.dumps(doc['superficial'], sort_keys=True)}")
    return lines

def cmd_powers(args) -> int:
    ctx, I = _load_ideal(args)
    jobs = _jobs(args)
    if args.mode == "both":
        body = {
            "naive": _powers_body(I, args, "naive", jobs),
            "theorem": _powers_body(I, args, "theorem", jobs),
        }
        flat = body["theorem"]
    else:
        body = _powers_body(I, args, args.mode, jobs)
        flat = body
    doc = _envelope("powers", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [
            (row["n"], _prime_label(entry["prime"]), entry["multiplicity"])
            for row in flat["per_n"]
            for entry in row["ledger"]
        ]
        _emit(args, _csv_text(("n", "prime", "multiplicity"), rows))
    else:
        lines = [f"monofilt {__version__} powers"]
        if args.mode == "both":
            for mode in ("naive", "theorem"):
                lines.extend(_human_powers(body[mode]))
        else:
            lines.extend(_human_powers(body))
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- ass ----------------------------------------------------------------------


def cmd_ass(args) -> int:
    ctx, I = _load_ideal(args)
    report = ass_stability(I, args.nmax, window=args.window)
    body = report.to_document()
    doc = _envelope("ass", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [
            (row["n"], _prime_label(p))
            for row in body["per_n"]
            for p in row["ass"]
        ]
        _emit(args, _csv_text(("n", "prime"), rows))
    else:
        lines = [f"monofilt {__version__} ass  n_max: {args.nmax}"]
        for row in body["per_n"]:
            primes = " ".join("(" + _prime_label(p) + ")" for p in row["ass"])
            lines.append(f"{row['n']:>3}  {primes}")
        union = " ".join("(" + _prime_label(p) + ")" for p in body["union"])
        lines.append(f"union: {union}")
        lines.append(f"stability onset: {body['onset']}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- superficial ---------------------------------------------------------------


def cmd_superficial(args) -> int:
    ctx, I = _load_ideal(args)
    module = CyclicFilteredModule(zero_ideal(ctx), I)
    cert = find_superficial(module, order_max=args.order_max, n_max=args.nmax)
    if cert is None:
        body = {
            "found": False,
            "search": {"order_max": args.order_max, "c_max": 6, "n_max": args.nmax},
        }
    else:
        body = {"found": True, "certificate": cert.serialize(ctx)}
    doc = _envelope("superficial", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        if cert is None:
            _emit(args, _csv_text(("found",), [("false",)]))
        else:
            c = cert.serialize(ctx)
            _emit(
                args,
                _csv_text(
                    ("element", "order", "c", "colon_threshold", "verified_to"),
                    [(c["element"], c["order"], c["c"], c["colon_threshold"], c["verified_to"])],
                ),
            )
    else:
        lines = [f"monofilt {__version__} superficial"]
        lines.append(json.dumps(body, indent=2, sort_keys=True))
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- closure -------------------------------------------------------------------


def cmd_closure(args) -> int:
    ctx, I = _load_ideal(args)
    jobs = _jobs(args)
    poly = newton_polyhedron(I)
    closure_gens = {
        n: integral_closure_power(I, n).generator_strings() for n in range(1, args.nmax + 1)
    }
    exponent = noetherian_exponent(I, l_max=4, n_max=min(args.nmax, 6))
    rees = rees_cofinality_constant(I, m_max=args.nmax)
    report = closure_powers_report(
        I, args.nmax, window=args.window, order_max=args.order_max, jobs=jobs
    )
    body = {
        "polyhedron": poly.serialize(),
        "closures": [{"n": n, "generators": gens} for n, gens in sorted(closure_gens.items())],
        "noetherian_exponent": exponent.to_document(),
        "rees_cofinality_constant": rees,
        "powers": report.to_document(),
    }
    doc = _envelope("closure", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [
            (row["n"], _prime_label(entry["prime"]), entry["multiplicity"])
            for row in body["powers"]["per_n"]
            for entry in row["ledger"]
        ]
        _emit(args, _csv_text(("n", "prime", "multiplicity"), rows))
    else:
        lines = [f"monofilt {__version__} closure  n_max: {args.nmax}"]
        lines.append("polyhedron: " + json.dumps(body["polyhedron"], sort_keys=True))
        for row in body["closures"]:
            lines.append(f"closure(I^{row['n']}): ({', '.join(row['generators'])})")
        lines.append(f"noetherian exponent: {exponent.exponent}")
        lines.append(f"rees cofinality constant: {rees}")
        lines.extend(_human_powers(body["powers"]))
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- epsilon -------------------------------------------------------------------


def cmd_epsilon(args) -> int:
    ctx, I = _load_ideal(args)
    jobs = _jobs(args)
    estimate = epsilon_estimate(I, args.nmax)
    check_to = min(args.nmax, 12)
    report = powers_report(
        I, check_to, "theorem", window=args.window, order_max=args.order_max, jobs=jobs
    )
    bound = filtration_bound_check(I, check_to, report)
    body = estimate.to_document()
    body["bound_check"] = [
        {"n": row.n, "length": row.length, "maximal_multiplicity": row.maximal_multiplicity, "ok": row.ok}
        for row in bound
    ]
    doc = _envelope("epsilon", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [(row["n"], row["length"], row["normalized"]) for row in body["per_n"]]
        _emit(args, _csv_text(("n", "length", "normalized"), rows))
    else:
        lines = [f"monofilt {__version__} epsilon  n_max: {args.nmax}"]
        lines.append("  n  length  normalized")
        for row in body["per_n"]:
            lines.append(f"{row['n']:>3}  {row['length']:>6}  {row['normalized']:.6f}")
        lines.append(f"estimate (window {body['window']}): {body['estimate']:.6f}")
        bad = [row for row in body["bound_check"] if not row["ok"]]
        lines.append(f"filtration bound check: {'pass' if not bad else 'FAIL ' + str(bad)}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


# -- cm ------------------------------------------------------------------------


def cmd_cm(args) -> int:
    ctx, I = _load_ideal(args)
    jobs = _jobs(args)
    report = powers_report(
        I, args.nmax, "theorem", window=args.window, order_max=args.order_max, jobs=jobs
    )
    cert = cm_certificate(I, report.filtrations)
    body = {
        "element": ctx.monomial_str(cert.element),
        "minh": [p.names(ctx) for p in cert.minh_primes],
        "dim": cert.quotient_dim,
        # powers_report refuses to hand back unvalidated filtrations
        "filtrations_validated": True,
        "per_n": [
            {
                "n": n,
                "surviving": [
                    {"prime": p.names(ctx), "multiplicity": c} for p, c in ledger
                ],
                "ok": ok,
            }
            for n, ledger, ok in cert.per_n
        ],
        "all_pass": cert.all_pass(),
    }
    doc = _envelope("cm", _config_echo(args, ctx, I), body)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        rows = [(row["n"], str(row["ok"]).lower()) for row in body["per_n"]]
        _emit(args, _csv_text(("n", "pass"), rows))
    else:
        lines = [f"monofilt {__version__} cm  n_max: {args.nmax}"]
        lines.append(f"inverted element: {body['element']}")
        lines.append(f"minh: {' '.join('(' + _prime_label(p) + ')' for p in body['minh'])}")
        for row in body["per_n"]:
            lines.append(f"{row['n']:>3}  {'pass' if row['ok'] else 'FAIL'}")
        lines.append(f"all levels: {'pass' if body['all_pass'] else 'FAIL'}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


_HANDLERS = {
    "powers": cmd_powers,
    "ass": cmd_ass,
    "superficial": cmd_superficial,
    "closure": cmd_closure,
    "epsilon": cmd_epsilon,
    "cm": cmd_cm,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else 1
    try:
        return _HANDLERS[args.command](args)
    except CertificateError as err:
        print(f"monofilt: certificate failure: {err}", file=sys.stderr)
        return 2
    except (MonofiltError, InfeasibleError, OSError, ValueError) as err:
        print(f"monofilt: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
