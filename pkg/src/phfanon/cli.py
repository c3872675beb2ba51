"""Command-line front end.

Exit codes: 0 ok, 1 validation failed, 2 parse error, 3 resource cap exceeded.
Input may be a file path or ``example:<name>`` for a bundled array.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from . import access, fixtures
from .anonymity import AnonymityReport, Scheme, as_structure, measures
from .general import general_measures, validate_threshold
from .io import InputDocument, ParseError, load
from .phf import DEFAULT_MAX_GROUPS, KeyId, PhfError, TooLargeError, is_balanced, validate_phf
from .simulator import RestartVariant, SimConfig, compare_to_exact, run

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_TOO_LARGE = 0, 1, 2, 3

# scheme names are accepted for --variant and mean the variant that simulates them
VARIANT_ALIASES = {v.scheme.value: v.value for v in RestartVariant}


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def key_label(key) -> str:
    return key.label() if isinstance(key, KeyId) else f"K{key}"


def group_label(group) -> str:
    return "A(" + ",".join(map(str, group)) + ")"


def _read(path: str) -> InputDocument:
    if path.startswith("example:"):
        return fixtures.load_example(path.split(":", 1)[1])
    return load(path)


def _report(doc: InputDocument, scheme: Scheme, max_groups: Optional[int]) -> AnonymityReport:
    if doc.kind == "phf":
        return measures(as_structure(doc.payload, max_groups=max_groups), scheme)
    return general_measures(doc.payload, scheme, max_groups=max_groups)


def report_dict(doc: InputDocument, report: AnonymityReport) -> Dict[str, Any]:
    payload = doc.payload
    mu_key, mu_group = report.mu_witness
    rho_key, rho_c = report.rho_witness
    return {
        "source": doc.source,
        "kind": doc.kind,
        "scheme": report.scheme.value,
        "n": payload.n,
        "t": payload.t,
        "keys": len(report.key_marginals),
        "s0": report.s0,
        "mu": frac(report.mu),
        "mu_witness": {"key": key_label(mu_key), "group": list(mu_group)},
        "rho": frac(report.rho),
        "rho_witness": {"key": key_label(rho_key), "participant": rho_c},
        "rho_per_participant": [
            {"participant": c, "value": frac(v), "key": key_label(k)}
            for c, (v, k) in enumerate(zip(report.rho_per_participant, report.rho_per_participant_witness), start=1)
        ],
        "posteriors": [
            {
                "key": key_label(key),
                "marginal": frac(report.key_marginals[key]),
                "groups": {group_label(g): frac(p) for g, p in report.group_posteriors[key].items()},
                "participants": [frac(p) for p in report.participant_posteriors[key]],
            }
            for key in report.key_marginals
        ],
    }


def render_report(data: Dict[str, Any]) -> str:
    lines = [
        f"source: {data['source']}",
        f"scheme: {data['scheme']}",
        f"participants: {data['n']}  threshold: {data['t']}  keys: {data['keys']}  s0: {data['s0']}",
        f"mu = {data['mu']}  (max Pr[A|K] at {data['mu_witness']['key']}, {group_label(data['mu_witness']['group'])})",
        f"rho = {data['rho']}  (max Pr[P_c|K] at {data['rho_witness']['key']}, P_{data['rho_witness']['participant']})",
        "rho(P_c):",
    ]
    lines += [f"  P_{e['participant']}  {e['value']}  ({e['key']})" for e in data["rho_per_participant"]]
    lines.append("posteriors:")
    for entry in data["posteriors"]:
        lines.append(f"  {entry['key']}  Pr[K] = {entry['marginal']}")
        lines.append("    Pr[A|K]: " + " ".join(f"{g}={p}" for g, p in entry["groups"].items()))
        lines.append("    Pr[P_c|K]: " + " ".join(entry["participants"]))
    return "\n".join(lines) + "\n"


def _emit(args, data: Dict[str, Any], text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    doc = _read(args.input)
    if doc.kind == "phf":
        array = doc.payload
        check = validate_phf(array, max_groups=args.max_groups)
        sound = access.threshold_soundness(array)
        data = {
            "source": doc.source,
            "kind": "phf",
            "l": array.l, "n": array.n, "m": array.m, "t": array.t,
            "is_phf": check.is_phf,
            "witness": list(check.witness) if check.witness else None,
            "balanced": is_balanced(array),
            "threshold_sound": sound,
        }
        ok = check.is_phf and sound
        text = (f"source: {doc.source}\nPHF({array.l}; {array.n}, {array.m}, {array.t}): "
                f"{'yes' if check.is_phf else 'no'}"
                + (f" (group {group_label(check.witness)} has no separating row)" if check.witness else "")
                + f"\nbalanced: {'yes' if data['balanced'] else 'no'}\n"
                f"threshold sound: {'yes' if sound else 'no'}\n")
    else:
        setup = doc.payload
        ok = validate_threshold(setup, max_groups=args.max_groups)
        data = {"source": doc.source, "kind": "general", "p": setup.p, "n": setup.n, "v": setup.v,
                "t": setup.t, "threshold": ok}
        text = (f"source: {doc.source}\n({setup.t}, {setup.n}) threshold structure: "
                f"{'yes' if ok else 'no'}\n")
    _emit(args, data, text)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_analyze(args) -> int:
    doc = _read(args.input)
    data = report_dict(doc, _report(doc, Scheme(args.scheme), args.max_groups))
    _emit(args, data, render_report(data))
    return EXIT_OK


def cmd_compare(args) -> int:
    doc = _read(args.input)
    rows = []
    for scheme in Scheme:
        report = _report(doc, scheme, args.max_groups)
        rows.append({
            "scheme": scheme.value,
            "mu": frac(report.mu),
            "rho": frac(report.rho),
            "rho_per_participant": [frac(x) for x in report.rho_per_participant],
        })
    data = {"source": doc.source, "rows": rows}
    cells = [f"μ = {r['mu']}, ρ = {r['rho']}" for r in rows]
    width = max(len(c) for c in cells) + 2
    text = [f"{'source':<12}{'ZS scheme':<{width}}Proportional scheme",
            f"{doc.source:<12}{cells[0]:<{width}}{cells[1]}"]
    for r, name in zip(rows, ("ZS", "Proportional")):
        text.append(f"ρ(P_c), {name}: " + " ".join(r["rho_per_participant"]))
    _emit(args, data, "\n".join(text) + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc = _read(args.input)
    if doc.kind != "phf":
        raise PhfError("simulation needs a PHF input")
    array = doc.payload
    variant = RestartVariant(VARIANT_ALIASES.get(args.variant, args.variant))
    config = SimConfig(variant, args.trials, args.seed)
    result = run(array, config)
    st = as_structure(array, max_groups=args.max_groups)
    summary = compare_to_exact(result, measures(st, variant.scheme), array)
    data = {
        "source": doc.source,
        "variant": variant.value,
        "scheme": variant.scheme.value,
        "trials": args.trials,
        "seed": args.seed,
        "trials_completed": result.trials_completed,
        "trials_aborted": result.trials_aborted,
        "cycles_total": result.cycles_total,
        "group_counts": {group_label(g): c for g, c in result.group_use_counts.items()},
        "key_counts": {key_label(k): c for k, c in result.key_use_counts.items()},
        "pair_counts": {f"{group_label(g)}|{key_label(k)}": c for (g, k), c in result.pair_counts.items()},
        "deviation": {
            "group_max": f"{summary.group_max:.6f}",
            "key_max": f"{summary.key_max:.6f}",
            "conditional_max": f"{summary.conditional_max:.6f}",
            "tolerance": f"{summary.tolerance:.6f}",
            "cells_checked": summary.cells_checked,
            "cells_exceeding": summary.cells_exceeding,
        },
    }
    text = [
        f"source: {doc.source}",
        f"variant: {variant.value} ({variant.scheme.value} scheme)  trials: {args.trials}  seed: {args.seed}",
        f"completed: {result.trials_completed}  aborted: {result.trials_aborted}  cycles: {result.cycles_total}",
        "group counts:",
    ]
    text += [f"  {k} {v}" for k, v in data["group_counts"].items()]
    text.append("key counts:")
    text += [f"  {k} {v}" for k, v in data["key_counts"].items()]
    text.append("pair counts:")
    text += [f"  {k} {v}" for k, v in data["pair_counts"].items()]
    dev = data["deviation"]
    text.append(f"max deviation: group {dev['group_max']}  key {dev['key_max']}  "
                f"conditional {dev['conditional_max']}  (tolerance {dev['tolerance']}, "
                f"{dev['cells_exceeding']} of {dev['cells_checked']} cells exceed)")
    _emit(args, data, "\n".join(text) + "\n")
    return EXIT_OK if summary.within_tolerance else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phfanon", description="Anonymity analysis of PHF-based threshold key sharing.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="input file, or example:<name> for a bundled array")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-groups", type=int, default=DEFAULT_MAX_GROUPS, metavar="CAP")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the PHF or threshold property").set_defaults(func=cmd_validate)
    analyze = sub.add_parser("analyze", parents=[common], help="exact posteriors and measures for one scheme")
    analyze.add_argument("--scheme", choices=[s.value for s in Scheme], default="zs")
    analyze.set_defaults(func=cmd_analyze)
    sub.add_parser("compare", parents=[common], help="ZS vs proportional measures").set_defaults(func=cmd_compare)
    simulate = sub.add_parser("simulate", parents=[common], help="seeded simulation against exact values")
    simulate.add_argument("--variant", choices=[v.value for v in RestartVariant] + list(VARIANT_ALIASES),
                          default="step1")
    simulate.add_argument("--trials", type=int, default=100_000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error[parse/{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TooLargeError as exc:
        print(f"error[too-large]: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (PhfError, KeyError, OSError) as exc:
        print(f"error[invalid]: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
