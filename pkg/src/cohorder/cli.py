"""Command-line front end.

Exit codes: 0 success / claim holds, 1 claim violated, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import channels as chmod
from .exceptions import CoherenceError, InvalidState
from .io import FormatError, bloch_to_dict, channel_to_dict, load_state, state_from_dict
from .measures import CoherenceMeasure, c_l1, c_r, c_tsallis, check_alpha
from .ordering import StateFamily, majorization_comparable, ordering_report
from .scans import FIGURES, format_cell, scan_channel, scan_figure
from .states import pure_from_spectrum, to_bloch, validate

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

COUNTEREXAMPLE = {
    "psi1": (0.5, 0.25, 0.25),
    "psi2": (0.4, 0.4, 0.2),
}
COUNTEREXAMPLE_EXPECTED = {
    ("C_l1", "psi1"): 1.9142,
    ("C_l1", "psi2"): 1.9314,
    ("C_r", "psi1"): 1.5000,
    ("C_r", "psi2"): 1.5219,
    ("C_1/2", "psi1"): 0.7753,
    ("C_1/2", "psi2"): 0.8000,
}


class UsageError(Exception):
    pass


def _floats(text: str, name: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name} expects comma-separated numbers, got {text!r}") from None


def _alphas(args) -> list[float]:
    alphas = args.alpha or [0.5]
    for a in alphas:
        check_alpha(a)
    return alphas


def _measures(args, default: list[str]) -> list[CoherenceMeasure]:
    names = args.measure or default
    out = []
    for name in names:
        key = name.lower()
        if key == "all":
            out += [CoherenceMeasure.l1(), CoherenceMeasure.rel_ent()]
            out += [CoherenceMeasure.tsallis(a) for a in _alphas(args)]
            out += [CoherenceMeasure.alpha2(), CoherenceMeasure.l2sq()]
        elif key in ("tsallis", "alpha"):
            out += [CoherenceMeasure.tsallis(a) for a in _alphas(args)]
        else:
            out.append(CoherenceMeasure.parse(name))
    return out


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_cell(v) if not isinstance(v, (str, type(None))) else ("" if v is None else v) for v in r])
    return buf.getvalue()


def _family(args, rng) -> StateFamily:
    text = (args.family or "").lower()
    count = args.count
    name, _, rest = text.partition(":")
    parts = [x for x in rest.split(":") if x]
    if name in ("theorem1", "fixed-t", "fixed-mixedness"):
        t = float(parts[0]) if parts else args.t
        if t is None:
            raise UsageError("fixed-mixedness family needs a length: --t or fixed-t:<t>")
        return StateFamily.fixed_mixedness(t, count, rng)
    if name in ("theorem2", "fixed-nz"):
        nz = float(parts[0]) if parts else args.nz
        if nz is None:
            raise UsageError("fixed-n_z family needs --nz or fixed-nz:<n_z>")
        return StateFamily.fixed_nz(nz, count, rng)
    if name in ("theorem3", "majorization-chain"):
        d = int(parts[0]) if parts else args.d
        return StateFamily.majorization_chain(d, count, rng)
    if name in ("theorem4", "x-state"):
        n = int(parts[0]) if parts else args.n
        p = float(parts[1]) if len(parts) > 1 else args.p
        if n is None or p is None:
            raise UsageError("X-state family needs --n and --p (or x-state:<n>:<p>)")
        return StateFamily.x_family(n, p, np.linspace(0.0, 1.0, args.grid))
    if name == "random-pure":
        d = int(parts[0]) if parts else args.d
        return StateFamily.random_pure(d, count, rng)
    raise UsageError(f"unknown family {args.family!r}; expected theorem1..4, fixed-t:<t>, fixed-nz:<nz>, "
                     "majorization-chain:<d>, x-state:<n>:<p> or random-pure:<d>")


def _expect_code(holds: bool, expect: str | None) -> int:
    if expect == "violate":
        return EXIT_OK if not holds else EXIT_VIOLATED
    return EXIT_OK if holds else EXIT_VIOLATED


# ------------------------------------------------------------------ commands


def cmd_measure(args) -> int:
    if args.bloch:
        vals = _floats(args.bloch, "bloch")
        if len(vals) != 4:
            raise UsageError("--bloch expects t,nx,ny,nz")
        rho = state_from_dict({"t": vals[0], "n": vals[1:]})
    elif args.spectrum:
        rho = state_from_dict({"spectrum": _floats(args.spectrum, "spectrum")})
    elif args.state:
        rho = load_state(args.state)
    else:
        raise UsageError("measure needs a state file, --bloch or --spectrum")
    problems = validate(rho)
    if problems:
        raise InvalidState("invalid state: " + ", ".join(map(str, problems)), problems)
    measures = _measures(args, ["all"])
    rows = [(m.label, m.alpha, m(rho)) for m in measures]
    if args.format == "json":
        text = json.dumps([{"measure": l, "alpha": a, "value": v} for l, a, v in rows], indent=2) + "\n"
    else:
        text = _csv(["measure", "alpha", "value"], rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.figure:
        table = scan_figure(args.figure, args.grid, 0.5 if args.p is None else args.p)
    else:
        if not args.measure or len(args.measure) != 1:
            raise UsageError("a custom scan needs --figure or exactly one --measure (plus --channel/--p)")
        table = scan_channel(args.channel or "identity", args.measure[0], 0.5 if args.p is None else args.p,
                             args.grid, outer=args.outer)
    if args.format == "json":
        text = json.dumps([dict(zip(table.columns, r)) for r in table.rows]) + "\n"
    else:
        text = table.to_csv()
    _emit(text, args.out)
    return EXIT_OK


def cmd_order_check(args) -> int:
    rng = np.random.default_rng(args.seed)
    family = _family(args, rng)
    default = ["l1", "rel"] + [f"tsallis:{a}" for a in _alphas(args)]
    report = ordering_report(family, _measures(args, default), args.tie_tol)
    _emit(report.to_json(indent=2) + "\n", args.out)
    return _expect_code(report.consistent, args.expect)


def cmd_counterexample(args) -> int:
    values = {}
    for key, lam in COUNTEREXAMPLE.items():
        rho = pure_from_spectrum(lam)
        values[("C_l1", key)] = c_l1(rho)
        values[("C_r", key)] = c_r(rho)
        values[("C_1/2", key)] = c_tsallis(rho, 0.5)
    ok = all(abs(values[k] - v) <= 1e-3 for k, v in COUNTEREXAMPLE_EXPECTED.items())
    comparable = majorization_comparable(*COUNTEREXAMPLE.values())
    fam = StateFamily.pure_spectra(list(COUNTEREXAMPLE.values()), "counterexample")
    agree = ordering_report(fam, ["l1", "rel", "tsallis:0.5"]).consistent
    lines = ["measure,psi1,psi2"]
    for m in ("C_l1", "C_r", "C_1/2"):
        lines.append(f"{m},{values[(m, 'psi1')]:.4f},{values[(m, 'psi2')]:.4f}")
    lines.append(f"majorization,{'comparable' if comparable else 'incomparable'},")
    lines.append(f"ordering,{'agree' if agree else 'disagree'},")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok and not comparable and agree else EXIT_VIOLATED


def cmd_channel(args) -> int:
    if args.channel not in ("adc", "pdc"):
        raise UsageError("--channel must be adc or pdc")
    if args.p is None or not 0.0 <= args.p <= 1.0:
        raise UsageError("--p must be given and lie in [0, 1]")
    ch = chmod.make_channel(args.channel, args.p)
    rng = np.random.default_rng(args.seed)
    if not args.family:
        args.family = "fixed-t:0.7"
    family = _family(args, rng)
    if family.dim != 2:
        raise UsageError("channel experiments act on qubit families")
    measures = _measures(args, ["rel", "alpha2"])
    result = chmod.ordering_dynamics(family, ch, measures, args.tie_tol)
    transform = chmod.adc_bloch_transform if ch.name == "adc" else chmod.pdc_bloch_transform

    summary = []
    for stats in result.per_measure:
        pct = 100.0 * stats.preserved_fraction
        summary.append(f"{stats.measure} preserved: {pct:.4g}% ({stats.preserved}/{stats.pairs} pairs, "
                       f"{stats.flipped} flipped, {stats.tie_changes} tie changes)")
        for w in stats.witnesses[:3]:
            summary.append(f"  flip: states {w['i']},{w['j']} before {w['before'][0]:.6g} vs {w['before'][1]:.6g}"
                           f" after {w['after'][0]:.6g} vs {w['after'][1]:.6g}")
    labels = [m.label for m in measures]
    records = []
    for k, rho in enumerate(family.states):
        b = to_bloch(rho)
        b2 = transform(b, args.p)
        records.append({
            "index": k,
            "before": bloch_to_dict(b),
            "after": bloch_to_dict(b2),
            "values_before": dict(zip(labels, result.before.values[k].tolist())),
            "values_after": dict(zip(labels, result.after.values[k].tolist())),
        })
    if args.out:
        if args.format == "json":
            text = json.dumps({"channel": channel_to_dict(ch),
                               "family": family.label, "states": records,
                               "dynamics": [m.to_dict() for m in result.per_measure]}, indent=2) + "\n"
        else:
            cols = ["index", "t", "n_x", "n_y", "n_z", "t_out", "n_x_out", "n_y_out", "n_z_out"]
            cols += [f"{l}_before" for l in labels] + [f"{l}_after" for l in labels]
            rows = []
            for r in records:
                rows.append([r["index"], r["before"]["t"], *r["before"]["n"], r["after"]["t"], *r["after"]["n"],
                             *r["values_before"].values(), *r["values_after"].values()])
            text = _csv(cols, rows)
        _emit(text, args.out)
    sys.stdout.write(f"channel {ch.name} p={args.p:g} on {family.label} ({len(family)} states)\n")
    sys.stdout.write("\n".join(summary) + "\n")
    if args.expect:
        return _expect_code(result.all_preserved, args.expect)
    return EXIT_OK


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", action="append", help="l1, rel, tsallis[:alpha], alpha2, l2sq or all (repeatable)")
    common.add_argument("--alpha", action="append", type=float, help="Tsallis alpha (repeatable)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--grid", type=int, default=50, help="grid points per axis")
    common.add_argument("--tie-tol", type=float, default=1e-9)

    parser = argparse.ArgumentParser(prog="cohorder", description="Coherence measures and coherence-induced state ordering.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="coherence of one state")
    p.add_argument("state", nargs="?", help="state JSON file")
    p.add_argument("--bloch", help="inline qubit t,nx,ny,nz")
    p.add_argument("--spectrum", help="inline pure state l1,...,ld")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("scan", parents=[common], help="figure data grids")
    p.add_argument("--figure", help=", ".join(FIGURES))
    p.add_argument("--channel", choices=("adc", "pdc", "identity"))
    p.add_argument("--p", type=float)
    p.add_argument("--outer", choices=("t", "n_z"), default="n_z", help="axis held fixed per curve (custom scans)")
    p.set_defaults(func=cmd_scan)

    for name, func, hlp in (("order-check", cmd_order_check, "ordering agreement on a state family"),
                            ("channel", cmd_channel, "ordering dynamics under ADC/PDC")):
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--family")
        p.add_argument("--count", type=int, default=50)
        p.add_argument("--t", type=float)
        p.add_argument("--nz", type=float)
        p.add_argument("--n", type=int)
        p.add_argument("--d", type=int, default=3)
        p.add_argument("--p", type=float)
        p.add_argument("--expect", choices=("hold", "violate"))
        if name == "channel":
            p.add_argument("--channel", default="pdc")
        p.set_defaults(func=func)

    p = sub.add_parser("counterexample", parents=[common], help="qutrit pair: agreeing measures, incomparable spectra")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.grid < 3:
        sys.stderr.write("error: --grid must be at least 3\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except InvalidState as exc:
        sys.stderr.write(f"error: {exc}\n")
        for diag in exc.diagnostics:
            sys.stderr.write(f"  {diag}\n")
        return EXIT_USAGE
    except FormatError as exc:
        sys.stderr.write(f"error: invalid field {exc.field!r}: {exc}\n")
        return EXIT_USAGE
    except (UsageError, CoherenceError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
