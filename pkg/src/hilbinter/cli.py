"""Command-line entry point: ``hilbinter <subcommand> --input file.ideal ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fuzz import KINDS, fuzz
from .generic import GenericityProtocol, gin
from .io import ParseError, parse_ideal_file
from .linalg import hilbert_function
from .monomial import lexify
from .ring import GF, LEX, OPLEX, QQ, REVLEX, AlgebraError, Ideal
from .suites import (
    SUITES,
    ExperimentConfig,
    VerificationReport,
    intersection_statistic,
    lex_pair,
    product_statistic,
    run_suites,
    _h_cap,
    _h_prod,
)
from .tor import general_tor, tor_table

ORDERS = {"lex": LEX, "oplex": OPLEX, "revlex": REVLEX}


def _protocol(args) -> GenericityProtocol:
    return GenericityProtocol(trials=args.trials, seed=args.seed, height=args.height)


def _config(args, fld, n) -> ExperimentConfig:
    return ExperimentConfig(
        field=fld, n=n, D=args.max_degree, i_max=args.imax, protocol=_protocol(args), suite=args.suite,
    )


def _load(args):
    if not args.input:
        raise AlgebraError("--input is required")
    f = parse_ideal_file(args.input)
    if not f.ideals:
        raise AlgebraError(f"{args.input} defines no ideals")
    return f


def _pair(f) -> tuple[Ideal, Ideal]:
    names = list(f.ideals)
    if len(names) < 2:
        raise AlgebraError("this command needs two ideals (I and J)")
    return f.ideals.get("I", f.ideals[names[0]]), f.ideals.get("J", f.ideals[names[1]])


def _row(label: str, values) -> str:
    return f"{label}: " + " ".join(str(v) for v in values)


def cmd_hilbert(args, out) -> int:
    f = _load(args)
    for name, I in f.ideals.items():
        h = hilbert_function(I, args.max_degree)
        if args.format == "tsv":
            for d, v in enumerate(h):
                out.write(f"{name}\t{d}\t{v}\n")
        else:
            out.write(_row(f"H({name}, 0..{args.max_degree})", h) + "\n")
    return 0


def cmd_lexify(args, out) -> int:
    f = _load(args)
    for name, I in f.ideals.items():
        h = hilbert_function(I, args.max_degree).values
        out.write(f"{name}^lex   = {lexify(h, I.n, 'lex', args.max_degree)}\n")
        out.write(f"{name}^oplex = {lexify(h, I.n, 'oplex', args.max_degree)}\n")
    return 0


def cmd_gin(args, out) -> int:
    f = _load(args)
    order = ORDERS[args.order]
    for name, I in f.ideals.items():
        cert = gin(I, order, _protocol(args), args.max_degree, strict=False)
        out.write(
            f"Gin_{args.order}({name}) = {cert.result}\n"
            f"  samples agreed: {cert.samples_agreed}; Borel: {cert.borel_check}; "
            f"trials: {cert.trials_used}; truncated at degree {cert.D}\n"
        )
    return 0


def _stat_command(args, out, which: str) -> int:
    f = _load(args)
    I, J = _pair(f)
    config = _config(args, f.field, f.n)
    config.check(I, J)
    Ilex, Jop = lex_pair(I, J, config.D)
    if which == "intersect":
        v = intersection_statistic(I, J, config)
        bound = [_h_cap(Ilex, Jop, d) for d in range(config.D + 1)]
        labels = ("H(I ∩ g(J))", "H(I^lex ∩ J^oplex)")
    else:
        v = product_statistic(I, J, config)
        bound = [_h_prod(Ilex, Jop, d) for d in range(config.D + 1)]
        labels = ("H(I g(J))", "H(I^lex J^oplex)")
    if args.format == "tsv":
        out.write("d\tgeneral\tlex_bound\tstable\n")
        for d, (a, b, s) in enumerate(zip(v.values, bound, v.stable)):
            out.write(f"{d}\t{a}\t{b}\t{int(s)}\n")
    else:
        out.write(_row(labels[0], v.values) + "\n")
        out.write(_row(labels[1], bound) + "\n")
        out.write(_row("stable", [int(s) for s in v.stable]) + "\n")
    return 0


def cmd_tor(args, out) -> int:
    f = _load(args)
    I, J = _pair(f)
    config = _config(args, f.field, f.n)
    config.check(I, J)
    D, i_max = config.D, config.i_max
    if args.plain:
        t = tor_table(I, J, i_max, D)
        rows, stable = [list(r) for r in t.values], None
        out.write(f"# Tor_i(S/I, S/J)_d via {t.provenance}\n")
    else:
        v = general_tor(I, J, i_max, D, config.protocol)
        w = D + 1
        rows = [list(v.values[k:k + w]) for k in range(0, len(v.values), w)]
        stable = [list(v.stable[k:k + w]) for k in range(0, len(v.stable), w)]
        out.write("# Tor_i(S/I, S/g(J))_d for general g (minimum over trials)\n")
    for i, row in enumerate(rows):
        if args.format == "tsv":
            for d, val in enumerate(row):
                s = "" if stable is None else f"\t{int(stable[i][d])}"
                out.write(f"{i}\t{d}\t{val}{s}\n")
        else:
            out.write(_row(f"i={i}", row) + "\n")
    return 0


def _emit(report: VerificationReport, args, out, header: bool = True) -> None:
    out.write(report.to_tsv(header) if args.format == "tsv" else report.to_text())


def cmd_verify(args, out) -> int:
    f = _load(args)
    config = _config(args, f.field, f.n)
    name = args.instance or Path(args.input).stem
    report = run_suites(f.ideals, config, name)
    _emit(report, args, out)
    return report.exit_code()


def _field(spec: str):
    if spec in ("QQ", "0"):
        return QQ
    if spec.startswith("Fp"):
        return GF(int(spec[2:].strip(" :=")))
    return GF(int(spec))


def cmd_fuzz(args, out) -> int:
    config = _config(args, _field(args.field), args.vars)
    kinds = args.kinds.split(",") if args.kinds else list(KINDS)
    total = VerificationReport(seeds=(args.seed, args.trials, args.height))
    first = True
    for inst, report in fuzz(config, args.count, kinds, args.dump_dir):
        total.extend(report)
        if args.format == "tsv":
            _emit(report, args, out, header=first)
            first = False
        else:
            c = report.counts()
            summary = ", ".join(f"{k}={v}" for k, v in sorted(c.items()))
            out.write(f"{inst.name}: {summary}\n")
    if args.format != "tsv":
        out.write("total: " + ", ".join(f"{k}={v}" for k, v in sorted(total.counts().items())) + "\n")
    return total.exit_code()


COMMANDS = {
    "hilbert": cmd_hilbert,
    "lexify": cmd_lexify,
    "gin": cmd_gin,
    "intersect": lambda a, o: _stat_command(a, o, "intersect"),
    "product": lambda a, o: _stat_command(a, o, "product"),
    "tor": cmd_tor,
    "verify": cmd_verify,
    "fuzz": cmd_fuzz,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="ideal file")
    common.add_argument("--max-degree", type=int, default=8, help="degree bound D (default 8)")
    common.add_argument("--imax", type=int, default=3, help="largest homological degree (default 3)")
    common.add_argument("--trials", type=int, default=3, help="independent samples per statistic (default 3)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--height", type=int, default=10**4, help="bound on random integer coefficients")
    common.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    common.add_argument("--format", default="text", choices=["text", "tsv"])

    parser = argparse.ArgumentParser(prog="hilbinter", description="Exact Hilbert function experiments: lex bounds for intersections, products and Tor under general coordinates.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("hilbert", "lexify", "intersect", "product", "verify"):
        p = sub.add_parser(name, parents=[common])
        if name == "verify":
            p.add_argument("--instance", help="instance name in reports (default: file stem)")
    p = sub.add_parser("gin", parents=[common])
    p.add_argument("--order", default="lex", choices=list(ORDERS))
    p = sub.add_parser("tor", parents=[common])
    p.add_argument("--plain", action="store_true", help="Tor_i(S/I, S/J) without a coordinate change")
    p = sub.add_parser("fuzz", parents=[common])
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--field", default="QQ", help="QQ or Fp<p>, e.g. Fp3")
    p.add_argument("--kinds", help=f"comma-separated subset of {','.join(KINDS)}")
    p.add_argument("--dump-dir", help="write stable violations here as ideal files")
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (ParseError, AlgebraError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
