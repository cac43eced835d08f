"""Command line interface: generate sets, compute objects, verify sweeps.

Subcommands:

* ``gen``      write a generated set in the set-file format;
* ``compute``  evaluate one object (sumset, convolution, energy,
  spectrum, tail profile, q constants, empirical c) and print it;
* ``verify``   run the inequality sweep and emit a JSON or CSV report,
  optionally rendering figures;
* ``report``   re-render an existing JSON report as CSV plus figures.

Exit codes: 0 success, 1 a verification check failed, 2 usage or config
errors.  Set files hold one element per line (ints or p/q fractions,
``#`` comments); all printed exact values are unrounded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .energies import energy_fractional, energy_k
from .errors import SztlabError
from .families import (
    CONVEX_MAP_IDS,
    FAMILY_KINDS,
    FamilySpec,
    generate,
)
from .harness import (
    STATEMENT_IDS,
    SuiteConfig,
    default_config,
    load_config,
    run_suite,
)
from .operators import (
    WeightFunction,
    build_operator,
    eigen_spectrum,
    operator_to_csv,
    singular_spectrum,
)
from .report import suite_from_json, suite_to_csv, suite_to_json
from .sets import (
    convolve_minus,
    convolve_plus,
    difference_set,
    level_set,
    load_set_file,
    product_set,
    rational_str,
    sumset,
)
from .szt import estimate_c, q_of, q_prime, tail_profile

__all__ = ["main"]


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_params(pairs: list[str]) -> dict[str, object]:
    params: dict[str, object] = {}
    for pair in pairs:
        if "=" not in pair:
            raise SztlabError(f"--param needs key=value, got {pair!r}")
        key, _, raw = pair.partition("=")
        try:
            params[key.strip()] = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            params[key.strip()] = raw.strip()
    return params


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = FamilySpec(
        kind=args.kind, n=args.n, seed=args.seed, params=_parse_params(args.param)
    )
    result = generate(spec)
    body = "\n".join(rational_str(v) for v in result) + "\n"
    _write_or_print(body, args.out)
    return 0


def _load_sets(paths: list[str]):
    return [load_set_file(p) for p in paths]


def _cmd_compute_sumset(args: argparse.Namespace) -> int:
    a = load_set_file(args.a)
    b = load_set_file(args.b)
    ops = {"sum": sumset, "diff": difference_set, "product": product_set}
    result = ops[args.op](a, b)
    _write_or_print("\n".join(rational_str(v) for v in result) + "\n", args.out)
    return 0


def _cmd_compute_conv(args: argparse.Namespace) -> int:
    a = load_set_file(args.a)
    b = load_set_file(args.b)
    conv = convolve_plus(a, b) if args.op == "plus" else convolve_minus(a, b)
    lines = [f"{rational_str(x)},{count}" for x, count in conv.items()]
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_compute_energy(args: argparse.Namespace) -> int:
    sets = _load_sets(args.set)
    if args.fractional is not None:
        if len(sets) != 1:
            raise SztlabError("fractional energy takes exactly one set")
        value = energy_fractional(sets[0], args.fractional)
        _write_or_print(repr(value), args.out)
        return 0
    if len(sets) == 1:
        sets = sets * args.k
    elif args.k != len(sets) and args.k != 2:
        raise SztlabError(f"--k {args.k} does not match {len(sets)} sets")
    _write_or_print(str(energy_k(sets)), args.out)
    return 0


_SPECTRUM_WEIGHTS = ("self-corr", "self-corr-sqrt", "sum-indicator", "popular-sums")


def _spectrum_operator(args: argparse.Namespace):
    a = load_set_file(args.set)
    if args.g_file:
        g = WeightFunction.indicator(load_set_file(args.g_file), "ind[file]")
        return build_operator(g, a, kind=args.kind)
    if args.g in ("self-corr", "self-corr-sqrt"):
        power = 1.0 if args.g == "self-corr" else 0.5
        g = WeightFunction.from_multiplicities(convolve_minus(a, a), power, args.g)
        return build_operator(g, a, kind="difference")
    if args.g == "sum-indicator":
        g = WeightFunction.indicator(sumset(a, a), "ind[A+A]")
        return build_operator(g, a, kind="sum")
    conv = convolve_plus(a, a)
    threshold = Fraction(len(a) * len(a), 2 * len(conv))
    g = WeightFunction.indicator(level_set(conv, threshold), "ind[S1]")
    return build_operator(g, a, kind="sum")


def _cmd_compute_spectrum(args: argparse.Namespace) -> int:
    op = _spectrum_operator(args)
    if args.dump_matrix:
        Path(args.dump_matrix).write_text(operator_to_csv(op), encoding="utf-8")
    if op.is_symmetric:
        values = eigen_spectrum(op).values
    else:
        values = singular_spectrum(op).values
    _write_or_print("\n".join(repr(float(v)) for v in values) + "\n", args.out)
    return 0


def _cmd_compute_tail(args: argparse.Namespace) -> int:
    profile = tail_profile(load_set_file(args.a), load_set_file(args.b))
    lines = [f"{tau},{count}" for tau, count in profile.pairs]
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_compute_q(args: argparse.Namespace) -> int:
    a = load_set_file(args.set)
    candidates = _load_sets(args.candidate)
    if args.shift is not None:
        value = q_prime(a, args.shift, candidates)
    else:
        value = q_of(a, candidates)
    _write_or_print(str(value), args.out)
    return 0


def _cmd_compute_estimate_c(args: argparse.Namespace) -> int:
    a = load_set_file(args.set)
    probes = _load_sets(args.probe) if args.probe else None
    est = estimate_c(a, probes, args.alpha)
    if args.json:
        payload = {
            "value": str(est.value),
            "value_float": est.as_float(),
            "alpha": est.alpha,
            "witness_probe": est.witness_probe,
            "witness_tau": est.witness_tau,
            "witness_tail": est.witness_tail,
        }
        _write_or_print(json.dumps(payload, sort_keys=True, indent=1), args.out)
    else:
        lines = [
            str(est.value),
            f"witness: probe={est.witness_probe} tau={est.witness_tau} "
            f"tail={est.witness_tail}",
        ]
        _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _apply_overrides(cfg: SuiteConfig, args: argparse.Namespace) -> SuiteConfig:
    from dataclasses import replace

    updates: dict[str, object] = {}
    if args.only:
        updates["statements"] = tuple(args.only)
    if args.family:
        updates["families"] = tuple(args.family)
    if args.size:
        updates["sizes"] = tuple(args.size)
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.alpha is not None:
        updates["alpha"] = args.alpha
    if args.assert_constant is not None:
        updates["assert_constant"] = args.assert_constant
    if args.workers is not None:
        updates["workers"] = args.workers
    if args.timings:
        updates["include_timings"] = True
    return replace(cfg, **updates)


def _cmd_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config) if args.config else default_config()
    cfg = _apply_overrides(cfg, args)
    progress = None if args.quiet else lambda msg: print(msg, file=sys.stderr)
    suite = run_suite(cfg, progress=progress)
    if args.format == "csv":
        text = suite_to_csv(suite, include_timings=cfg.include_timings)
    else:
        text = suite_to_json(suite, include_timings=cfg.include_timings)
    _write_or_print(text, args.out)
    if args.figures:
        from .plots import render_report_figures

        for path in render_report_figures(suite, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    failures = suite.summary.get("asserted_failures", 0)
    total = suite.summary.get("asserted_reports", 0)
    print(
        f"{total - failures}/{total} asserted checks passed", file=sys.stderr
    )
    return 0 if suite.all_passed else 1


def _cmd_report(args: argparse.Namespace) -> int:
    from .plots import render_report_figures

    suite = suite_from_json(Path(args.input).read_text(encoding="utf-8"))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "report.csv"
    csv_path.write_text(
        suite_to_csv(suite, include_timings=args.timings), encoding="utf-8"
    )
    written = [csv_path] + render_report_figures(suite, out_dir)
    for path in written:
        print(f"wrote {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sztlab",
        description="exact additive-combinatorics computations and inequality sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a set from a seeded family")
    gen.add_argument("--kind", required=True, choices=FAMILY_KINDS)
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help=f"generator parameter; maps: {', '.join(CONVEX_MAP_IDS)}",
    )
    gen.add_argument("--out", help="write to file instead of stdout")
    gen.set_defaults(func=_cmd_gen)

    compute = sub.add_parser("compute", help="evaluate one object")
    csub = compute.add_subparsers(dest="object", required=True)

    c_sum = csub.add_parser("sumset", help="sum/difference/product set")
    c_sum.add_argument("--a", required=True)
    c_sum.add_argument("--b", required=True)
    c_sum.add_argument("--op", choices=("sum", "diff", "product"), default="sum")
    c_sum.add_argument("--out")
    c_sum.set_defaults(func=_cmd_compute_sumset)

    c_conv = csub.add_parser("conv", help="representation counts, x,count lines")
    c_conv.add_argument("--a", required=True)
    c_conv.add_argument("--b", required=True)
    c_conv.add_argument("--op", choices=("plus", "minus"), default="plus")
    c_conv.add_argument("--out")
    c_conv.set_defaults(func=_cmd_compute_conv)

    c_energy = csub.add_parser("energy", help="additive energy, exact")
    c_energy.add_argument("--set", action="append", required=True, metavar="FILE")
    c_energy.add_argument("--k", type=int, default=2)
    c_energy.add_argument(
        "--fractional", type=float, help="fractional moment exponent instead of k"
    )
    c_energy.add_argument("--out")
    c_energy.set_defaults(func=_cmd_compute_energy)

    c_spec = csub.add_parser("spectrum", help="operator spectrum, one value per line")
    c_spec.add_argument("--set", required=True)
    c_spec.add_argument("--g", choices=_SPECTRUM_WEIGHTS, default="self-corr")
    c_spec.add_argument("--g-file", help="indicator weight from a set file")
    c_spec.add_argument("--kind", choices=("difference", "sum"), default="difference")
    c_spec.add_argument("--dump-matrix", help="also write the matrix as CSV")
    c_spec.add_argument("--out")
    c_spec.set_defaults(func=_cmd_compute_spectrum)

    c_tail = csub.add_parser("tail", help="tail profile of A + B, tau,count lines")
    c_tail.add_argument("--a", required=True)
    c_tail.add_argument("--b", required=True)
    c_tail.add_argument("--out")
    c_tail.set_defaults(func=_cmd_compute_tail)

    c_q = csub.add_parser("q", help="q or shifted-product q' constant, exact")
    c_q.add_argument("--set", required=True)
    c_q.add_argument("--candidate", action="append", required=True, metavar="FILE")
    c_q.add_argument("--shift", help="compute q' with this shift")
    c_q.add_argument("--out")
    c_q.set_defaults(func=_cmd_compute_q)

    c_est = csub.add_parser("estimate-c", help="empirical tail constant")
    c_est.add_argument("--set", required=True)
    c_est.add_argument("--alpha", type=float, default=2.0)
    c_est.add_argument("--probe", action="append", metavar="FILE")
    c_est.add_argument("--json", action="store_true")
    c_est.add_argument("--out")
    c_est.set_defaults(func=_cmd_compute_estimate_c)

    verify = sub.add_parser("verify", help="run the inequality sweep")
    verify.add_argument("--config", help="TOML config file")
    verify.add_argument("--out", help="report path (default stdout)")
    verify.add_argument("--format", choices=("json", "csv"), default="json")
    verify.add_argument("--figures", help="also render figures into this directory")
    verify.add_argument(
        "--only", action="append", choices=STATEMENT_IDS, metavar="STATEMENT"
    )
    verify.add_argument("--family", action="append", choices=FAMILY_KINDS)
    verify.add_argument("--size", action="append", type=int)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--alpha", type=float)
    verify.add_argument("--assert-constant", type=float, dest="assert_constant")
    verify.add_argument("--workers", type=int)
    verify.add_argument("--timings", action="store_true")
    verify.add_argument("--quiet", action="store_true")
    verify.set_defaults(func=_cmd_verify)

    report = sub.add_parser("report", help="render CSV and figures from a JSON report")
    report.add_argument("--input", required=True)
    report.add_argument("--out-dir", required=True)
    report.add_argument("--timings", action="store_true")
    report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SztlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
