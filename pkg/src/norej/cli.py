"""Command-line entry point.

Subcommands: gen (write an instance file), solve (print the offline optimum),
simulate (Monte Carlo ratio report: CSV + JSON summary), bounds (analytic
constants), verify (per-step bound suites and the selective-phase stopping
point; nonzero exit on any failure), trace (single fully traced run).
Worker count is capped by the NOREJ_THREADS environment variable (0 = auto);
outputs are identical for any value.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis
from .engines import dispatch
from .errors import NorejError
from .generators import FAMILIES, FamilySpec, gen_instance
from .instances import (
    GeneralInstance,
    RoommateInstance,
    sample_arrival_order,
    validate_instance,
)
from .io import (
    parse_instance_file,
    write_instance_file,
    write_summary_json,
    write_trace_jsonl,
    write_trials_csv,
)
from .rng import trial_stream
from .solvers import opt_bipartite_capacitated, opt_general_perfect
from .solvers.bruteforce import opt_roommate_bruteforce, opt_roommate_upper_bound

_KIND_FOR_ALG = {"alg1": "bipartite1", "alg2": "bipartite2",
                 "alg3": "general", "alg4": "roommate"}


def _parse_params(spec: str | None) -> dict:
    out: dict = {}
    if not spec:
        return out
    for part in spec.split(","):
        if not part:
            continue
        key, _, val = part.partition("=")
        try:
            out[key] = float(val)
        except ValueError:
            out[key] = val
    return out


def _load_instance(args, kind_hint: str | None = None):
    if args.instance:
        raw = parse_instance_file(args.instance)
        if getattr(args, "odd_mode", False) and raw.get("kind") == "general":
            raw["odd_mode"] = True
        inst = validate_instance(raw)
        return inst, args.instance
    if not args.family:
        raise NorejError("need --instance or --family")
    kind = args.kind or kind_hint
    if kind is None:
        raise NorejError("need --kind (or --alg) with --family")
    if args.n is None:
        raise NorejError("need --n with --family")
    spec = FamilySpec(family=args.family, kind=kind, n=args.n,
                      seed=args.seed, params=_parse_params(args.params))
    label = f"{args.family}/{kind}/n={args.n}/seed={args.seed}"
    return gen_instance(spec), label


def _cmd_gen(args) -> int:
    if not args.out:
        raise NorejError("gen needs --out")
    inst, _label = _load_instance(args)
    write_instance_file(inst, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_solve(args) -> int:
    inst, label = _load_instance(args, kind_hint=_KIND_FOR_ALG.get(args.alg or ""))
    if isinstance(inst, RoommateInstance):
        if inst.n <= 12:
            val, method = opt_roommate_bruteforce(inst).utility, "brute-force"
        else:
            val, method = opt_roommate_upper_bound(inst), "rv-mu-upper-bound"
    elif isinstance(inst, GeneralInstance):
        val = opt_general_perfect(inst, range(1, inst.n + 1)).weight
        method = "exact-blossom"
    else:
        val = opt_bipartite_capacitated(inst, range(1, inst.n_online + 1)).weight
        method = "exact-capacitated-assignment"
    print(f"opt {val!r} method {method} instance {label}")
    return 0


def _cmd_simulate(args) -> int:
    if not args.alg:
        raise NorejError("simulate needs --alg")
    inst, label = _load_instance(args, kind_hint=_KIND_FOR_ALG[args.alg])
    report = analysis.estimate_ratio(args.alg, inst, args.trials, args.seed,
                                     instance_label=label)
    if args.out:
        write_trials_csv(report, args.out)
        config = {k: v for k, v in vars(args).items()
                  if k != "func" and isinstance(v, (str, int, float, bool, type(None)))}
        write_summary_json(report, str(args.out) + ".summary.json", config=config)
    flag = " zero-opt" if report.zero_opt else ""
    print(f"{args.alg} {label}: mean ratio {report.mean_ratio:.6f} "
          f"+- {report.ci99:.6f} (99% CI, {report.trials} trials, "
          f"opt={report.opt_value:.6f} via {report.opt_method}){flag}")
    return 0


def _cmd_bounds(args) -> int:
    algs = [args.alg] if args.alg else ["alg1", "alg2", "alg3", "alg4"]
    for alg in algs:
        if alg == "alg4":
            mix = analysis.alg4_mix_bound(0.58, 4.62, 3.34)
            print(f"alg4 mix bound min(0.58/4.62, 0.42/3.34) = {mix:.6f} "
                  f"(balance point p* = {4.62 / (4.62 + 3.34):.4f})")
        else:
            val = analysis.analytic_constant(alg, args.resolution)
            print(f"{alg} analytic constant = {val:.6f} "
                  f"(1/{1.0 / val:.4f}-competitive, {args.resolution} grid points)")
    return 0


def _parse_perturb(spec: str | None) -> tuple[str, float] | None:
    if not spec:
        return None
    lemma, _, factor = spec.partition(":")
    return lemma, float(factor)


def _cmd_verify(args) -> int:
    failures = 0
    perturb = _parse_perturb(args.perturb_bound)
    if args.suite in ("lemmas", "all"):
        for fam in ("uniform", "single-heavy-edge"):
            for lemma in analysis.LEMMA_IDS:
                alg = lemma.split("-")[0]
                kind = _KIND_FOR_ALG[alg]
                n = args.n_general if alg == "alg3" else args.n
                spec = FamilySpec(family=fam, kind=kind, n=n, seed=args.seed)
                inst = gen_instance(spec)
                label = f"{fam}/{kind}/n={n}"
                scale = 1.0
                if perturb and perturb[0] == lemma:
                    scale = perturb[1]
                rep = analysis.check_lemma(
                    lemma, inst, args.trials, args.seed, instance_label=label,
                    bound_scale=scale, bank_key=(alg, fam, n, args.trials, args.seed))
                status = "pass" if rep.passed else "FAIL"
                if not rep.passed:
                    failures += 1
                print(f"[{status}] {lemma:14s} {label:34s} "
                      f"worst margin {rep.worst_margin():+.5f}")
    if args.suite in ("ks", "all"):
        for rep in analysis.measure_ks(args.n_ks, args.trials_ks, args.seed,
                                       delta=args.delta):
            ok_freq = rep.violation_freq <= 0.05
            ok_mean = abs(rep.mean_ks_over_n - 12 / 17) <= 0.03
            ok = ok_freq and ok_mean
            if not ok:
                failures += 1
            print(f"[{'pass' if ok else 'FAIL'}] k_s {rep.family:18s} n={rep.n} "
                  f"mean k_s/n={rep.mean_ks_over_n:.4f} "
                  f"P(k_s < {rep.violation_threshold:.4f} n)={rep.violation_freq:.4f}")
    print(f"verify: {failures} failure(s)")
    return 1 if failures else 0


def _cmd_trace(args) -> int:
    if not args.alg:
        raise NorejError("trace needs --alg")
    inst, label = _load_instance(args, kind_hint=_KIND_FOR_ALG[args.alg])
    stream = trial_stream(args.seed, args.trial)
    order = sample_arrival_order(dispatch.online_size(inst), stream)
    result = dispatch.run_algorithm(args.alg, inst, stream, order)
    if args.trace_out:
        write_trace_jsonl(result, args.trace_out)
        print(f"wrote {args.trace_out}")
    print(f"{args.alg} {label}: total {result.total!r} "
          f"k_s={result.k_s} branch={result.branch}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="norej",
        description="No-rejection online matching: engines, solvers, verification")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, trials_default=100):
        sp.add_argument("--alg", choices=("alg1", "alg2", "alg3", "alg4"))
        sp.add_argument("--instance")
        sp.add_argument("--family", choices=FAMILIES)
        sp.add_argument("--kind", choices=("bipartite1", "bipartite2",
                                           "general", "roommate"))
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int, help="room count (roommate); implies --n 2m")
        sp.add_argument("--params", help="family params, e.g. rho=0.5,heavy=2")
        sp.add_argument("--trials", type=int, default=trials_default)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--odd-mode", action="store_true")
        sp.add_argument("--out")

    sp = sub.add_parser("gen", help="generate an instance file")
    common(sp)
    sp.set_defaults(func=_cmd_gen)

    sp = sub.add_parser("solve", help="print the offline optimum")
    common(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("simulate", help="Monte Carlo competitive-ratio report")
    common(sp, trials_default=1000)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("bounds", help="analytic constants from the proofs")
    sp.add_argument("--alg", choices=("alg1", "alg2", "alg3", "alg4"))
    sp.add_argument("--resolution", type=int, default=100_000)
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("verify", help="per-step bound and k_s suites")
    sp.add_argument("--suite", choices=("lemmas", "ks", "all"), default="all")
    sp.add_argument("--n", type=int, default=50, help="bipartite size")
    sp.add_argument("--n-general", type=int, default=34)
    sp.add_argument("--n-ks", type=int, default=340)
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--trials-ks", type=int, default=400)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--perturb-bound", metavar="LEMMA:FACTOR",
                    help="scale one analytic bound (negative-control hook)")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("trace", help="single run with full trace export")
    common(sp, trials_default=1)
    sp.add_argument("--trial", type=int, default=0)
    sp.add_argument("--trace-out")
    sp.set_defaults(func=_cmd_trace)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "m", None) and not args.n:
        args.n = 2 * args.m
    try:
        return args.func(args)
    except NorejError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
