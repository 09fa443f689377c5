"""Command-line surface.

Subcommands: sample, embed, common, threshold, region, moments, verify,
experiment, rado.  `--json` switches every report to a stable JSON object;
plain output is for humans.  Exit codes: 0 success, 1 property-suite failure,
2 usage or validation error, 3 budget-dominated or flagged-invalid result.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import edgegraph, experiments, moments, rado, thresholds, verify
from .errors import BudgetExceededError, IsophaseError
from .graphs import EdgeLaw, Graph, read_graph, sample_gnp, to_text
from .isosearch import (
    BUDGET_EXCEEDED,
    DEFAULT_BUDGET,
    FOUND,
    common_count,
    common_exists,
    embed_count,
    embed_exists,
    max_common_size,
)

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _load_or_sample(args, prefix: str) -> Graph:
    path = getattr(args, prefix)
    if path is not None:
        return read_graph(path)
    n = getattr(args, f"{prefix}_n")
    p = getattr(args, f"{prefix}_p")
    seed = getattr(args, f"{prefix}_seed")
    if n is None:
        raise IsophaseError(f"give --{prefix} FILE or --{prefix}-n/--{prefix}-p/--{prefix}-seed")
    return sample_gnp(EdgeLaw(n, p, seed))


def _add_graph_source(parser: argparse.ArgumentParser, prefix: str, role: str) -> None:
    parser.add_argument(f"--{prefix}", metavar="FILE", help=f"{role} graph file")
    parser.add_argument(f"--{prefix}-n", type=int, help=f"sample the {role} on this many vertices")
    parser.add_argument(f"--{prefix}-p", type=float, default=0.5, help=f"{role} edge probability")
    parser.add_argument(f"--{prefix}-seed", type=int, default=0, help=f"{role} sample seed")


def cmd_sample(args) -> int:
    g = sample_gnp(EdgeLaw(args.n, args.p, args.seed))
    text = to_text(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_embed(args) -> int:
    x = _load_or_sample(args, "pattern")
    y = _load_or_sample(args, "host")
    payload: dict = {"pattern_n": x.n, "host_n": y.n, "budget": args.budget}
    code = EXIT_OK
    if args.count:
        try:
            res = embed_count(x, y, args.budget)
            payload.update(count=str(res.value), nodes=res.nodes, complete=True)
        except BudgetExceededError as exc:
            payload.update(count=str(exc.partial_count), nodes=exc.nodes, complete=False)
            code = EXIT_BUDGET
    else:
        out = embed_exists(x, y, args.budget)
        payload.update(status=out.status, nodes=out.nodes)
        if out.status == FOUND:
            payload["witness"] = list(out.witness.image)
        elif out.status == BUDGET_EXCEEDED:
            code = EXIT_BUDGET
    _emit(payload, args.json)
    return code


def cmd_common(args) -> int:
    x = _load_or_sample(args, "x")
    y = _load_or_sample(args, "y")
    payload: dict = {"n": x.n, "budget": args.budget}
    code = EXIT_OK
    if args.max:
        res = max_common_size(x, y, args.budget)
        payload.update(
            best_m=res.best_m,
            smallest_refuted=res.smallest_refuted,
            conclusive=res.conclusive,
            nodes=res.nodes,
        )
        if res.witness is not None:
            payload["witness_domain"] = list(res.witness.domain)
            payload["witness_image"] = list(res.witness.image)
        if not res.conclusive:
            code = EXIT_BUDGET
    elif args.count:
        payload["m"] = args.m
        try:
            res = common_count(x, y, args.m, args.budget)
            payload.update(count=str(res.value), nodes=res.nodes, complete=True)
        except BudgetExceededError as exc:
            payload.update(count=str(exc.partial_count), nodes=exc.nodes, complete=False)
            code = EXIT_BUDGET
    else:
        payload["m"] = args.m
        out = common_exists(x, y, args.m, args.budget)
        payload.update(status=out.status, nodes=out.nodes)
        if out.status == FOUND:
            payload["witness_domain"] = list(out.witness.domain)
            payload["witness_image"] = list(out.witness.image)
        elif out.status == BUDGET_EXCEEDED:
            code = EXIT_BUDGET
    _emit(payload, args.json)
    return code


def _params_payload(params: thresholds.ModelParams) -> dict:
    return {
        "p": params.p,
        "q": params.q,
        "tau": params.tau,
        "lam": params.lam,
        "omega": params.omega,
        "beta": params.beta,
        "gamma": params.gamma,
        "phat": params.phat,
    }


def cmd_threshold(args) -> int:
    params = thresholds.derive_params(args.p, args.q)
    cn = args.cn if args.cn is not None else thresholds.ThresholdConfig.default(args.n).cn
    report = thresholds.threshold_report(args.n, params, cn)
    payload = {
        "n": args.n,
        "cn": cn,
        "cn_over_log_n": cn / math.log(args.n),
        "m_minus": report.m_minus,
        "m_plus": report.m_plus,
        "m_star": report.m_star,
        "m_tilde": report.m_tilde,
        "r_n": report.r_n,
        "residual": report.residual,
        "in_region": report.in_region,
        **_params_payload(params),
    }
    _emit(payload, args.json)
    return EXIT_OK


def cmd_region(args) -> int:
    inside = thresholds.in_admissible_region(args.p, args.q)
    p_star, q_star = thresholds.region_corner()
    payload = {
        "p": args.p,
        "q": args.q,
        "inside": inside,
        "membership": "inside" if inside else "outside",
        "corner_p": p_star,
        "corner_q": q_star,
        **_params_payload(thresholds.derive_params(args.p, args.q)),
    }
    _emit(payload, args.json)
    return EXIT_OK


def cmd_moments(args) -> int:
    if args.workers is not None:
        moments.set_enumeration_workers(args.workers)
    params = thresholds.derive_params(args.p, args.q)
    variant = edgegraph.EMBEDDING if args.variant == "embed" else edgegraph.COMMON
    n, m = args.n, args.m
    if variant == edgegraph.EMBEDDING:
        log_en = moments.expected_embeddings_log(n, m)
        space = moments.injection_pair_space(n, m)
    else:
        log_en = moments.expected_common_log(n, m, params)
        space = moments.partial_space(n, m) ** 2
    payload: dict = {
        "n": n,
        "m": m,
        "variant": args.variant,
        "pair_space": space,
        "expected": {"log": log_en, "value": math.exp(log_en)},
    }
    if not args.first_only:
        en2 = moments.second_moment_exact(n, m, params, variant, args.guard)
        ratio = en2 * math.exp(-2.0 * log_en)
        payload["second_moment"] = {"log": math.log(en2), "value": en2}
        payload["ratio"] = {"log": math.log(ratio), "value": ratio}
        if variant == edgegraph.EMBEDDING:
            bounds = moments.s_bound(n, m, args.p, args.c, "exact", args.guard)
            payload["s_bound"] = {
                "c": bounds.c,
                "s_total": bounds.s_total,
                "s_one": bounds.s_one,
                "s_two": bounds.s_two,
                "psi_m": bounds.psi_m,
            }
        elif args.decompose:
            dec = moments.ratio_decomposition(n, m, params, args.c, args.guard)
            payload["decomposition"] = {
                "disjoint": dec.disjoint,
                "full": dec.full,
                "low_overlap": dec.low_overlap,
                "high_overlap": dec.high_overlap,
                "swapped": dec.swapped,
                "total": dec.total,
                "lower_bound_term": dec.lower_bound_term,
            }
    _emit(payload, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = verify.run_suite(args.suite, args.pairs, args.seed)
    ok = all(rep.ok for rep in reports)
    if args.json:
        payload = {
            "suites": [
                {
                    "name": rep.name,
                    "cases": rep.cases,
                    "checks": rep.checks,
                    "ok": rep.ok,
                    "violations": rep.violations,
                }
                for rep in reports
            ],
            "ok": ok,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for rep in reports:
            print(rep.summary())
            for violation in rep.violations[:10]:
                print(f"  {violation}")
    return EXIT_OK if ok else EXIT_SUITE_FAILURE


def cmd_experiment(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = experiments.ExperimentConfig.from_json(fh.read())
    except (OSError, IsophaseError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.workers is not None:
        config = experiments.ExperimentConfig(
            **{**_config_kwargs(config), "workers": args.workers}
        )
    if config.q_overridden:
        print("warning: embed sweep with q != 1/2 is outside the sharp-transition hypothesis",
              file=sys.stderr)
    result = experiments.run_sweep(config)
    if config.csv_path:
        experiments.export(result, "csv", config.csv_path)
    if config.jsonl_path:
        experiments.export(result, "jsonl", config.jsonl_path)
    for row in result.rows:
        print(
            f"{row.problem} n={row.n} m={row.m}: p_hat={row.p_hat:.3f} "
            f"[{row.ci_low:.3f}, {row.ci_high:.3f}] successes={row.successes} "
            f"unknowns={row.unknowns} mean_nodes={row.mean_nodes:.1f}"
        )
    for n, crossing in result.empirical_thresholds.items():
        print(f"empirical threshold n={n}: {crossing}")
    if result.invalid:
        print("sweep flagged invalid: a cell exceeded 5% unknowns", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _config_kwargs(config: experiments.ExperimentConfig) -> dict:
    return {
        "problem": config.problem,
        "n_values": config.n_values,
        "p": config.p,
        "q": config.q,
        "trials": config.trials,
        "master_seed": config.master_seed,
        "workers": config.workers,
        "node_budget": config.node_budget,
        "m_values": config.m_values,
        "m_offsets": config.m_offsets,
        "csv_path": config.csv_path,
        "jsonl_path": config.jsonl_path,
        "q_overridden": config.q_overridden,
    }


def cmd_rado(args) -> int:
    if args.action == "adjacent":
        a, b = int(args.args[0]), int(args.args[1])
        adjacent = rado.bit_adjacent(a, b)
        _emit({"a": a, "b": b, "adjacent": adjacent}, args.json)
        return EXIT_OK
    if args.action == "encode":
        s = rado.parse_set_literal(args.args[0])
        _emit({"set": repr(s), "code": str(rado.ackermann_encode(s))}, args.json)
        return EXIT_OK
    if args.action == "decode":
        s = rado.ackermann_decode(int(args.args[0]))
        _emit({"code": args.args[0], "set": repr(s)}, args.json)
        return EXIT_OK
    if args.action == "witness":
        u_set = {int(v) for v in args.adjacent.split(",") if v != ""}
        v_set = {int(v) for v in args.nonadjacent.split(",") if v != ""}
        z = rado.extension_witness(u_set, v_set)
        _emit({"adjacent_to": sorted(u_set), "nonadjacent_to": sorted(v_set), "witness": str(z)},
              args.json)
        return EXIT_OK
    raise IsophaseError(f"unknown rado action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isophase",
        description="Exact solvers and threshold calculus for random-graph matching transitions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="emit a G(n, p) graph file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("embed", help="induced-subgraph search (pattern into host)")
    _add_graph_source(sp, "pattern", "pattern")
    _add_graph_source(sp, "host", "host")
    sp.add_argument("--count", action="store_true", help="count all embeddings")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("common", help="common induced subgraph of two graphs")
    _add_graph_source(sp, "x", "first")
    _add_graph_source(sp, "y", "second")
    sp.add_argument("--m", type=int, default=1, help="target subgraph size")
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--max", action="store_true", help="find the maximum size")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_common)

    sp = sub.add_parser("threshold", help="transition sizes and derived constants")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--q", type=float, default=0.5)
    sp.add_argument("--cn", type=float, help="slack constant (default: log log n)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("region", help="admissible-region membership and corner")
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_region)

    sp = sub.add_parser("moments", help="exact moments, ratio and bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--q", type=float, default=0.5)
    sp.add_argument("--variant", choices=("embed", "common"), default="common")
    sp.add_argument("--c", type=float, default=0.75, help="split constant")
    sp.add_argument("--guard", type=int, default=moments.DEFAULT_PAIR_GUARD)
    sp.add_argument("--first-only", action="store_true", help="skip the pair enumeration")
    sp.add_argument("--decompose", action="store_true", help="per-class ratio breakdown")
    sp.add_argument("--workers", type=int, help="threads for the pair enumeration")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("verify", help="run the randomized identity suites")
    sp.add_argument("--suite", choices=("edgegraph", "thresholds", "rado", "all"),
                    default="all")
    sp.add_argument("--pairs", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("experiment", help="run a Monte Carlo sweep from a JSON config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--workers", type=int,
                    default=int(os.environ.get("ISO_PHASE_WORKERS", "0")) or None)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("rado", help="universal-graph queries")
    sp.add_argument("action", choices=("adjacent", "encode", "decode", "witness"))
    sp.add_argument("args", nargs="*")
    sp.add_argument("--adjacent", default="", help="comma list for witness")
    sp.add_argument("--nonadjacent", default="", help="comma list for witness")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_rado)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except IsophaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
