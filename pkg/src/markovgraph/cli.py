"""Command-line interface.

Subcommands: gen, edgeprobs, mis, greedy, experiment <name>, bounds, verify.
Exit codes: 0 success, 1 usage error, 2 internal check failure, 3 solver
timeout (only with --strict).

Configuration for ``experiment`` can come from a flat KEY=VALUE file via
--config; explicit command-line flags always win over file values.  Every
run is fully determined by its configuration: identical configs produce
bit-identical CSV at any --workers setting.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import bernoulli, dimacs, experiments, recurrence, stable, theory
from .graphgen import (
    GraphParams,
    edge_prob_table,
    exact_subset_independence,
    sample_edge_list,
    sample_graph,
    table_envelope,
)
from .rng import derive_seed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_TIMEOUT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_grid(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _float_grid(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


_CONFIG_TYPES = {
    "n": int,
    "n_grid": _int_grid,
    "p": float,
    "r": float,
    "p_grid": _float_grid,
    "r_grid": _float_grid,
    "trials": int,
    "seed": int,
    "eps": float,
    "beta": float,
    "p1": float,
    "budget": int,
    "workers": int,
    "out": str,
    "format": str,
    "save_graphs": _bool,
    "strict": _bool,
}


def parse_config_file(path: str | Path) -> dict:
    """Flat KEY=VALUE lines; '#' starts a comment; keys match flag names."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="ascii").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected KEY=VALUE, got {raw!r}")
        key, value = (tok.strip() for tok in line.split("=", 1))
        if key not in _CONFIG_TYPES:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = _CONFIG_TYPES[key](value)
    return out


def _add_model_flags(sub, with_seed=True):
    sub.add_argument("--n", type=int, default=None, help="vertex count")
    sub.add_argument("--p", type=float, default=0.5, help="initial edge probability")
    sub.add_argument("--r", type=float, default=0.5, help="decay parameter in (0,1]")
    if with_seed:
        sub.add_argument("--seed", type=int, default=0, help="64-bit master seed")


def build_parser() -> _Parser:
    parser = _Parser(prog="markovgraph", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="sample a graph and write DIMACS + sidecar")
    _add_model_flags(gen)
    gen.add_argument("--out", required=True, help="DIMACS output path")

    probs = subs.add_parser("edgeprobs", help="exact marginal edge probabilities")
    _add_model_flags(probs, with_seed=False)
    probs.add_argument("--out", default=None)
    probs.add_argument("--format", choices=("csv", "json"), default="csv")

    mis = subs.add_parser("mis", help="exact maximum independent set")
    _add_model_flags(mis)
    mis.add_argument("--in", dest="infile", default=None, help="DIMACS input")
    mis.add_argument("--budget", type=int, default=stable.DEFAULT_BUDGET)
    mis.add_argument("--strict", action="store_true", help="exit 3 on solver timeout")

    greedy = subs.add_parser("greedy", help="greedy independent set")
    _add_model_flags(greedy)
    greedy.add_argument("--in", dest="infile", default=None, help="DIMACS input")
    greedy.add_argument(
        "--min-degree", action="store_true", help="pick minimum-degree vertices"
    )

    bounds = subs.add_parser("bounds", help="closed-form bound reports")
    _add_model_flags(bounds, with_seed=False)
    bounds.add_argument("--m", type=int, default=None, help="edge count (chromatic bound)")
    bounds.add_argument("--eps", type=float, default=1.0)

    exp = subs.add_parser("experiment", help="run a named experiment")
    exp.add_argument("name", choices=experiments.EXPERIMENT_NAMES)
    exp.add_argument("--config", default=None, help="flat KEY=VALUE config file")
    # defaults stay None so config-file values are only overridden by
    # explicitly given flags
    exp.add_argument("--n", type=int, default=None)
    exp.add_argument("--p", type=float, default=None)
    exp.add_argument("--r", type=float, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--n-grid", dest="n_grid", type=_int_grid, default=None)
    exp.add_argument("--p-grid", dest="p_grid", type=_float_grid, default=None)
    exp.add_argument("--r-grid", dest="r_grid", type=_float_grid, default=None)
    exp.add_argument("--trials", type=int, default=None)
    exp.add_argument("--eps", type=float, default=None)
    exp.add_argument("--beta", type=float, default=None)
    exp.add_argument("--p1", type=float, default=None)
    exp.add_argument("--budget", type=int, default=None)
    exp.add_argument("--workers", type=int, default=None)
    exp.add_argument("--out", default=None)
    exp.add_argument("--format", choices=("csv", "json"), default=None)
    exp.add_argument("--save-graphs", dest="save_graphs", action="store_true", default=None)
    exp.add_argument("--strict", action="store_true", default=None)

    verify = subs.add_parser("verify", help="deterministic self-checks")
    verify.add_argument("--full", action="store_true", help="run the heavy grids")

    return parser


_EXPERIMENT_DEFAULTS = {
    "n": None,
    "p": 0.5,
    "r": 0.5,
    "seed": 0,
    "n_grid": (),
    "p_grid": (),
    "r_grid": (),
    "trials": 1,
    "eps": 1.0,
    "beta": None,
    "p1": None,
    "budget": stable.DEFAULT_BUDGET,
    "workers": 1,
    "out": None,
    "format": "csv",
    "save_graphs": False,
    "strict": False,
}


def _experiment_config(args) -> experiments.ExperimentConfig:
    settings = dict(_EXPERIMENT_DEFAULTS)
    if args.config:
        settings.update(parse_config_file(args.config))
    # flags win over config-file values, but only when explicitly given
    explicit = {
        "n": args.n,
        "p": args.p,
        "r": args.r,
        "seed": args.seed,
        "n_grid": args.n_grid,
        "p_grid": args.p_grid,
        "r_grid": args.r_grid,
        "trials": args.trials,
        "eps": args.eps,
        "beta": args.beta,
        "p1": args.p1,
        "budget": args.budget,
        "workers": args.workers,
        "out": args.out,
        "format": args.format,
        "save_graphs": args.save_graphs,
        "strict": args.strict,
    }
    for key, value in explicit.items():
        if value is not None:
            settings[key] = value
    return experiments.ExperimentConfig(
        experiment=args.name,
        n=settings["n"],
        n_grid=tuple(settings["n_grid"]),
        p=settings["p"],
        r=settings["r"],
        p_grid=tuple(settings["p_grid"]),
        r_grid=tuple(settings["r_grid"]),
        trials=settings["trials"],
        master_seed=settings["seed"],
        eps=settings["eps"],
        beta=settings["beta"],
        p1=settings["p1"],
        budget=settings["budget"],
        workers=settings["workers"],
        out=settings["out"],
        fmt=settings["format"],
        save_graphs=settings["save_graphs"],
        strict=settings["strict"],
    )


def _load_graph(args):
    if args.infile:
        return dimacs.read_graph(args.infile)
    if args.n is None:
        raise ValueError("either --in or --n is required")
    return sample_graph(GraphParams(n=args.n, p=args.p, r=args.r, seed=args.seed))


def _cmd_gen(args) -> int:
    if args.n is None:
        print("gen requires --n", file=sys.stderr)
        return EXIT_USAGE
    params = GraphParams(n=args.n, p=args.p, r=args.r, seed=args.seed)
    lowers, uppers = sample_edge_list(params)
    dimacs.write_edge_list(args.out, params.n, lowers, uppers, params)
    print(f"wrote {args.out}: n={params.n} m={len(lowers)}")
    return EXIT_OK


def _cmd_edgeprobs(args) -> int:
    if args.n is None:
        print("edgeprobs requires --n", file=sys.stderr)
        return EXIT_USAGE
    params = GraphParams(n=args.n, p=args.p, r=args.r)
    table = edge_prob_table(params)
    if params.r < 1.0:
        lower_env, upper_env = table_envelope(table)
    else:
        lower_env = upper_env = np.full(len(table.probs), np.nan)
    rows = [
        (j, float(pj), float(lower_env[j - 1]), float(upper_env[j - 1]))
        for j, pj in enumerate(table.probs, start=1)
    ]
    if args.format == "json":
        payload = [dict(zip(("j", "p_j", "lower", "upper"), row)) for row in rows]
        text = json.dumps(payload, indent=2)
    else:
        lines = ["j,p_j,lower,upper"]
        for row in rows:
            lines.append(
                ",".join(
                    experiments.format_float(x) if isinstance(x, float) else str(x)
                    for x in row
                )
            )
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_mis(args) -> int:
    graph = _load_graph(args)
    res = stable.exact_alpha(graph, budget=args.budget)
    payload = {
        "n": graph.n,
        "m": graph.m,
        "complete": res.complete,
        "alpha_lower": res.lower,
        "alpha_upper": res.upper,
        "nodes": res.nodes,
    }
    if res.complete:
        payload["alpha"] = res.lower
    print(json.dumps(payload, sort_keys=True))
    if not res.complete and args.strict:
        return EXIT_TIMEOUT
    return EXIT_OK


def _cmd_greedy(args) -> int:
    graph = _load_graph(args)
    vs = (
        stable.greedy_min_degree(graph)
        if args.min_degree
        else stable.greedy_in_order(graph)
    )
    print(
        json.dumps(
            {
                "n": graph.n,
                "m": graph.m,
                "size": len(vs),
                "vertices": list(vs.vertices),
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


def _cmd_bounds(args) -> int:
    if args.n is None:
        print("bounds requires --n", file=sys.stderr)
        return EXIT_USAGE
    reports = []
    reports.append(theory.alpha_upper(args.n, args.r))
    if args.r < 1.0:
        reports.append(theory.alpha_upper_sharp(args.n, args.r, args.eps))
        lo_log, lo_prime = theory.alpha_lower(args.n, args.r, args.eps)
        reports.extend(
            [
                lo_log,
                lo_prime,
                theory.alpha_lower_prime_unsimplified(args.n, args.r, args.eps),
            ]
        )
        db = theory.degree_bounds(args.n, args.r, args.eps)
        reports.extend([db.min_degree_upper, db.max_degree_lower, db.avg_degree_target])
        reports.extend(theory.greedy_bound(args.n, args.r))
        if args.m is not None:
            reports.extend(theory.chromatic_bounds(args.n, args.m, args.r, args.eps))
    payload = [
        {"name": b.name, "value": b.value, "kind": b.kind, "validity": b.validity}
        for b in reports
    ]
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    cfg = _experiment_config(args)
    result = experiments.run(cfg)
    checks = result.summary.get("checks", {})
    for name, ok in checks.items():
        print(f"[{'PASS' if ok else 'FAIL'}] {cfg.experiment}: {name}")
    if cfg.out:
        print(f"wrote {cfg.out}")
    if cfg.strict and cfg.experiment == "alpha-vs-bounds":
        if result.summary.get("timeouts", 0) > 0:
            return EXIT_TIMEOUT
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if detail:
            line += f" ({detail})"
        print(line)
        if not ok:
            failures += 1

    # recurrence envelopes over a grid
    n_max = 10**6 if args.full else 10**4
    x1_grid = np.arange(0.05, 0.951, 0.05) if args.full else (0.05, 0.5, 0.95)
    a_grid = np.arange(0.05, 1.001, 0.05) if args.full else (0.05, 0.5, 1.0)
    viols = 0
    for x1 in x1_grid:
        for a in a_grid:
            tv, mv, sv, _ = recurrence.check_bounds_exhaustive(
                recurrence.RecurrenceParams(x1=float(x1), a=float(a), n=n_max)
            )
            viols += tv + mv + sv
    check("recurrence term/sum envelopes", viols == 0, f"n up to {n_max}")

    check(
        "harmonic number envelope",
        recurrence.check_harmonic_exhaustive(n_max) == 0,
        f"n up to {n_max}",
    )

    # subset DP vs enumeration on a small instance
    nsub = 5
    table = edge_prob_table(GraphParams(n=nsub, p=0.5, r=0.5))
    enum = experiments.enumerate_independence_probs(nsub, 0.5, 0.5)
    worst = max(
        abs(
            exact_subset_independence(
                table, [v for v in range(nsub) if (mask >> v) & 1]
            )
            - enum[mask]
        )
        for mask in range(1, 1 << nsub)
    )
    check("subset independence DP vs enumeration", worst < 1e-12, f"max diff {worst:.2e}")

    # root table residuals
    max_res = max(theory.upper_root(k / 100).residual for k in range(1, 100))
    check("root residuals <= 1e-12", max_res <= 1e-12, f"max {max_res:.2e}")

    # prime counting vs direct definition
    def is_prime(k: int) -> bool:
        if k < 2:
            return False
        return all(k % d for d in range(2, int(math.isqrt(k)) + 1))

    limit = 10**4
    pi_direct = sum(1 for k in range(2, limit + 1) if is_prime(k))
    check("prime count vs trial division", theory.prime_count(limit) == pi_direct)

    # seed derivation determinism and dispersion
    seeds = [derive_seed(12345, i) for i in range(10**4)]
    check(
        "seed substreams distinct and reproducible",
        len(set(seeds)) == len(seeds) and seeds[0] == derive_seed(12345, 0),
    )

    # sampling determinism across calls
    gp = GraphParams(n=64, p=0.5, r=0.5, seed=7)
    same = sample_graph(gp).rows == sample_graph(gp).rows
    check("graph sampling deterministic", same)

    print(f"{failures} failure(s)")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


_COMMANDS = {
    "gen": _cmd_gen,
    "edgeprobs": _cmd_edgeprobs,
    "mis": _cmd_mis,
    "greedy": _cmd_greedy,
    "bounds": _cmd_bounds,
    "experiment": _cmd_experiment,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"markovgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
