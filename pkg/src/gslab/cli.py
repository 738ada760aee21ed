"""Command-line entry point: ``gslab <command> ...``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import estimators, harness, theory
from .degree import empirical_distribution, write_distribution
from .generator import generate, realize_sequence, rewire_to_assortativity
from .graph import load_edge_list, save_edge_list
from .samplers import degree_weighted_start, mhrw, random_walk, rds, traverse, uniform_sample, uniform_start
from .samplers import weighted_wor_sample
from .theory import NonConvergence

EXIT_USAGE, EXIT_DATA, EXIT_CONVERGENCE = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(args) -> int:
    env = os.environ.get("GSL_SEED")
    text = env if env else args.seed
    if text is None:
        return harness.DEFAULT_SEED
    try:
        seed = int(str(text), 0)
    except ValueError:
        raise UsageError(f"bad seed {text!r}") from None
    if not 0 <= seed < 1 << 64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    return seed


def _method(text: str) -> harness.Method:
    try:
        return harness.Method.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _f_list(text: str) -> list[float]:
    try:
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --f list {text!r}") from None


@contextmanager
def _output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _read_graph(path: str):
    with open(path) as fh:
        return load_edge_list(fh)


def cmd_generate(args) -> int:
    dist = harness.load_distribution(args.dist)
    rng = np.random.default_rng(_seed(args))
    g = generate(realize_sequence(dist, args.nodes, rng), rng)
    with _output(args.out) as fh:
        save_edge_list(g, fh)
    return 0


def cmd_rewire(args) -> int:
    g = _read_graph(args.graph)
    rng = np.random.default_rng(_seed(args))
    res = rewire_to_assortativity(g, args.assortativity, args.tolerance, args.max_steps, rng)
    with _output(args.out) as fh:
        save_edge_list(res.graph, fh)
    print(
        f"assortativity {res.initial_assortativity:.6f} -> {res.assortativity:.6f} "
        f"(target {res.target}, {res.accepted} swaps / {res.steps} proposals)",
        file=sys.stderr,
    )
    if not res.converged:
        print("target not reached within max steps", file=sys.stderr)
        return EXIT_CONVERGENCE
    return 0


def cmd_sample(args) -> int:
    g = _read_graph(args.graph)
    m = _method(args.method)
    rng = np.random.default_rng(_seed(args))
    n = g.node_count
    if m.kind == "traversal":
        if args.f is None:
            raise UsageError("--f is required for traversals")
        f = _f_list(args.f)[-1]
        if m.name == "WOR":
            seq = weighted_wor_sample(g.degrees, max(1, math.ceil(f * n - 1e-9)), rng)
        else:
            start = args.start if args.start is not None else uniform_start(g, rng, g.largest_component())
            seq = traverse(g, m.policy(), start, f, rng, across_components=args.across_components)
    else:
        if args.steps is None:
            raise UsageError("--steps is required for walks and UNI")
        if m.kind == "uniform":
            seq = uniform_sample(g, args.steps, rng)
        else:
            start = args.start if args.start is not None else degree_weighted_start(g, rng)
            burn = args.burn_in if args.burn_in is not None else 10 * n
            if m.name == "RW":
                seq = random_walk(g, start, args.steps, burn, rng)
            elif m.name == "MHRW":
                seq = mhrw(g, start, args.steps, burn, rng)
            else:
                seq = rds(g, start, int(m.param), args.steps, rng)
    with _output(args.out) as fh:
        seq.write_csv(fh)
    return 0


def cmd_predict(args) -> int:
    dist = harness.load_distribution(args.dist)
    curve = theory.bias_curve(dist, _f_list(args.f))
    with _output(args.out) as fh:
        curve.write_csv(fh, per_degree=args.per_degree)
    return 0


def _read_sample_degrees(path: str) -> list[int]:
    degrees = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if "degree" not in header:
            raise ValueError(f"{path}: missing 'degree' column")
        col = header.index("degree")
        for lineno, line in enumerate(fh, start=2):
            if line.strip():
                try:
                    degrees.append(int(line.split(",")[col]))
                except (ValueError, IndexError):
                    raise ValueError(f"{path}: line {lineno}: bad row") from None
    return degrees


def cmd_correct(args) -> int:
    if (args.dist is None) == (args.sample is None):
        raise UsageError("give exactly one of --dist or --sample")
    if args.sample:
        q_hat = empirical_distribution(_read_sample_degrees(args.sample))
    else:
        q_hat = harness.load_distribution(args.dist)
    kind = args.kind
    if kind == "traversal":
        if args.f is None:
            raise UsageError("--f is required for traversal correction")
        res = estimators.correct_traversal(q_hat, _f_list(args.f)[-1])
        p_hat = res.p_hat
        print(f"t* = {res.t_star!r} after {res.iterations} bisections", file=sys.stderr)
    elif kind == "rw":
        p_hat = estimators.correct_rw(q_hat)
    else:
        p_hat = estimators.correct_mhrw(q_hat)
    with _output(args.out) as fh:
        write_distribution(p_hat, fh)
    return 0


def cmd_experiment(args) -> int:
    overrides = dict(
        dist=args.dist,
        nodes=args.nodes,
        replicates=args.replicates,
        methods=tuple(_method(m).label for m in args.method) if args.method else None,
        f_grid=tuple(_f_list(args.f)) if args.f else None,
        assortativity=args.assortativity,
        out=args.out,
        workers=args.workers,
    )
    if args.seed is not None or os.environ.get("GSL_SEED"):
        overrides["seed"] = _seed(args)
    if args.config:
        cfg = harness.load_config(args.config, **overrides)
    else:
        cfg = harness.ExperimentConfig(**{k: v for k, v in overrides.items() if v is not None})
    if cfg.out is None:
        raise UsageError("--out is required (directory for the result CSVs)")
    res = harness.run_experiment(cfg)
    res.write_csv(sys.stdout)
    return 0


def cmd_pipeline(args) -> int:
    g = _read_graph(args.graph)
    if _method(args.method).kind == "traversal":
        if args.f is None:
            raise UsageError("--f is required for traversals")
        amount = _f_list(args.f)[-1]
    else:
        if not args.steps:
            raise UsageError("--steps is required for walks and UNI")
        amount = args.steps
    s = harness.pipeline_on_graph(g, args.method, amount, _seed(args), burn_in=args.burn_in)
    with _output(args.out) as fh:
        fh.write("method,samples,coverage,observed,expected,corrected\n")
        fh.write(f"{s.method},{s.samples},{s.coverage!r},{s.observed!r},{s.expected!r},{s.corrected!r}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gslab", description="Graph sampling bias laboratory.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, seed=True):
        if seed:
            sp.add_argument("--seed", help="64-bit unsigned seed (GSL_SEED overrides)")
        sp.add_argument("--out", help="output path ('-' or omitted: stdout)")

    sp = sub.add_parser("generate", help="degree distribution -> configuration-model edge list")
    sp.add_argument("--dist", required=True, help="PATH or preset:NAME")
    sp.add_argument("--nodes", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("rewire", help="degree-preserving rewiring toward a target assortativity")
    sp.add_argument("graph", help="edge-list file")
    sp.add_argument("--assortativity", type=float, required=True)
    sp.add_argument("--tolerance", type=float, default=0.02)
    sp.add_argument("--max-steps", type=int, default=2_000_000)
    common(sp)
    sp.set_defaults(func=cmd_rewire)

    sp = sub.add_parser("sample", help="run one sampler on an edge list, write the visit CSV")
    sp.add_argument("graph", help="edge-list file")
    sp.add_argument("--method", required=True, help="BFS, DFS, FF[:p], SBS[:n], RW, MHRW, RDS[:n], UNI, WOR")
    sp.add_argument("--f", help="coverage fraction for traversals")
    sp.add_argument("--steps", type=int, help="walk steps / UNI draws")
    sp.add_argument("--start", type=int)
    sp.add_argument("--burn-in", type=int)
    sp.add_argument("--across-components", action="store_true",
                    help="coverage relative to |V|, restarting in new components")
    common(sp)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("predict", help="expected traversal bias curve for a distribution")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--f", required=True, help="comma-separated coverage grid")
    sp.add_argument("--per-degree", action="store_true", help="add q_k columns")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("correct", help="corrected degree distribution from an observed one")
    sp.add_argument("--dist", help="observed distribution file")
    sp.add_argument("--sample", help="visit CSV from 'sample'")
    sp.add_argument("--f", help="real coverage of the traversal")
    sp.add_argument("--kind", choices=("traversal", "rw", "mhrw"), default="traversal")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_correct)

    sp = sub.add_parser("experiment", help="Monte Carlo experiment from a config file and/or flags")
    sp.add_argument("config", nargs="?", help="flat key: value config file")
    sp.add_argument("--dist")
    sp.add_argument("--nodes", type=int)
    sp.add_argument("--replicates", type=int)
    sp.add_argument("--method", action="append", help="repeatable")
    sp.add_argument("--f")
    sp.add_argument("--assortativity", type=float)
    sp.add_argument("--workers", type=int)
    common(sp)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("pipeline", help="sampled / expected / corrected mean degree on an edge list")
    sp.add_argument("graph")
    sp.add_argument("--method", required=True)
    sp.add_argument("--f")
    sp.add_argument("--steps", type=int)
    sp.add_argument("--burn-in", type=int)
    common(sp)
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gslab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergence as exc:
        print(f"gslab: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (ValueError, OSError, KeyError, IndexError) as exc:
        print(f"gslab: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
