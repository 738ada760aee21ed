"""Monte Carlo experiments and the sample -> predict -> correct pipeline."""

from __future__ import annotations

import math
import os
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from . import estimators, theory
from .degree import DegreeDistribution, average_distributions, moments, read_distribution, tv_distance
from .generator import generate, realize_sequence, rewire_to_assortativity
from .graph import Multigraph
from .samplers import (
    TraversalPolicy,
    degree_weighted_start,
    mhrw,
    one_hop_start,
    random_walk,
    rds,
    traverse,
    uniform_sample,
    uniform_start,
    weighted_wor_sample,
)

DEFAULT_SEED = 20100315
HEAVY_TAIL_EXPONENT = 2.5
HEAVY_TAIL_KMAX = 316

TRAVERSALS = ("BFS", "DFS", "FF", "SBS")
WALKS = ("RW", "MHRW", "RDS")
METHODS = TRAVERSALS + WALKS + ("UNI", "WOR")


# -- distributions -----------------------------------------------------------------


def heavy_tail_preset(exponent: float = HEAVY_TAIL_EXPONENT, kmax: int = HEAVY_TAIL_KMAX) -> DegreeDistribution:
    k = np.arange(1, kmax + 1)
    return DegreeDistribution(dict(zip(k.tolist(), (k.astype(float) ** -exponent).tolist())))


def preset(name: str) -> DegreeDistribution:
    """Named distributions: ``heavy-tail``, ``two-point``, ``regular-K``, ``poisson-MEAN``."""
    if name == "heavy-tail":
        return heavy_tail_preset()
    if name == "two-point":
        return DegreeDistribution({1: 0.5, 3: 0.5})
    if name.startswith("regular-"):
        return DegreeDistribution({int(name.split("-", 1)[1]): 1.0})
    if name.startswith("poisson-"):
        lam = float(name.split("-", 1)[1])
        k = np.arange(0, int(lam + 12 * math.sqrt(lam) + 20))
        logp = k * math.log(lam) - lam - np.array([math.lgamma(i + 1) for i in k])
        return DegreeDistribution(dict(zip(k.tolist(), np.exp(logp).tolist())))
    raise ValueError(f"unknown preset {name!r}")


def load_distribution(source: str) -> DegreeDistribution:
    """``preset:NAME`` or a path to a ``k value`` file."""
    if source.startswith("preset:"):
        return preset(source[len("preset:"):])
    with open(source) as fh:
        return read_distribution(fh)


def is_stand_in(source: str) -> bool:
    return source == "preset:heavy-tail"


# -- seeds ---------------------------------------------------------------------

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def child_seed(master: int | np.ndarray, replicate: int | np.ndarray):
    """SplitMix64 of ``master + (replicate + 1) * golden``.

    For a fixed master the map is a bijection of the replicate index modulo
    2**64, so child seeds within one run never collide. Accepts numpy uint64
    arrays for bulk checks.
    """
    if isinstance(replicate, np.ndarray) or isinstance(master, np.ndarray):
        with np.errstate(over="ignore"):
            z = np.uint64(master) + (np.asarray(replicate, dtype=np.uint64) + np.uint64(1)) * np.uint64(_GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
            return z ^ (z >> np.uint64(31))
    z = (int(master) + (int(replicate) + 1) * _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed, *key])


# -- configuration -------------------------------------------------------------


@dataclass(frozen=True)
class Method:
    name: str
    param: float | int | None = None

    @classmethod
    def parse(cls, text: str) -> "Method":
        name, _, arg = text.strip().partition(":")
        name = name.strip().upper()
        if name == "WOR-ORACLE":
            name = "WOR"
        if name not in METHODS:
            raise ValueError(f"unknown method {text!r}")
        if name == "FF":
            return cls(name, float(arg) if arg else 0.5)
        if name in ("SBS", "RDS"):
            n = int(arg) if arg else 3
            if n < 1:
                raise ValueError(f"{name} needs n >= 1")
            return cls(name, n)
        if arg:
            raise ValueError(f"method {name} takes no parameter")
        return cls(name)

    @property
    def label(self) -> str:
        if self.param is None:
            return self.name
        return f"{self.name}:{self.param:g}" if isinstance(self.param, float) else f"{self.name}:{self.param}"

    @property
    def kind(self) -> str:
        if self.name in TRAVERSALS or self.name == "WOR":
            return "traversal"
        if self.name == "UNI":
            return "uniform"
        return "walk"

    def policy(self) -> TraversalPolicy:
        if self.name == "FF":
            return TraversalPolicy.forest_fire(self.param)
        if self.name == "SBS":
            return TraversalPolicy.snowball(self.param)
        return TraversalPolicy(self.name)


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative Monte Carlo run.

    ``traversal_start`` is ``rw1`` (one walk hop from a uniform node),
    ``uniform-lcc`` or ``weighted``. ``walk_start`` is ``stationary``
    (degree-weighted for RW/RDS, uniform for MHRW) or ``uniform``.
    ``burn_in`` of ``None`` means 0 for stationary starts and one hop
    otherwise.
    """

    dist: str = "preset:heavy-tail"
    nodes: int = 10_000
    replicates: int = 100
    methods: tuple[str, ...] = ("BFS", "DFS", "FF:0.5", "SBS:3", "WOR")
    f_grid: tuple[float, ...] = (0.02, 0.1, 0.3, 1.0)
    assortativity: float | None = None
    assortativity_tolerance: float = 0.02
    rewire_max_steps: int = 2_000_000
    seed: int = DEFAULT_SEED
    walk_steps: int = 10_000
    burn_in: int | None = None
    walk_start: str = "stationary"
    traversal_start: str = "rw1"
    parallel_traversals: int = 1
    workers: int = 1
    out: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(Method.parse(m).label for m in self.methods))
        object.__setattr__(self, "f_grid", tuple(float(f) for f in self.f_grid))
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.nodes < 1:
            raise ValueError("nodes must be >= 1")
        fs = self.f_grid
        if not fs or any(not 0 < f <= 1 for f in fs) or any(b <= a for a, b in zip(fs, fs[1:])):
            raise ValueError("f_grid values must be sorted, distinct and in (0, 1]")
        if not 0 <= self.seed <= _MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.parallel_traversals < 1:
            raise ValueError("parallel_traversals must be >= 1")
        if self.walk_start not in ("stationary", "uniform"):
            raise ValueError(f"unknown walk_start {self.walk_start!r}")
        if self.traversal_start not in ("rw1", "uniform-lcc", "weighted"):
            raise ValueError(f"unknown traversal_start {self.traversal_start!r}")
        if self.assortativity is not None and not -1 < self.assortativity < 1:
            raise ValueError("assortativity target must be in (-1, 1)")

    @property
    def parsed_methods(self) -> list[Method]:
        return [Method.parse(m) for m in self.methods]

    def effective_burn_in(self) -> int:
        if self.burn_in is not None:
            return self.burn_in
        return 0 if self.walk_start == "stationary" else 1


_ALIASES = {"dist": "dist", "nodes": "nodes", "replicates": "replicates", "seed": "seed", "method": "methods",
            "methods": "methods", "f": "f_grid", "f_grid": "f_grid", "out": "out"}


def parse_scalar(name: str, text: str):
    kinds = {f.name: f.type for f in fields(ExperimentConfig)}
    t = kinds[name]
    text = text.strip()
    if name in ("methods",):
        return tuple(s for s in text.replace(";", ",").split(",") if s.strip())
    if name == "f_grid":
        return tuple(float(s) for s in text.split(",") if s.strip())
    if text.lower() in ("none", "") and "None" in str(t):
        return None
    if name == "seed":
        return int(text, 0)
    if "int" in str(t):
        return int(text)
    if "float" in str(t):
        return float(text)
    return text


def read_config(stream: IO[str]) -> dict:
    """Flat ``key: value`` (or ``key = value``) text; '#' starts a comment."""
    valid = {f.name for f in fields(ExperimentConfig)}
    out = {}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = ":" if ":" in line and ("=" not in line or line.index(":") < line.index("=")) else "="
        key, _, value = line.partition(sep)
        if not _:
            raise ValueError(f"config line {lineno}: expected 'key: value'")
        key = key.strip().replace("-", "_")
        key = _ALIASES.get(key, key)
        if key not in valid:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        try:
            out[key] = parse_scalar(key, value)
        except ValueError as exc:
            raise ValueError(f"config line {lineno}: {exc}") from None
    return out


def load_config(path: str | os.PathLike, **overrides) -> ExperimentConfig:
    with open(path) as fh:
        values = read_config(fh)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


# -- one replicate ---------------------------------------------------------------


@dataclass
class Observation:
    """One (method, checkpoint) measurement inside a replicate."""

    method: str
    f: float | None
    steps: int
    observed: float
    expected: float
    corrected: float
    q_hat: DegreeDistribution
    p_hat: DegreeDistribution
    truth: DegreeDistribution
    universe: str


@dataclass
class ReplicateResult:
    index: int
    seed: int
    observations: list[Observation]
    truth: DegreeDistribution
    assortativity: float | None = None
    rewire_converged: bool | None = None


def _traversal_start(g: Multigraph, how: str, rng: np.random.Generator) -> int:
    if how == "rw1":
        return one_hop_start(g, rng)
    if how == "weighted":
        return degree_weighted_start(g, rng)
    return uniform_start(g, rng, g.largest_component())


def _traversal_observations(g, method, cfg, truth, rng) -> list[Observation]:
    n = g.node_count
    parts = cfg.parallel_traversals
    reachable = int(np.count_nonzero(g.degrees))
    counts = [min(reachable, math.ceil(f * n - 1e-9)) for f in cfg.f_grid]
    per_part = [max(1, math.ceil(c / parts)) for c in counts]
    runs = []
    for _ in range(parts):
        if method.name == "WOR":
            runs.append(weighted_wor_sample(g.degrees, min(reachable, per_part[-1]), rng).degrees)
        else:
            start = _traversal_start(g, cfg.traversal_start, rng)
            seq = traverse(g, method.policy(), start, 1.0, rng, max_nodes=per_part[-1], across_components=True)
            runs.append(seq.degrees)
    obs = []
    for f, c, m in zip(cfg.f_grid, counts, per_part):
        pooled = np.concatenate([r[:m] for r in runs])
        q_hat = DegreeDistribution.from_degrees(pooled.tolist())
        f_real = min(len(runs[0][:m]) / n, 1.0)
        p_hat = estimators.correct_traversal(q_hat, f_real).p_hat
        obs.append(
            Observation(
                method.label,
                f,
                len(pooled),
                float(pooled.mean()),
                theory.traversal_expected_mean(truth, f_real),
                moments(p_hat)[0],
                q_hat,
                p_hat,
                truth,
                "graph",
            )
        )
    return obs


def _walk_observation(g, method, cfg, rng) -> Observation:
    steps = cfg.walk_steps
    burn = cfg.effective_burn_in()
    if cfg.walk_start == "stationary":
        start = uniform_start(g, rng) if method.name == "MHRW" else degree_weighted_start(g, rng)
    else:
        start = uniform_start(g, rng)
    if method.name == "RW":
        seq = random_walk(g, start, steps, burn, rng)
    elif method.name == "MHRW":
        seq = mhrw(g, start, steps, burn, rng)
    else:
        seq = rds(g, start, int(method.param), steps, rng)
    labels = g.component_labels
    comp = np.flatnonzero(labels == labels[start])
    truth = g.degree_distribution(comp)
    q_hat = DegreeDistribution.from_degrees(seq.degrees.tolist())
    if method.name == "MHRW":
        expected = theory.mhrw_expected_mean(truth)
        p_hat = estimators.correct_mhrw(q_hat)
        corrected = estimators.mhrw_mean_estimate(q_hat)
    else:
        expected = theory.rw_expected_mean(truth)
        p_hat = estimators.correct_rw(q_hat)
        corrected = estimators.rw_mean_estimate(seq.degree_sample())
    return Observation(
        method.label, None, len(seq), float(seq.degrees.mean()), expected, corrected, q_hat, p_hat, truth,
        "component",
    )


def _uniform_observations(g, method, cfg, truth, rng) -> list[Observation]:
    n = g.node_count
    counts = [max(1, math.ceil(f * n - 1e-9)) for f in cfg.f_grid]
    seq = uniform_sample(g, counts[-1], rng)
    obs = []
    for f, c in zip(cfg.f_grid, counts):
        d = seq.degrees[:c]
        q_hat = DegreeDistribution.from_degrees(d.tolist())
        obs.append(Observation(method.label, f, c, float(d.mean()), moments(truth)[0], moments(q_hat)[0],
                               q_hat, q_hat, truth, "graph"))
    return obs


def run_replicate(cfg: ExperimentConfig, index: int) -> ReplicateResult:
    seed = child_seed(cfg.seed, index)
    dist = load_distribution(cfg.dist)
    rng = _stream(seed, 0)
    g = generate(realize_sequence(dist, cfg.nodes, rng), rng)
    r_val = converged = None
    if cfg.assortativity is not None:
        res = rewire_to_assortativity(
            g, cfg.assortativity, cfg.assortativity_tolerance, cfg.rewire_max_steps, _stream(seed, 1)
        )
        g, r_val, converged = res.graph, res.assortativity, res.converged
    truth = g.degree_distribution()
    obs: list[Observation] = []
    for method in cfg.parsed_methods:
        mrng = _stream(seed, 2, zlib.crc32(method.label.encode()))
        if method.kind == "traversal":
            obs.extend(_traversal_observations(g, method, cfg, truth, mrng))
        elif method.kind == "uniform":
            obs.extend(_uniform_observations(g, method, cfg, truth, mrng))
        else:
            obs.append(_walk_observation(g, method, cfg, mrng))
    return ReplicateResult(index, seed, obs, truth, r_val, converged)


# -- aggregation -----------------------------------------------------------------


@dataclass
class ResultRow:
    method: str
    f: float | None
    steps: int | float
    replicates: int
    seed: int
    observed_mean: float
    observed_se: float
    expected_mean: float
    analytic_mean: float
    corrected_mean: float
    corrected_se: float
    tv_observed: float
    tv_corrected: float
    universe: str
    q_hat: DegreeDistribution = field(repr=False)
    p_hat: DegreeDistribution = field(repr=False)
    truth: DegreeDistribution = field(repr=False)

    CSV_FIELDS = ("method", "f", "steps", "replicates", "seed", "observed_mean", "observed_se", "expected_mean",
                  "analytic_mean", "corrected_mean", "corrected_se", "tv_observed", "tv_corrected", "universe")


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: list[ResultRow]
    curve: theory.BiasCurve
    truth: DegreeDistribution
    replicates: list[ReplicateResult] = field(repr=False)

    def row(self, method: str, f: float | None = None) -> ResultRow:
        label = Method.parse(method).label
        for r in self.rows:
            if r.method == label and (f is None or (r.f is not None and abs(r.f - f) < 1e-12)):
                return r
        raise KeyError((method, f))

    def per_replicate(self, method: str, f: float | None = None, attr: str = "observed") -> np.ndarray:
        label = Method.parse(method).label
        vals = []
        for rep in self.replicates:
            for o in rep.observations:
                if o.method == label and (f is None or (o.f is not None and abs(o.f - f) < 1e-12)):
                    vals.append(getattr(o, attr))
        return np.asarray(vals, dtype=float)

    def write_csv(self, stream: IO[str]) -> None:
        stream.write(",".join(ResultRow.CSV_FIELDS) + "\n")
        for r in self.rows:
            stream.write(",".join(_fmt(getattr(r, k)) for k in ResultRow.CSV_FIELDS) + "\n")

    def write_replicates_csv(self, stream: IO[str]) -> None:
        stream.write("replicate,seed,method,f,steps,observed,expected,corrected,assortativity,rewire_converged\n")
        for rep in self.replicates:
            for o in rep.observations:
                vals = [rep.index, rep.seed, o.method, o.f, o.steps, o.observed, o.expected, o.corrected,
                        rep.assortativity, rep.rewire_converged]
                stream.write(",".join(_fmt(v) for v in vals) + "\n")

    def write_distributions_csv(self, stream: IO[str]) -> None:
        stream.write("method,f,k,p_true,q_hat_mean,p_hat_mean\n")
        for r in self.rows:
            kmax = max(r.truth.max_degree, r.q_hat.max_degree, r.p_hat.max_degree)
            pt, qh, ph = r.truth.dense(kmax), r.q_hat.dense(kmax), r.p_hat.dense(kmax)
            for k in range(kmax + 1):
                if pt[k] or qh[k] or ph[k]:
                    stream.write(",".join(_fmt(v) for v in (r.method, r.f, k, pt[k], qh[k], ph[k])) + "\n")

    def metadata(self) -> dict[str, str]:
        cfg = self.config
        meta = {
            "master_seed": str(cfg.seed),
            "replicates": str(cfg.replicates),
            "nodes": str(cfg.nodes),
            "dist": cfg.dist,
            "methods": ",".join(cfg.methods),
            "f_grid": ",".join(repr(f) for f in cfg.f_grid),
            "traversal_start": cfg.traversal_start,
            "walk_start": cfg.walk_start,
            "walk_steps": str(cfg.walk_steps),
            "burn_in": str(cfg.effective_burn_in()),
            "parallel_traversals": str(cfg.parallel_traversals),
            "scale_note": "desk scale; reference protocol averages 1000 graphs of 10000 nodes",
        }
        if is_stand_in(cfg.dist):
            meta["dist_note"] = (
                f"heavy-tail preset p_k ~ k^-{HEAVY_TAIL_EXPONENT:g} on [1, {HEAVY_TAIL_KMAX}] is a stand-in, "
                "not a published distribution"
            )
        if cfg.assortativity is not None:
            flags = [rep.rewire_converged for rep in self.replicates]
            achieved = [rep.assortativity for rep in self.replicates]
            meta["assortativity_target"] = repr(cfg.assortativity)
            meta["assortativity_tolerance"] = repr(cfg.assortativity_tolerance)
            meta["assortativity_mean_achieved"] = repr(float(np.mean(achieved)))
            meta["rewire_unconverged_replicates"] = str(sum(1 for f in flags if not f))
        return meta

    def write_metadata(self, stream: IO[str]) -> None:
        for k, v in self.metadata().items():
            stream.write(f"{k}: {v}\n")

    def save(self, out_dir: str | os.PathLike) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, writer in (
            ("results.csv", self.write_csv),
            ("replicates.csv", self.write_replicates_csv),
            ("distributions.csv", self.write_distributions_csv),
            ("bias_curve.csv", self.curve.write_csv),
            ("metadata.txt", self.write_metadata),
        ):
            path = out / name
            with open(path, "w", newline="\n") as fh:
                writer(fh)
            written.append(path)
        return written


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _mean_se(values: Sequence[float]) -> tuple[float, float]:
    a = np.asarray(values, dtype=float)
    if len(a) < 2:
        return float(a.mean()), 0.0
    return float(a.mean()), float(a.std(ddof=1) / math.sqrt(len(a)))


def _mean_steps(group: list[Observation]) -> int | float:
    steps = [o.steps for o in group]
    return steps[0] if len(set(steps)) == 1 else float(np.mean(steps))


def aggregate(cfg: ExperimentConfig, reps: list[ReplicateResult]) -> ExperimentResult:
    truth = reps[0].truth
    keys: list[tuple[str, float | None]] = []
    grouped: dict[tuple[str, float | None], list[Observation]] = {}
    for rep in reps:
        for o in rep.observations:
            key = (o.method, o.f)
            if key not in grouped:
                keys.append(key)
                grouped[key] = []
            grouped[key].append(o)
    k1, k2 = moments(truth)
    rows = []
    for key in keys:
        group = grouped[key]
        method = Method.parse(key[0])
        obs_mean, obs_se = _mean_se([o.observed for o in group])
        cor_mean, cor_se = _mean_se([o.corrected for o in group])
        q_avg = average_distributions([o.q_hat for o in group])
        p_avg = average_distributions([o.p_hat for o in group])
        t_avg = average_distributions([o.truth for o in group])
        if method.kind == "traversal":
            analytic = theory.traversal_expected_mean(truth, key[1])
        elif method.name in ("MHRW", "UNI"):
            analytic = k1
        else:
            analytic = k2 / k1
        rows.append(
            ResultRow(
                key[0], key[1], _mean_steps(group), len(group), cfg.seed, obs_mean, obs_se,
                float(np.mean([o.expected for o in group])), analytic, cor_mean, cor_se,
                tv_distance(q_avg, t_avg), tv_distance(p_avg, t_avg), group[0].universe, q_avg, p_avg, t_avg,
            )
        )
    curve = theory.bias_curve(truth, cfg.f_grid)
    return ExperimentResult(cfg, rows, curve, truth, reps)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run every replicate (optionally in worker processes) and aggregate in index order."""
    indices = range(cfg.replicates)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            reps = list(pool.map(run_replicate, [cfg] * cfg.replicates, indices))
    else:
        reps = [run_replicate(cfg, i) for i in indices]
    result = aggregate(cfg, reps)
    if cfg.out:
        result.save(cfg.out)
    return result


# -- pipeline on a single graph ------------------------------------------------------


@dataclass(frozen=True)
class PipelineSummary:
    """Sampled, expected (the graph read as a random graph with its own degree distribution) and corrected mean degree."""

    method: str
    observed: float
    expected: float
    corrected: float
    samples: int
    coverage: float


def pipeline_on_graph(
    g: Multigraph,
    method: str | Method,
    f_or_steps: float | int,
    seed: int = DEFAULT_SEED,
    *,
    start: int | None = None,
    burn_in: int | None = None,
) -> PipelineSummary:
    """Sample ``g`` once, then compare with the prediction and the corrected estimate.

    Traversals take a coverage fraction of ``|V|``; walks and UNI take a
    sample length. Starts default to a uniform node of the largest component.
    Walk burn-in defaults to ``10 |V|``.
    """
    m = method if isinstance(method, Method) else Method.parse(method)
    rng = np.random.default_rng(seed)
    dist = g.degree_distribution()
    if start is None:
        start = uniform_start(g, rng, g.largest_component())
    n = g.node_count
    if m.kind == "traversal":
        count = max(1, math.ceil(float(f_or_steps) * n - 1e-9))
        if m.name == "WOR":
            seq = weighted_wor_sample(g.degrees, min(count, int(np.count_nonzero(g.degrees))), rng)
        else:
            seq = traverse(g, m.policy(), start, 1.0, rng, max_nodes=count, across_components=True)
        f_real = len(seq) / n
        q_hat = DegreeDistribution.from_degrees(seq.degrees.tolist())
        expected = theory.traversal_expected_mean(dist, f_real)
        corrected = estimators.traversal_mean_estimate(q_hat, f_real)
    elif m.kind == "uniform":
        seq = uniform_sample(g, int(f_or_steps), rng)
        expected = moments(dist)[0]
        corrected = float(seq.degrees.mean())
    else:
        steps = int(f_or_steps)
        burn = 10 * n if burn_in is None else burn_in
        if m.name == "RW":
            seq = random_walk(g, start, steps, burn, rng)
        elif m.name == "MHRW":
            seq = mhrw(g, start, steps, burn, rng)
        else:
            seq = rds(g, start, int(m.param), steps, rng)
        if m.name == "MHRW":
            expected = theory.mhrw_expected_mean(dist)
            corrected = float(seq.degrees.mean())
        else:
            expected = theory.rw_expected_mean(dist)
            corrected = estimators.rw_mean_estimate(seq.degree_sample())
    return PipelineSummary(m.label, float(seq.degrees.mean()), expected, corrected, len(seq), seq.coverage)
