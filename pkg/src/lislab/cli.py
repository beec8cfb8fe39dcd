"""Experiment orchestration: seeded replication, catalog thresholds, CSV/JSON.

Experiments wire the other modules together: words -> LIS statistics ->
Brownian / random-matrix / Tracy-Widom references -> KS or dominance checks.
Each experiment runs a fixed number of replicas; replica ``i`` of stream
``s`` always uses the generator derived from ``(master_seed, s, i)``, and
chunk results are reduced in replica order, so the emitted files are
byte-identical for any ``--threads`` value.

Config files are flat ``key=value`` lines (``#`` comments); CLI flags
override file values.  Sample output is CSV with header ``replica,value``
and 17-significant-digit values; ``--format json`` writes a summary with the
resolved config, the computed statistics, and pass/fail against the catalog
thresholds.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from functools import partial

import numpy as np

from . import __version__
from .alphabet import (
    InfiniteLetterDist,
    ProbVector,
    cap_word,
    reduce_word,
    sample_infinite_word,
    sample_word,
    validate_probs,
)
from .brownian import (
    chain_max_pinned,
    cov_nonuniform,
    nonuniform_limit_values,
    pair_difference_paths,
    sample_lis_limits,
    standard_path_block,
    terminal_mean,
    uniform_limit_tridiagonal_values,
    zero_sum_project,
)
from .lis import centered_lis_statistic, lis_length
from .rmt import largest_eigenvalue, make_traceless, sample_gue
from .seeding import replica_rngs
from .stats import dominance_check, ks_one_sample, ks_two_sample, normal_cdf
from .tracy_widom import build_f2_table, default_grid, mean_from_cdf

__all__ = [
    "ConfigError",
    "UnknownKeyError",
    "UnknownExperimentError",
    "MissingRequiredError",
    "ExperimentConfig",
    "parse_config",
    "run_experiment",
    "main",
    "EXPERIMENTS",
]


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class UnknownKeyError(ConfigError):
    """Config contains a key outside the schema."""


class UnknownExperimentError(ConfigError):
    """Requested experiment is not in the catalog."""


class MissingRequiredError(ConfigError):
    """A required config key is absent."""


EXPERIMENTS = (
    "lis-vs-limit",
    "unique-max-normal",
    "d-vs-gue",
    "htilde-vs-traceless",
    "pathwise-identity",
    "dominance",
    "large-m",
    "infinite-alphabet",
    "tw-table",
)

# streams for seed derivation: primary replicas vs reference draws
_STREAM_PRIMARY = 0
_STREAM_REFERENCE = 1


@dataclass
class ExperimentConfig:
    experiment: str
    probs: tuple[float, ...] | None = None
    head_probs: tuple[float, ...] | None = None
    tail_q: float | None = None
    n: int | None = None
    m: int | None = None
    replicas: int = 1000
    grid_steps: int = 10000
    ref_draws: int = 10000
    m_caps: tuple[int, ...] = (2, 4, 8)
    master_seed: int = 12345
    out_path: str | None = None
    format: str = "csv"
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)

    def __post_init__(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise UnknownExperimentError(
                f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}"
            )
        if self.replicas < 1 or self.grid_steps < 1 or self.ref_draws < 1:
            raise ConfigError("replicas, grid_steps, ref_draws must be >= 1")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")

    def prob_vector(self) -> ProbVector:
        if self.probs is None:
            raise MissingRequiredError(f"{self.experiment} requires probs")
        return validate_probs(self.probs)

    def infinite_dist(self) -> InfiniteLetterDist:
        if self.tail_q is None:
            raise MissingRequiredError(f"{self.experiment} requires tail_q")
        return InfiniteLetterDist(
            head_probs=self.head_probs or (), tail_ratio=self.tail_q
        )

    def require_n(self) -> int:
        if self.n is None:
            raise MissingRequiredError(f"{self.experiment} requires n")
        return self.n

    def require_m(self) -> int:
        if self.m is None:
            raise MissingRequiredError(f"{self.experiment} requires m")
        return self.m

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out


_CONFIG_PARSERS = {
    "experiment": str,
    "probs": lambda s: tuple(float(x) for x in s.split(",") if x.strip()),
    "head_probs": lambda s: tuple(float(x) for x in s.split(",") if x.strip()),
    "tail_q": float,
    "n": int,
    "m": int,
    "replicas": int,
    "grid_steps": int,
    "ref_draws": int,
    "m_caps": lambda s: tuple(int(x) for x in s.split(",") if x.strip()),
    "master_seed": int,
    "out_path": str,
    "format": str,
    "threads": int,
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse a flat ``key=value`` config (``#`` comments, UTF-8)."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _CONFIG_PARSERS:
            raise UnknownKeyError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](val)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from exc
    if "experiment" not in values:
        raise MissingRequiredError("config must set experiment=<name>")
    return ExperimentConfig(**values)


# ---------------------------------------------------------------------------
# chunked, deterministic replica execution


def _chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(a, min(a + chunk, total)) for a in range(0, total, chunk)]


def _run_chunked(worker, total: int, threads: int, chunk: int) -> np.ndarray:
    """Run ``worker(start, stop)`` over replica ranges; concat in order."""
    ranges = _chunk_ranges(total, chunk)
    if threads <= 1 or len(ranges) == 1:
        parts = [worker(a, b) for a, b in ranges]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_call_range, [(worker, a, b) for a, b in ranges]))
    return np.concatenate(parts, axis=-1)


def _call_range(job):
    worker, a, b = job
    return worker(a, b)


def _path_chunk_size(dims: int, n_steps: int) -> int:
    return max(1, min(512, 8_000_000 // (dims * (n_steps + 1))))


# module-level chunk workers (picklable via functools.partial)


def _word_stats_chunk(start, stop, *, seed, probs, n):
    p = validate_probs(probs)
    out = np.empty(stop - start)
    for i, rng in enumerate(replica_rngs(seed, start, stop, _STREAM_PRIMARY)):
        out[i] = centered_lis_statistic(sample_word(p, n, rng), p)
    return out


def _limit_draws_chunk(start, stop, *, seed, p_max, k, n_steps, stream):
    rngs = replica_rngs(seed, start, stop, stream)
    return sample_lis_limits(p_max, k, n_steps, rngs)


def _last_passage_chunk(start, stop, *, seed, m, n_steps):
    rngs = replica_rngs(seed, start, stop, _STREAM_PRIMARY)
    return np.asarray(chain_max_pinned(standard_path_block(m, n_steps, rngs)))


def _zero_sum_chunk(start, stop, *, seed, m, n_steps):
    rngs = replica_rngs(seed, start, stop, _STREAM_PRIMARY)
    values = zero_sum_project(standard_path_block(m, n_steps, rngs))
    return np.asarray(chain_max_pinned(values))


def _gue_top_chunk(start, stop, *, seed, m, traceless, stream):
    out = np.empty(stop - start)
    for i, rng in enumerate(replica_rngs(seed, start, stop, stream)):
        h = sample_gue(m, rng)
        if traceless:
            h = make_traceless(h)
        out[i] = largest_eigenvalue(h)
    return out


def _pathwise_residual_chunk(start, stop, *, seed, m, n_steps):
    rngs = replica_rngs(seed, start, stop, _STREAM_PRIMARY)
    values = standard_path_block(m, n_steps, rngs)
    d = np.asarray(chain_max_pinned(values))
    z = np.asarray(terminal_mean(values))
    h = np.asarray(uniform_limit_tridiagonal_values(pair_difference_paths(values)))
    return np.abs(d - z - h)


def _nonuniform_functional_chunk(start, stop, *, seed, probs, n_steps):
    p = validate_probs(probs)
    spec = cov_nonuniform(p)
    from .brownian import cholesky_psd  # local to keep the worker lean

    chol = cholesky_psd(spec.matrix)
    scale = math.sqrt(1.0 / n_steps)
    dims = spec.dims
    out = np.empty(stop - start)
    for i, rng in enumerate(replica_rngs(seed, start, stop, _STREAM_PRIMARY)):
        inc = scale * (chol @ rng.standard_normal((dims, n_steps)))
        values = np.zeros((dims, n_steps + 1))
        np.cumsum(inc, axis=-1, out=values[:, 1:])
        out[i] = nonuniform_limit_values(values, p)
    return out


def _infinite_word_chunk(start, stop, *, seed, head_probs, tail_q, n, m_caps):
    d = InfiniteLetterDist(head_probs=head_probs, tail_ratio=tail_q)
    out = np.empty((2, stop - start))
    for i, rng in enumerate(replica_rngs(seed, start, stop, _STREAM_PRIMARY)):
        w = sample_infinite_word(d, n, rng)
        li = lis_length(w)
        out[0, i] = (li - d.p_max * n) / math.sqrt(n)
        violations = 0
        for m_cap in m_caps:
            lo = lis_length(reduce_word(w, m_cap))
            hi = lis_length(cap_word(w, m_cap))
            if not (lo <= li <= hi):
                violations += 1
        out[1, i] = violations
    return out


# ---------------------------------------------------------------------------
# experiment runners: each returns (samples, statistics, checks)
# where checks is a list of (name, passed) pairs.


def _run_lis_vs_limit(cfg: ExperimentConfig):
    p = cfg.prob_vector()
    n = cfg.require_n()
    stats_samples = _run_chunked(
        partial(_word_stats_chunk, seed=cfg.master_seed, probs=p.probs, n=n),
        cfg.replicas,
        cfg.threads,
        chunk=256,
    )
    ref = _run_chunked(
        partial(
            _limit_draws_chunk,
            seed=cfg.master_seed,
            p_max=p.p_max,
            k=p.multiplicity_k,
            n_steps=cfg.grid_steps,
            stream=_STREAM_REFERENCE,
        ),
        cfg.ref_draws,
        cfg.threads,
        chunk=_path_chunk_size(p.multiplicity_k, cfg.grid_steps),
    )
    ks, pval = ks_two_sample(stats_samples, ref)
    stats = {"ks_two_sample": ks, "p_value": pval}
    checks = [("ks_two_sample<=0.04", ks <= 0.04)]
    return stats_samples, stats, checks


def _run_unique_max_normal(cfg: ExperimentConfig):
    p = cfg.prob_vector()
    if p.multiplicity_k != 1:
        raise ConfigError("unique-max-normal requires a unique maximal letter")
    n = cfg.require_n()
    samples = _run_chunked(
        partial(_word_stats_chunk, seed=cfg.master_seed, probs=p.probs, n=n),
        cfg.replicas,
        cfg.threads,
        chunk=256,
    )
    std = math.sqrt(p.p_max * (1.0 - p.p_max))
    ks, pval = ks_one_sample(samples, lambda x: normal_cdf(x, 0.0, std))
    stats = {"ks_one_sample": ks, "p_value": pval, "limit_std": std}
    checks = [("ks_one_sample<=0.03", ks <= 0.03)]
    return samples, stats, checks


def _run_d_vs_gue(cfg: ExperimentConfig):
    m = cfg.require_m()
    d_vals = _run_chunked(
        partial(_last_passage_chunk, seed=cfg.master_seed, m=m, n_steps=cfg.grid_steps),
        cfg.replicas,
        cfg.threads,
        chunk=_path_chunk_size(m, cfg.grid_steps),
    )
    eig = _run_chunked(
        partial(
            _gue_top_chunk,
            seed=cfg.master_seed,
            m=m,
            traceless=False,
            stream=_STREAM_REFERENCE,
        ),
        cfg.replicas,
        cfg.threads,
        chunk=512,
    )
    ks, pval = ks_two_sample(d_vals, eig)
    stats = {"ks_two_sample": ks, "p_value": pval}
    checks = [("ks_two_sample<=0.03", ks <= 0.03)]
    return d_vals, stats, checks


def _run_htilde_vs_traceless(cfg: ExperimentConfig):
    m = cfg.require_m()
    h_vals = _run_chunked(
        partial(_zero_sum_chunk, seed=cfg.master_seed, m=m, n_steps=cfg.grid_steps),
        cfg.replicas,
        cfg.threads,
        chunk=_path_chunk_size(m, cfg.grid_steps),
    )
    eig = _run_chunked(
        partial(
            _gue_top_chunk,
            seed=cfg.master_seed,
            m=m,
            traceless=True,
            stream=_STREAM_REFERENCE,
        ),
        cfg.replicas,
        cfg.threads,
        chunk=512,
    )
    ks, pval = ks_two_sample(h_vals, eig)
    stats = {"ks_two_sample": ks, "p_value": pval}
    checks = [("ks_two_sample<=0.03", ks <= 0.03)]
    return h_vals, stats, checks


def _run_pathwise_identity(cfg: ExperimentConfig):
    m = cfg.require_m()
    residuals = _run_chunked(
        partial(
            _pathwise_residual_chunk,
            seed=cfg.master_seed,
            m=m,
            n_steps=cfg.grid_steps,
        ),
        cfg.replicas,
        cfg.threads,
        chunk=_path_chunk_size(m, cfg.grid_steps),
    )
    worst = float(residuals.max())
    stats = {"max_residual": worst}
    checks = [("max_residual<=1e-10", worst <= 1e-10)]
    return residuals, stats, checks


def _run_dominance(cfg: ExperimentConfig):
    m = cfg.require_m()
    h_vals = _run_chunked(
        partial(_zero_sum_chunk, seed=cfg.master_seed, m=m, n_steps=cfg.grid_steps),
        cfg.replicas,
        cfg.threads,
        chunk=_path_chunk_size(m, cfg.grid_steps),
    )
    d_vals = _run_chunked(
        partial(_last_passage_chunk, seed=cfg.master_seed, m=m, n_steps=cfg.grid_steps),
        cfg.replicas,
        cfg.threads,
        chunk=_path_chunk_size(m, cfg.grid_steps),
    )
    # reference draws get their own stream to stay independent of h_vals
    scaled = math.sqrt(1.0 - 1.0 / m) * d_vals
    result = dominance_check(h_vals, scaled, alpha=1e-3)
    stats = {"verdict": result.verdict, "worst_margin": result.worst_margin}
    checks = [("verdict==DOMINATES", result.dominates)]
    return h_vals, stats, checks


def _run_large_m(cfg: ExperimentConfig):
    table = build_f2_table("painleve")
    ms = (10, 50, 100)
    means = {}
    last_samples = None
    for m in ms:
        vals = _run_chunked(
            partial(
                _last_passage_chunk, seed=cfg.master_seed, m=m, n_steps=cfg.grid_steps
            ),
            cfg.replicas,
            cfg.threads,
            chunk=_path_chunk_size(m, cfg.grid_steps),
        )
        means[m] = float(np.mean(vals) / math.sqrt(m))
        last_samples = vals
    m_top = ms[-1]
    rescaled = (last_samples / math.sqrt(m_top) - 2.0) * m_top ** (2.0 / 3.0)
    ks, pval = ks_one_sample(rescaled, table.cdf_at)
    increasing = means[ms[0]] < means[ms[1]] < means[ms[2]]
    stats = {
        **{f"mean_over_sqrt_m_{m}": means[m] for m in ms},
        "ks_vs_f2": ks,
        "p_value": pval,
    }
    checks = [
        ("means_increasing", increasing),
        ("mean_at_100_in_[1.7,2.0]", 1.7 <= means[m_top] <= 2.0),
        ("ks_vs_f2<=0.1", ks <= 0.1),
    ]
    return rescaled, stats, checks


def _run_infinite_alphabet(cfg: ExperimentConfig):
    dist = cfg.infinite_dist()
    n = cfg.require_n()
    out = _run_chunked(
        partial(
            _infinite_word_chunk,
            seed=cfg.master_seed,
            head_probs=dist.head_probs,
            tail_q=dist.tail_ratio,
            n=n,
            m_caps=cfg.m_caps,
        ),
        cfg.replicas,
        cfg.threads,
        chunk=128,
    )
    samples, violations = out[0], int(out[1].sum())
    k = dist.multiplicity_k
    if k == 1:
        std = math.sqrt(dist.p_max * (1.0 - dist.p_max))
        ks, pval = ks_one_sample(samples, lambda x: normal_cdf(x, 0.0, std))
        ks_name, ks_bound = "ks_one_sample", 0.04
    else:
        ref = _run_chunked(
            partial(
                _limit_draws_chunk,
                seed=cfg.master_seed,
                p_max=dist.p_max,
                k=k,
                n_steps=cfg.grid_steps,
                stream=_STREAM_REFERENCE,
            ),
            cfg.ref_draws,
            cfg.threads,
            chunk=_path_chunk_size(k, cfg.grid_steps),
        )
        ks, pval = ks_two_sample(samples, ref)
        ks_name, ks_bound = "ks_two_sample", 0.05
    stats = {
        ks_name: ks,
        "p_value": pval,
        "sandwich_violations": violations,
        "p_max": dist.p_max,
        "multiplicity_k": k,
    }
    checks = [
        ("sandwich_violations==0", violations == 0),
        (f"{ks_name}<={ks_bound}", ks <= ks_bound),
    ]
    return samples, stats, checks


def _run_tw_table(cfg: ExperimentConfig):
    grid = default_grid()
    painleve = build_f2_table("painleve", grid)
    fredholm = build_f2_table("fredholm", grid)
    diff = np.abs(painleve.cdf - fredholm.cdf)
    mean_p = mean_from_cdf(grid, painleve.cdf)
    mean_f = mean_from_cdf(grid, fredholm.cdf)
    stats = {
        "sup_abs_diff": float(diff.max()),
        "mean_painleve": mean_p,
        "mean_fredholm": mean_f,
        "mean_abs_diff": abs(mean_p - mean_f),
    }
    checks = [
        ("sup_abs_diff<=1e-4", diff.max() <= 1e-4),
        ("mean_abs_diff<=1e-3", abs(mean_p - mean_f) <= 1e-3),
    ]
    table = np.column_stack([grid, painleve.cdf, fredholm.cdf, diff])
    return table, stats, checks


_RUNNERS = {
    "lis-vs-limit": _run_lis_vs_limit,
    "unique-max-normal": _run_unique_max_normal,
    "d-vs-gue": _run_d_vs_gue,
    "htilde-vs-traceless": _run_htilde_vs_traceless,
    "pathwise-identity": _run_pathwise_identity,
    "dominance": _run_dominance,
    "large-m": _run_large_m,
    "infinite-alphabet": _run_infinite_alphabet,
    "tw-table": _run_tw_table,
}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_samples_csv(path: str, samples: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("replica,value\n")
        for i, v in enumerate(samples):
            fh.write(f"{i},{_fmt(v)}\n")


def _write_table_csv(path: str, table: np.ndarray) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,f2_painleve,f2_fredholm,abs_diff\n")
        for row in table:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run one catalog experiment; returns the report dict (also written out)."""
    samples, stats, checks = _RUNNERS[cfg.experiment](cfg)
    passed = all(ok for _, ok in checks)
    report = {
        "experiment": cfg.experiment,
        "version": __version__,
        "params": cfg.as_dict(),
        "statistics": stats,
        "checks": {name: bool(ok) for name, ok in checks},
        "passed": bool(passed),
    }
    out_path = cfg.out_path or f"{cfg.experiment}.{cfg.format}"
    if cfg.format == "csv":
        if cfg.experiment == "tw-table":
            _write_table_csv(out_path, samples)
        else:
            _write_samples_csv(out_path, samples)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    report["out_path"] = out_path
    return report


def _build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lislab",
        description="Monte Carlo experiments for LIS limit laws",
    )
    ap.add_argument("experiment", choices=EXPERIMENTS)
    ap.add_argument("--config", help="flat key=value config file")
    ap.add_argument("--seed", type=int, dest="master_seed")
    ap.add_argument("--replicas", type=int)
    ap.add_argument("--grid-steps", type=int, dest="grid_steps")
    ap.add_argument("--ref-draws", type=int, dest="ref_draws")
    ap.add_argument("--out", dest="out_path")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--threads", type=int)
    ap.add_argument("--probs", help="comma-separated letter probabilities")
    ap.add_argument("--head-probs", dest="head_probs", help="comma-separated")
    ap.add_argument("--tail-q", type=float, dest="tail_q")
    ap.add_argument("--m-caps", dest="m_caps", help="comma-separated cap letters")
    ap.add_argument("--n", type=int)
    ap.add_argument("--m", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_arg_parser().parse_args(argv)
    try:
        values: dict = {}
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = parse_config(fh.read())
            values = {
                k: v
                for k, v in file_cfg.as_dict().items()
                if v is not None
            }
            values = {
                k: tuple(v) if isinstance(v, list) else v for k, v in values.items()
            }
        for key in _CONFIG_PARSERS:
            arg_val = getattr(args, key, None)
            if arg_val is None:
                continue
            if isinstance(arg_val, str) and key in ("probs", "head_probs", "m_caps"):
                arg_val = _CONFIG_PARSERS[key](arg_val)
            values[key] = arg_val
        values["experiment"] = args.experiment
        cfg = ExperimentConfig(**values)
        report = run_experiment(cfg)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"experiment: {report['experiment']} (v{report['version']})")
    for name, value in report["statistics"].items():
        print(f"  {name} = {value}")
    for name, ok in report["checks"].items():
        print(f"  [{'PASS' if ok else 'FAIL'}] {name}")
    print(f"samples written to {report['out_path']}")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
