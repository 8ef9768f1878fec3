"""Experiment configuration, seeded replicated runs, aggregation and file output."""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .genome import RNG_ALGORITHM, make_rng, random_genomes
from .landscapes import PRESET_NAMES, apply_change, fitness_bounds, make_preset
from .mechanisms import ALGORITHMS, Evolver, MechanismConfig
from .metrics import GenerationRecord, RunSummary, generation_record, summarize_run
from .variation import VariationConfig

CSV_COLUMNS = ("run", "generation", "min_raw", "avg_raw", "max_raw", "min_eff", "avg_eff",
               "max_eff", "inertia_diversity", "period", "best_so_far")
SERIES_FIELDS = ("min_raw", "avg_raw", "max_raw", "min_eff", "avg_eff", "max_eff",
                 "inertia_diversity", "best_so_far")


class ConfigError(ValueError):
    """Invalid experiment setting; ``field`` names the offending key."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str = "basic"
    problem: str = "onemax"
    mu: int = 50
    lam: int = 30
    genome_length: int = 100
    generations: int = 450
    runs: int = 30
    base_seed: int = 0
    variation: VariationConfig = field(default_factory=VariationConfig)
    mechanism: MechanismConfig = field(default_factory=MechanismConfig)
    output_dir: str | None = None

    def validate(self) -> "ExperimentConfig":
        if self.algorithm not in ALGORITHMS:
            raise ConfigError("algorithm", f"unknown algorithm {self.algorithm!r}")
        if self.problem not in PRESET_NAMES:
            raise ConfigError("problem", f"unknown problem {self.problem!r}")
        for name in ("mu", "lam", "genome_length", "generations", "runs"):
            if getattr(self, name) < 1:
                raise ConfigError(name, f"must be >= 1, got {getattr(self, name)}")
        m = self.mechanism
        if self.variation.p_crossover > 0 and self.mu < 2:
            raise ConfigError("mu", "crossover needs at least two parents")
        if self.algorithm == "islands":
            c = m.island_count
            if self.mu % c or self.lam % c:
                raise ConfigError("island_count", f"{c} must divide mu={self.mu} and lambda={self.lam}")
            if m.emigrants_per_island >= self.mu // c:
                raise ConfigError("emigrants_per_island", "must be smaller than the island size")
        if self.algorithm == "crowding" and (self.lam % 2 or self.lam > self.mu):
            raise ConfigError("lambda", "crowding needs an even lambda no larger than mu")
        return self


# -- flat key = value configuration ---------------------------------------

_TOP_KEYS = {"algorithm": str, "problem": str, "mu": int, "lambda": int, "lam": int,
             "genome_length": int, "generations": int, "runs": int, "seed": int,
             "base_seed": int, "output_dir": str}
_VARIATION_KEYS = {f.name: f.type for f in fields(VariationConfig)}
_MECHANISM_KEYS = {f.name: f.type for f in fields(MechanismConfig)}


def parse_config_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def load_config(path: str | os.PathLike) -> dict[str, str]:
    return parse_config_text(Path(path).read_text())


def _convert(key: str, value, kind):
    if value is None or (isinstance(value, str) and value.lower() in ("none", "")):
        return None
    try:
        if kind in (int, "int"):
            return int(value)
        if kind in (float, "float", "float | None"):
            return float(value)
        if kind == "int | None":
            return int(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"cannot interpret {value!r}") from None


def config_from_mapping(values: Mapping[str, object],
                        base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Build a validated config from flat keys, layered over ``base``."""
    base = base or ExperimentConfig()
    top: dict[str, object] = {}
    var: dict[str, object] = {}
    mech: dict[str, object] = {}
    for key, value in values.items():
        if key in _TOP_KEYS:
            name = {"lambda": "lam", "seed": "base_seed"}.get(key, key)
            top[name] = _convert(key, value, _TOP_KEYS[key])
        elif key in _VARIATION_KEYS:
            var[key] = _convert(key, value, _VARIATION_KEYS[key])
        elif key in _MECHANISM_KEYS:
            mech[key] = _convert(key, value, _MECHANISM_KEYS[key])
        else:
            raise ConfigError(key, "unknown configuration key")
    try:
        variation = replace(base.variation, **var)
    except ValueError as exc:
        raise ConfigError(next(iter(var), "variation"), str(exc)) from None
    try:
        mechanism = replace(base.mechanism, **mech)
    except ValueError as exc:
        raise ConfigError(next(iter(mech), "mechanism"), str(exc)) from None
    return replace(base, variation=variation, mechanism=mechanism, **top).validate()


def config_to_text(cfg: ExperimentConfig) -> str:
    lines = [f"# rng = {RNG_ALGORITHM}"]
    flat = {"algorithm": cfg.algorithm, "problem": cfg.problem, "mu": cfg.mu, "lambda": cfg.lam,
            "genome_length": cfg.genome_length, "generations": cfg.generations, "runs": cfg.runs,
            "seed": cfg.base_seed}
    flat.update(asdict(cfg.variation))
    flat.update(asdict(cfg.mechanism))
    lines += [f"{k} = {v}" for k, v in flat.items()]
    return "\n".join(lines) + "\n"


# -- runs ------------------------------------------------------------------

def run_single(cfg: ExperimentConfig, run_index: int = 0) -> tuple[list[GenerationRecord], RunSummary]:
    """One seeded run; emits exactly ``cfg.generations`` records.

    Each generation first applies any due landscape change and re-evaluates
    the population, then takes the mechanism step and records metrics.
    """
    cfg.validate()
    rng = make_rng(cfg.base_seed, run_index)
    preset = make_preset(cfg.problem, cfg.genome_length, cfg.generations)
    landscape = preset.landscape
    evo = Evolver(cfg.algorithm, random_genomes(cfg.mu, cfg.genome_length, rng), landscape,
                  cfg.lam, cfg.variation, cfg.mechanism)
    period, best = 0, None
    optima = [fitness_bounds(landscape)[1]]
    records: list[GenerationRecord] = []
    pop = evo.population
    for g in range(cfg.generations):
        events = preset.events_at(g)
        if events:
            for event in events:
                landscape = apply_change(landscape, event, rng)
            evo.reevaluate(landscape)
            period, best = period + 1, None
            optima.append(fitness_bounds(landscape)[1])
        pop = evo.step(landscape, g, rng)
        rec = generation_record(run_index, g, pop, period, best)
        best = rec.best_so_far
        records.append(rec)
    return records, summarize_run(records, pop, landscape, optima)


@dataclass
class AggregateResult:
    """Cross-run averages; ``series`` maps each record field to a per-generation mean."""

    algorithm: str
    problem: str
    series: dict[str, np.ndarray]
    periods: np.ndarray
    offline_performance: float
    max_achieved_per_period: tuple[float, ...]
    finds_both_peaks: float | None
    summaries: list[RunSummary]
    records: list[GenerationRecord]


def aggregate(results: Sequence[tuple[list[GenerationRecord], RunSummary]],
              algorithm: str = "", problem: str = "") -> AggregateResult:
    if not results:
        raise ValueError("nothing to aggregate")
    lengths = {len(recs) for recs, _ in results}
    if len(lengths) != 1:
        raise ValueError("runs differ in length")
    series = {name: np.mean([[getattr(r, name) for r in recs] for recs, _ in results], axis=0)
              for name in SERIES_FIELDS}
    summaries = [s for _, s in results]
    both = [s.finds_both_peaks for s in summaries]
    return AggregateResult(
        algorithm, problem, series,
        np.array([r.period for r in results[0][0]]),
        float(np.mean([s.offline_performance for s in summaries])),
        tuple(float(v) for v in np.mean([s.max_achieved_per_period for s in summaries], axis=0)),
        None if None in both else float(np.mean(both)),
        summaries,
        [r for recs, _ in results for r in recs],
    )


def _run_one(args):
    cfg, index = args
    return run_single(cfg, index)


def run_replicated(cfg: ExperimentConfig, run_indices: Iterable[int] | None = None,
                   workers: int = 1) -> AggregateResult:
    """Runs ``0 .. runs-1`` (or ``run_indices``), ordered by index before averaging."""
    cfg.validate()
    indices = sorted(range(cfg.runs) if run_indices is None else run_indices)
    jobs = [(cfg, i) for i in indices]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return aggregate(results, cfg.algorithm, cfg.problem)


# -- output ----------------------------------------------------------------

def _fmt(x) -> str:
    return f"{x:.6f}"


def write_generation_csv(records: Iterable[GenerationRecord], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([r.run_id, r.generation, _fmt(r.min_raw), _fmt(r.avg_raw), _fmt(r.max_raw),
                        _fmt(r.min_eff), _fmt(r.avg_eff), _fmt(r.max_eff),
                        _fmt(r.inertia_diversity), r.period, _fmt(r.best_so_far)])


def write_summary(aggregates: Mapping[str, AggregateResult], path: str | os.PathLike) -> None:
    """One column per algorithm: offline performance, per-period maximum, both-peaks rate."""
    if not aggregates:
        raise ValueError("write_summary needs at least one result")
    names = list(aggregates)
    n_periods = max(len(a.max_achieved_per_period) for a in aggregates.values())
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", *names])
        w.writerow(["offline_performance", *(_fmt(aggregates[k].offline_performance) for k in names)])
        for p in range(n_periods):
            row = []
            for k in names:
                vals = aggregates[k].max_achieved_per_period
                row.append(_fmt(vals[p]) if p < len(vals) else "")
            w.writerow([f"max_achieved_fitness_period_{p + 1}", *row])
        both = [aggregates[k].finds_both_peaks for k in names]
        w.writerow(["finds_both_peaks", *("N/A" if b is None else _fmt(b) for b in both)])


def write_outputs(result: AggregateResult, cfg: ExperimentConfig, out_dir: str | os.PathLike) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_generation_csv(result.records, out / "generations.csv")
    write_summary({cfg.algorithm: result}, out / "summary.csv")
    (out / "config.txt").write_text(config_to_text(cfg))
    return out
