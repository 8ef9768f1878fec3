"""Diversity and performance measures.

Performance measures read raw fitness only. Run-level inputs are 2-D arrays
shaped ``(runs, generations)`` of per-generation maximum raw fitness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genome import Population, pairwise_distances
from .landscapes import Landscape, peak_positions


def _genomes(pop) -> np.ndarray:
    g = pop.genomes if isinstance(pop, Population) else np.atleast_2d(np.asarray(pop))
    if g.shape[0] == 0:
        raise ValueError("diversity of an empty population is undefined")
    return g


def pairwise_hamming_diversity(pop) -> float:
    """Sum of Hamming distances over unordered member pairs."""
    g = _genomes(pop)
    return float(np.triu(pairwise_distances(g), k=1).sum())


def centroid(pop) -> np.ndarray:
    return _genomes(pop).mean(axis=0)


def inertia_diversity(pop) -> float:
    """Moment of inertia of the bitstrings about their centroid.

    Equals the pairwise Hamming diversity divided by the population size.
    """
    g = _genomes(pop).astype(np.float64)
    return float(((g - g.mean(axis=0)) ** 2).sum())


# -- per-run and cross-run performance ------------------------------------

def best_so_far(max_fitness, periods) -> np.ndarray:
    """Running maximum of ``max_fitness`` that restarts whenever the period changes."""
    f = np.asarray(max_fitness, dtype=np.float64)
    p = np.asarray(periods)
    out = np.empty_like(f)
    for k in np.unique(p):
        idx = np.flatnonzero(p == k)
        out[idx] = np.maximum.accumulate(f[idx])
    return out


def offline_performance(best_so_far_series) -> float:
    """Mean of the within-period best-so-far fitness over all recorded generations."""
    b = np.asarray(best_so_far_series, dtype=np.float64).ravel()
    if b.size == 0:
        raise ValueError("offline performance needs at least one value")
    return float(b.mean())


def _runs(runs, k: int | None = None) -> np.ndarray:
    try:
        arr = np.asarray(runs, dtype=np.float64)
    except ValueError as exc:
        raise ValueError("runs must all have the same length") from exc
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("runs must form a non-empty (runs, generations) array")
    if k is not None:
        if not 1 <= k <= arr.shape[1]:
            raise ValueError(f"k={k} outside 1..{arr.shape[1]}")
        arr = arr[:, :k]
    return arr


def best_of_generation(runs) -> np.ndarray:
    return _runs(runs).mean(axis=0)


def avg_best_of_generation(runs) -> float:
    return float(best_of_generation(runs).mean())


def likelihood_of_optimality(runs, optimum_value: float, k: int) -> float:
    return float((_runs(runs, k).max(axis=1) >= optimum_value).mean())


def average_fitness_value(runs, k: int) -> float:
    return float(_runs(runs, k).max(axis=1).mean())


def leap_count(series) -> int:
    """Entries that beat every earlier entry; the first entry is the baseline, never a leap."""
    f = np.asarray(series, dtype=np.float64)
    if f.size < 2:
        return 0
    return int(np.count_nonzero(f[1:] > np.maximum.accumulate(f)[:-1]))


def likelihood_of_evolution_leap(runs, k: int) -> float:
    """Mean number of leaps per run in the ``k`` generations after the baseline entry."""
    arr = _runs(runs)
    if not 0 <= k < arr.shape[1]:
        raise ValueError(f"k={k} outside 0..{arr.shape[1] - 1}")
    return sum(leap_count(r) for r in arr[:, :k + 1]) / arr.shape[0]


def optimisation_accuracy(bog: float, max_t: float, min_t: float) -> float:
    if max_t == min_t:
        raise ValueError("accuracy is undefined when the best and worst fitness coincide")
    return (bog - min_t) / (max_t - min_t)


def stability(acc_g: float, acc_prev: float) -> float:
    """``max(0, acc_g - acc_prev)``: rewards accuracy gains, not drops."""
    return max(0.0, acc_g - acc_prev)


def finds_both_peaks(pop, landscape: Landscape, proximity: int = 10) -> bool:
    """True iff each of the two optima has a member within ``proximity`` bits."""
    targets = peak_positions(landscape)
    if len(targets) != 2:
        raise ValueError(f"finds_both_peaks needs exactly two peaks, got {len(targets)}")
    d = pairwise_distances(_genomes(pop), targets)
    return bool((d.min(axis=0) <= proximity).all())


# -- records ---------------------------------------------------------------

@dataclass(frozen=True)
class GenerationRecord:
    run_id: int
    generation: int
    min_raw: float
    avg_raw: float
    max_raw: float
    min_eff: float
    avg_eff: float
    max_eff: float
    inertia_diversity: float
    period: int
    best_so_far: float


def generation_record(run_id: int, generation: int, pop: Population, period: int,
                      best_prev: float | None) -> GenerationRecord:
    """Metrics row for ``pop``; ``best_prev`` is the period's best so far or None at a period start."""
    mx = float(pop.raw.max())
    best = mx if best_prev is None else max(best_prev, mx)
    return GenerationRecord(
        run_id, generation,
        float(pop.raw.min()), float(pop.raw.mean()), mx,
        float(pop.effective.min()), float(pop.effective.mean()), float(pop.effective.max()),
        inertia_diversity(pop), period, best,
    )


@dataclass(frozen=True)
class RunSummary:
    offline_performance: float
    max_achieved_per_period: tuple[float, ...]
    finds_both_peaks: bool | None  # None when the final landscape is not two-peaked
    optimality_reached: bool
    leap_count: int


def summarize_run(records, final_pop: Population, final_landscape: Landscape,
                  period_optima) -> RunSummary:
    """``period_optima`` holds the best attainable fitness of each period."""
    best = np.array([r.best_so_far for r in records])
    periods = np.array([r.period for r in records])
    maxima = np.array([r.max_raw for r in records])
    per_period = tuple(float(best[periods == k].max()) for k in np.unique(periods))
    reached = all(b >= opt for b, opt in zip(per_period, period_optima))
    both = None
    if len(peak_positions(final_landscape)) == 2:
        both = finds_both_peaks(final_pop, final_landscape)
    leaps = sum(leap_count(maxima[periods == k]) for k in np.unique(periods))
    return RunSummary(offline_performance(best), per_period, both, reached, leaps)
