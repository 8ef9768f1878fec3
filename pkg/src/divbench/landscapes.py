"""OneMax, TwoMax and the binary moving-peaks landscape with its change schedule."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .genome import as_genome, hamming_distance, pairwise_distances

ONEMAX, TWOMAX, PEAKS = "onemax", "twomax", "peaks"

PRESET_NAMES = (
    "onemax",
    "twomax",
    "one-moving-peak",
    "two-moving-peaks",
    "height-changing-peaks",
    "moving-height-changing-peaks",
)
CHANGE_GENERATIONS = (150, 300)
DEFAULT_GENERATIONS = 450
DEFAULT_LENGTH = 100


@dataclass(frozen=True, eq=False)
class Peak:
    position: np.ndarray
    height: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", as_genome(self.position))
        if self.height < 0:
            raise ValueError(f"peak height must be non-negative, got {self.height}")


@dataclass(frozen=True, eq=False)
class Landscape:
    kind: str
    length: int
    peaks: tuple[Peak, ...] = ()
    epoch: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (ONEMAX, TWOMAX, PEAKS):
            raise ValueError(f"unknown landscape kind {self.kind!r}")
        if self.kind == PEAKS:
            if not self.peaks:
                raise ValueError("a peaks landscape needs at least one peak")
            for p in self.peaks:
                if p.position.size != self.length:
                    raise ValueError("peak position length differs from landscape length")
        elif self.peaks:
            raise ValueError(f"{self.kind} landscapes carry no peaks")
        object.__setattr__(self, "peaks", tuple(self.peaks))

    @property
    def heights(self) -> np.ndarray:
        return np.array([p.height for p in self.peaks], dtype=np.float64)

    @property
    def positions(self) -> np.ndarray:
        return np.stack([p.position for p in self.peaks])


def onemax(length: int = DEFAULT_LENGTH) -> Landscape:
    return Landscape(ONEMAX, length)


def twomax(length: int = DEFAULT_LENGTH) -> Landscape:
    return Landscape(TWOMAX, length)


def peaks(specs, length: int | None = None) -> Landscape:
    """Build a peaks landscape from ``(position, height)`` pairs."""
    built = tuple(Peak(pos, h) for pos, h in specs)
    n = built[0].position.size if length is None else length
    return Landscape(PEAKS, n, built)


def evaluate(landscape: Landscape, x) -> float | np.ndarray:
    """Raw fitness of one genome (returns float) or of each row of a matrix.

    Peaks fitness is ``max_y (height_y - hamming(x, y))`` with no clamping.
    """
    g = np.asarray(x, dtype=np.uint8)
    single = g.ndim == 1
    g = np.atleast_2d(g)
    if g.shape[1] != landscape.length:
        raise ValueError(f"genome length {g.shape[1]} does not match landscape length {landscape.length}")
    if landscape.kind == ONEMAX:
        f = g.sum(axis=1, dtype=np.int64).astype(np.float64)
    elif landscape.kind == TWOMAX:
        ones = g.sum(axis=1, dtype=np.int64)
        f = np.maximum(ones, landscape.length - ones).astype(np.float64)
    else:
        d = pairwise_distances(g, landscape.positions)
        f = (landscape.heights[None, :] - d).max(axis=1)
    return float(f[0]) if single else f


def move_peak(peak: Peak, flip_prob: float, rng: np.random.Generator) -> Peak:
    """XOR the peak position with a random mask of rate ``flip_prob``."""
    if not 0.0 <= flip_prob <= 1.0:
        raise ValueError(f"flip probability must lie in [0, 1], got {flip_prob}")
    mask = (rng.random(peak.position.size) < flip_prob).astype(np.uint8)
    return Peak(np.bitwise_xor(peak.position, mask), peak.height)


@dataclass(frozen=True)
class ChangeEvent:
    at_generation: int
    moves: float | None = None
    height_updates: Mapping[int, float] | None = None

    def __post_init__(self) -> None:
        if self.at_generation < 1:
            raise ValueError(f"change generation must be positive, got {self.at_generation}")
        if self.moves is not None and not 0.0 <= self.moves <= 1.0:
            raise ValueError(f"move probability must lie in [0, 1], got {self.moves}")


def apply_change(landscape: Landscape, event: ChangeEvent, rng: np.random.Generator) -> Landscape:
    """Move every peak (in index order), then overwrite heights; bump epoch."""
    if landscape.kind != PEAKS:
        raise ValueError(f"changes apply only to peaks landscapes, not {landscape.kind}")
    updates = dict(event.height_updates or {})
    bad = [i for i in updates if not 0 <= i < len(landscape.peaks)]
    if bad:
        raise ValueError(f"height update for nonexistent peak index {bad[0]}")
    new = list(landscape.peaks)
    if event.moves is not None:
        new = [move_peak(p, event.moves, rng) for p in new]
    for i, h in updates.items():
        new[i] = Peak(new[i].position, h)
    return replace(landscape, peaks=tuple(new), epoch=landscape.epoch + 1)


@dataclass(frozen=True)
class ProblemPreset:
    name: str
    landscape: Landscape
    schedule: tuple[ChangeEvent, ...] = field(default_factory=tuple)
    total_generations: int = DEFAULT_GENERATIONS

    def __post_init__(self) -> None:
        gens = [e.at_generation for e in self.schedule]
        if any(b <= a for a, b in zip(gens, gens[1:])):
            raise ValueError("change generations must be strictly increasing")
        if gens and gens[-1] >= self.total_generations:
            raise ValueError("every change must happen before the last generation")

    def events_at(self, generation: int) -> list[ChangeEvent]:
        return [e for e in self.schedule if e.at_generation == generation]


def make_preset(name: str, genome_length: int = DEFAULT_LENGTH,
                generations: int = DEFAULT_GENERATIONS) -> ProblemPreset:
    """One of the six benchmark problems.

    Changes sit at generations 150 and 300; those at or past ``generations``
    are dropped when a shorter horizon is requested.
    """
    n = genome_length
    zeros, ones = np.zeros(n, dtype=np.uint8), np.ones(n, dtype=np.uint8)
    if name == "onemax":
        land, events = onemax(n), []
    elif name == "twomax":
        land, events = twomax(n), []
    elif name == "one-moving-peak":
        land = peaks([(zeros, 100.0)])
        events = [ChangeEvent(g, moves=0.1) for g in CHANGE_GENERATIONS]
    elif name == "two-moving-peaks":
        land = peaks([(zeros, 100.0), (ones, 90.0)])
        events = [ChangeEvent(g, moves=0.1) for g in CHANGE_GENERATIONS]
    elif name in ("height-changing-peaks", "moving-height-changing-peaks"):
        land = peaks([(zeros, 100.0), (ones, 100.0)])
        move = 0.1 if name.startswith("moving") else None
        events = [
            ChangeEvent(150, moves=move, height_updates={0: 80.0, 1: 100.0}),
            ChangeEvent(300, moves=move, height_updates={0: 100.0, 1: 80.0}),
        ]
    else:
        raise KeyError(f"unknown problem {name!r}; choose from {', '.join(PRESET_NAMES)}")
    events = tuple(e for e in events if e.at_generation < generations)
    return ProblemPreset(name, land, events, generations)


def peak_positions(landscape: Landscape) -> np.ndarray:
    """Optimum locations; TwoMax counts as peaks at all-zeros and all-ones."""
    n = landscape.length
    if landscape.kind == ONEMAX:
        return np.ones((1, n), dtype=np.uint8)
    if landscape.kind == TWOMAX:
        return np.stack([np.zeros(n, dtype=np.uint8), np.ones(n, dtype=np.uint8)])
    return landscape.positions


def fitness_bounds(landscape: Landscape) -> tuple[float, float]:
    """Exact ``(worst, best)`` fitness over the whole search space.

    Closed form for up to two peaks; more peaks fall back to enumeration,
    which is only feasible for short genomes.
    """
    n = landscape.length
    if landscape.kind == ONEMAX:
        return 0.0, float(n)
    if landscape.kind == TWOMAX:
        return float((n + 1) // 2), float(n)
    h = landscape.heights
    best = float(h.max())
    if len(h) == 1:
        return float(h[0] - n), best
    if len(h) == 2:
        # x disagrees with both peaks where they agree; where they differ it
        # is away from exactly one of them, a of those bits away from peak 0.
        diff = hamming_distance(landscape.peaks[0].position, landscape.peaks[1].position)
        a = np.arange(diff + 1)
        worst = np.maximum(h[0] - (n - diff) - a, h[1] - (n - diff) - (diff - a)).min()
        return float(worst), best
    if n > 20:
        raise ValueError("worst-case fitness over >2 peaks needs enumeration; genome too long")
    grid = (np.arange(2 ** n)[:, None] >> np.arange(n)[None, :]) & 1
    return float(evaluate(landscape, grid.astype(np.uint8)).min()), best
