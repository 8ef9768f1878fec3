"""Two-point crossover, bit-flip mutation, tournament selection and the
probabilistic offspring generator shared by every algorithm variant."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .genome import Population, as_genome

CROSSOVER, MUTATION, COPY = 0, 1, 2

# Picks two parent row indices for one crossover event.
PairSelector = Callable[[np.random.Generator], tuple[int, int]]


@dataclass(frozen=True)
class VariationConfig:
    p_crossover: float = 0.65
    p_mutation: float = 0.35
    per_bit_flip_prob: float | None = None  # None means 1 / genome length
    tournament_size: int = 3

    def __post_init__(self) -> None:
        for name in ("p_crossover", "p_mutation"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")
        if self.p_crossover + self.p_mutation > 1.0 + 1e-12:
            raise ValueError("p_crossover + p_mutation must not exceed 1")
        if self.per_bit_flip_prob is not None and not 0.0 <= self.per_bit_flip_prob <= 1.0:
            raise ValueError(f"per_bit_flip_prob must lie in [0, 1], got {self.per_bit_flip_prob}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament_size must be >= 1, got {self.tournament_size}")

    def flip_prob(self, length: int) -> float:
        if self.per_bit_flip_prob is None:
            return 1.0 / length
        return self.per_bit_flip_prob


def draw_cuts(rng: np.random.Generator, count: int, length: int) -> tuple[np.ndarray, np.ndarray]:
    """``count`` sorted pairs of distinct cut indices in ``[0, length]``."""
    first = rng.integers(0, length + 1, size=count)
    second = rng.integers(0, length, size=count)
    second = second + (second >= first)
    return np.minimum(first, second), np.maximum(first, second)


def _exchange(a: np.ndarray, b: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    pos = np.arange(a.shape[1])
    window = (pos >= lo[:, None]) & (pos < hi[:, None])
    return np.where(window, b, a), np.where(window, a, b)


def two_point_crossover(p1, p2, rng: np.random.Generator | None = None,
                        cuts: tuple[int, int] | None = None):
    """Exchange the bits in ``[i, j)`` between copies of the parents.

    ``cuts`` fixes the window; otherwise it is drawn from ``rng``.
    """
    a = np.asarray(p1, dtype=np.uint8)
    b = np.asarray(p2, dtype=np.uint8)
    if a.shape != b.shape:
        raise ValueError(f"genome length mismatch: {a.size} vs {b.size}")
    n = a.size
    if cuts is None:
        if rng is None:
            raise ValueError("either rng or cuts is required")
        lo, hi = draw_cuts(rng, 1, n)
    else:
        i, j = sorted(cuts)
        if not 0 <= i <= j <= n:
            raise ValueError(f"cut points {cuts} outside [0, {n}]")
        lo, hi = np.array([i]), np.array([j])
    c1, c2 = _exchange(a[None, :], b[None, :], lo, hi)
    return as_genome(c1[0]), as_genome(c2[0])


def flip_bits(genomes: np.ndarray, prob: float, rng: np.random.Generator) -> np.ndarray:
    """Bit-flip mutation of every row; mask bits drawn row-major."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"flip probability must lie in [0, 1], got {prob}")
    mask = rng.random(genomes.shape) < prob
    return np.bitwise_xor(genomes, mask.astype(np.uint8))


def bit_flip_mutation(genome, per_bit_flip_prob: float, rng: np.random.Generator) -> np.ndarray:
    g = np.asarray(genome, dtype=np.uint8)
    return as_genome(flip_bits(g[None, :], per_bit_flip_prob, rng)[0])


def tournament_indices(fitness: np.ndarray, count: int, size: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Winners of ``count`` tournaments of ``size`` draws with replacement.

    ``argmax`` returns the first maximum, so ties go to the earliest draw.
    """
    n = len(fitness)
    if n == 0:
        raise ValueError("cannot run a tournament on an empty population")
    if size < 1:
        raise ValueError(f"tournament size must be >= 1, got {size}")
    draws = rng.integers(0, n, size=(count, size))
    return draws[np.arange(count), np.argmax(fitness[draws], axis=1)]


def tournament_select(pop: Population, count: int, size: int,
                      rng: np.random.Generator) -> Population:
    return pop.take(tournament_indices(pop.effective, count, size, rng))


class Offspring(NamedTuple):
    genomes: np.ndarray  # (lam, length) uint8, unevaluated
    origin: np.ndarray  # CROSSOVER, MUTATION or COPY per row


def generate_offspring(parents: Population | np.ndarray, lam: int, cfg: VariationConfig,
                       rng: np.random.Generator,
                       pair_select: PairSelector | None = None) -> Offspring:
    """Create ``lam`` offspring, each by crossover, mutation or copying.

    A single uniform ``r`` per offspring picks the branch: ``r < p_crossover``
    crosses two uniformly drawn parents and keeps the first child,
    ``r < p_crossover + p_mutation`` mutates one parent, anything else copies
    one. Draw order: all ``r`` values, crossover parent pairs, crossover cuts,
    mutation parents, mutation masks, copy parents.
    """
    genomes = parents.genomes if isinstance(parents, Population) else np.asarray(parents)
    m, n = genomes.shape
    if m == 0:
        raise ValueError("cannot generate offspring from an empty population")
    if lam < 0:
        raise ValueError(f"offspring count must be >= 0, got {lam}")
    r = rng.random(lam)
    origin = np.where(r < cfg.p_crossover, CROSSOVER,
                      np.where(r < cfg.p_crossover + cfg.p_mutation, MUTATION, COPY))
    out = np.empty((lam, n), dtype=np.uint8)

    xo = np.flatnonzero(origin == CROSSOVER)
    if xo.size:
        if m < 2:
            raise ValueError("crossover needs a population of at least two")
        if pair_select is None:
            pairs = rng.integers(0, m, size=(xo.size, 2))
        else:
            pairs = np.array([pair_select(rng) for _ in range(xo.size)], dtype=np.intp)
        lo, hi = draw_cuts(rng, xo.size, n)
        first, _ = _exchange(genomes[pairs[:, 0]], genomes[pairs[:, 1]], lo, hi)
        out[xo] = first

    mu = np.flatnonzero(origin == MUTATION)
    if mu.size:
        src = rng.integers(0, m, size=mu.size)
        out[mu] = flip_bits(genomes[src], cfg.flip_prob(n), rng)

    cp = np.flatnonzero(origin == COPY)
    if cp.size:
        out[cp] = genomes[rng.integers(0, m, size=cp.size)]
    return Offspring(out, origin)
