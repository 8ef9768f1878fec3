"""Generation steps for the (mu + lambda) algorithm and its diversity variants.

Every step takes an evaluated population and returns the next one. Fitness
sharing and clearing write the adjusted value to ``effective`` and leave
``raw`` untouched; the other mechanisms keep the two equal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .genome import Population, concat_populations
from .landscapes import Landscape, evaluate
from .variation import (
    VariationConfig,
    _exchange,
    draw_cuts,
    flip_bits,
    generate_offspring,
    tournament_indices,
)

ALGORITHMS = ("basic", "sharing", "clearing", "crowding", "incest", "unique", "islands", "hybrid")


@dataclass(frozen=True)
class MechanismConfig:
    sharing_radius: float = 2.0
    sharing_alpha: float = 5.0
    clearing_radius: int = 50
    niche_cap: int = 10
    incest_threshold_initial: int = 50
    incest_threshold_decrement: int = 1
    island_count: int = 5
    migration_interval: int = 20
    emigrants_per_island: int = 3

    def __post_init__(self) -> None:
        positive = ("clearing_radius", "niche_cap", "incest_threshold_decrement",
                    "island_count", "migration_interval", "emigrants_per_island")
        for name in positive:
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.sharing_radius <= 0:
            raise ValueError(f"sharing_radius must be > 0, got {self.sharing_radius}")
        if self.sharing_alpha <= 0:
            raise ValueError(f"sharing_alpha must be > 0, got {self.sharing_alpha}")
        if self.incest_threshold_initial < 0:
            raise ValueError("incest_threshold_initial must be >= 0")


def _evaluated(genomes: np.ndarray, landscape: Landscape) -> Population:
    raw = evaluate(landscape, genomes) if len(genomes) else np.empty(0)
    return Population(genomes, raw, raw.copy())


def _union(pop: Population, offspring: np.ndarray, landscape: Landscape) -> Population:
    return pop.with_fitness(pop.raw).concat(_evaluated(offspring, landscape))


def basic_step(pop: Population, landscape: Landscape, lam: int, variation: VariationConfig,
               rng: np.random.Generator) -> Population:
    """Plain (mu + lambda): tournament survivors from parents plus offspring."""
    off = generate_offspring(pop, lam, variation, rng)
    union = _union(pop, off.genomes, landscape)
    return union.take(tournament_indices(union.effective, len(pop), variation.tournament_size, rng))


# -- fitness sharing -------------------------------------------------------

def sharing_function(d: np.ndarray, radius: float, alpha: float = 1.0) -> np.ndarray:
    d = np.asarray(d, dtype=np.float64)
    return np.where(d <= radius, 1.0 - (d / radius) ** alpha, 0.0)


def sharing_adjust(pop: Population, radius: float, alpha: float = 1.0) -> Population:
    """Divide raw fitness by the niche count, self included (``sh(0) = 1``)."""
    if radius <= 0:
        raise ValueError(f"sharing radius must be positive, got {radius}")
    niche_count = sharing_function(pop.distances(), radius, alpha).sum(axis=1)
    return Population(pop.genomes, pop.raw, pop.raw / niche_count)


def sharing_step(pop, landscape, lam, variation, mech: MechanismConfig, rng) -> Population:
    off = generate_offspring(pop, lam, variation, rng)
    union = sharing_adjust(_union(pop, off.genomes, landscape),
                           mech.sharing_radius, mech.sharing_alpha)
    return union.take(tournament_indices(union.effective, len(pop), variation.tournament_size, rng))


# -- clearing --------------------------------------------------------------

def clearing_adjust(pop: Population, radius: int, cap: int = 1) -> Population:
    """Clearing on raw fitness.

    Walks a stable descending sort; every member still above zero keeps the
    first ``cap - 1`` live members closer than ``radius`` that follow it and
    zeroes the rest. Members at or below zero are never centres and never
    counted. Results are returned in the original order.
    """
    if cap < 1:
        raise ValueError(f"niche cap must be >= 1, got {cap}")
    order = np.argsort(-pop.raw, kind="stable")
    fit = pop.raw[order].copy()
    near = pop.distances()[np.ix_(order, order)] < radius
    m = len(fit)
    for i in range(m):
        if fit[i] <= 0:
            continue
        members = i + 1 + np.flatnonzero((fit[i + 1:] > 0) & near[i, i + 1:])
        fit[members[cap - 1:]] = 0.0
    effective = np.empty(m)
    effective[order] = fit
    return Population(pop.genomes, pop.raw, effective)


def clearing_step(pop, landscape, lam, variation, mech: MechanismConfig, rng) -> Population:
    off = generate_offspring(pop, lam, variation, rng)
    union = clearing_adjust(_union(pop, off.genomes, landscape),
                            mech.clearing_radius, mech.niche_cap)
    return union.take(tournament_indices(union.effective, len(pop), variation.tournament_size, rng))


# -- deterministic crowding ------------------------------------------------

def crowding_replacement(p1, p2, c1, c2, f_p1, f_p2, f_c1, f_c2):
    """Vectorised parent/child tournament over a batch of pairs.

    Children are matched to parents by the smaller total Hamming distance
    (direct pairing wins ties) and replace their parent only on strictly
    greater fitness. Returns the two survivor genome matrices and fitness
    vectors, aligned with ``p1`` and ``p2``.
    """
    d = lambda a, b: np.count_nonzero(a != b, axis=1)  # noqa: E731
    direct = d(p1, c1) + d(p2, c2) <= d(p1, c2) + d(p2, c1)
    rival1 = np.where(direct[:, None], c1, c2)
    rival2 = np.where(direct[:, None], c2, c1)
    f_r1 = np.where(direct, f_c1, f_c2)
    f_r2 = np.where(direct, f_c2, f_c1)
    win1 = f_r1 > f_p1
    win2 = f_r2 > f_p2
    return (np.where(win1[:, None], rival1, p1), np.where(win2[:, None], rival2, p2),
            np.where(win1, f_r1, f_p1), np.where(win2, f_r2, f_p2))


def crowding_step(pop, landscape, lam, variation, rng) -> Population:
    """Deterministic crowding over lambda/2 disjoint random parent pairs.

    Every pair is crossed; one draw per pair decides whether both children
    are mutated. Each child competes against its most similar parent and
    survivors keep their parents' slots.
    """
    m, n = pop.genomes.shape
    if lam % 2:
        raise ValueError(f"crowding needs an even lambda, got {lam}")
    if lam > m:
        raise ValueError(f"crowding needs lambda <= mu, got mu={m}, lambda={lam}")
    if lam == 0:
        return pop.with_fitness(pop.raw)
    perm = rng.permutation(m)[:lam]
    a, b = perm[0::2], perm[1::2]
    lo, hi = draw_cuts(rng, len(a), n)
    c1, c2 = _exchange(pop.genomes[a], pop.genomes[b], lo, hi)
    children = np.stack([c1, c2], axis=1).reshape(lam, n)
    mutate = np.repeat(rng.random(len(a)) < variation.p_mutation, 2)
    if mutate.any():
        children[mutate] = flip_bits(children[mutate], variation.flip_prob(n), rng)
    f_child = evaluate(landscape, children)
    g1, g2, f1, f2 = crowding_replacement(
        pop.genomes[a], pop.genomes[b], children[0::2], children[1::2],
        pop.raw[a], pop.raw[b], f_child[0::2], f_child[1::2])
    genomes = pop.genomes.copy()
    raw = pop.raw.copy()
    genomes[a], genomes[b] = g1, g2
    raw[a], raw[b] = f1, f2
    return Population(genomes, raw, raw.copy())


# -- incest prevention -----------------------------------------------------

def incest_pair_select(pop: Population | np.ndarray, threshold: int, rng: np.random.Generator,
                       decrement: int = 1) -> tuple[int, int, int]:
    """Pick a mating pair as row indices and return the updated threshold.

    ``pop`` may be a population or a precomputed distance matrix. The partner
    is uniform among the other members at distance ``>= threshold``; when none
    qualifies it is uniform among all others and the threshold drops by
    ``decrement`` (never below zero).
    """
    dist = pop.distances() if isinstance(pop, Population) else pop
    m = len(dist)
    if m < 2:
        raise ValueError("incest prevention needs at least two members")
    i = int(rng.integers(m))
    ok = dist[i] >= threshold
    ok[i] = False
    suitable = np.flatnonzero(ok)
    if suitable.size:
        return i, int(suitable[rng.integers(suitable.size)]), threshold
    k = int(rng.integers(m - 1))
    return i, k + (k >= i), max(0, threshold - decrement)


def incest_step(pop, landscape, lam, variation, mech: MechanismConfig, threshold: int,
                rng) -> tuple[Population, int]:
    dist = pop.distances()
    state = [threshold]

    def pick(r):
        i, j, state[0] = incest_pair_select(dist, state[0], r, mech.incest_threshold_decrement)
        return i, j

    off = generate_offspring(pop, lam, variation, rng, pair_select=pick)
    union = _union(pop, off.genomes, landscape)
    nxt = union.take(tournament_indices(union.effective, len(pop), variation.tournament_size, rng))
    return nxt, state[0]


# -- genotype removal ------------------------------------------------------

def first_unique(genomes: np.ndarray) -> np.ndarray:
    """Sorted row indices of the first occurrence of each distinct genome."""
    _, first = np.unique(genomes, axis=0, return_index=True)
    return np.sort(first)


def unique_select(pool: Population, mu: int, tournament_size: int,
                  rng: np.random.Generator) -> Population:
    """Tournament survivors drawn without repeating a genotype.

    Each tournament runs over the distinct genomes not yet chosen. When there
    are fewer than ``mu`` distinct genomes all of them survive and the rest
    of the slots come from ordinary tournaments over the whole pool.
    """
    if len(pool) == 0:
        raise ValueError("cannot select from an empty pool")
    cand = first_unique(pool.genomes).tolist()
    if len(cand) < mu:
        fill = tournament_indices(pool.effective, mu - len(cand), tournament_size, rng)
        return pool.take(np.concatenate([np.array(cand, dtype=np.intp), fill]))
    fit = pool.effective.tolist()
    u = rng.random((mu, tournament_size))
    chosen = []
    for row in u:
        size = len(cand)
        best = None
        for x in row:
            k = int(x * size)
            if best is None or fit[cand[k]] > fit[cand[best]]:
                best = k
        chosen.append(cand.pop(best))
    return pool.take(chosen)


def unique_step(pop, landscape, lam, variation, rng) -> Population:
    off = generate_offspring(pop, lam, variation, rng)
    union = _union(pop, off.genomes, landscape)
    return unique_select(union, len(pop), variation.tournament_size, rng)


# -- island model ----------------------------------------------------------

def ring_migrate(islands: list[Population], emigrants: int,
                 rng: np.random.Generator | None = None) -> list[Population]:
    """Copy each island's best ``emigrants`` over the worst of the next island.

    Emigrants are picked from every island before any replacement happens.
    ``rng`` is accepted for a uniform step signature; the policy draws nothing.
    """
    if not islands:
        raise ValueError("ring migration needs at least one island")
    for isl in islands:
        if emigrants >= len(isl):
            raise ValueError(f"{emigrants} emigrants do not fit an island of {len(isl)}")
    if len(islands) == 1:
        return list(islands)
    movers = [isl.take(np.argsort(-isl.effective, kind="stable")[:emigrants]) for isl in islands]
    out = []
    for i, isl in enumerate(islands):
        incoming = movers[i - 1]
        worst = np.argsort(isl.effective, kind="stable")[:emigrants]
        genomes, raw, eff = isl.genomes.copy(), isl.raw.copy(), isl.effective.copy()
        genomes[worst], raw[worst], eff[worst] = incoming.genomes, incoming.raw, incoming.effective
        out.append(Population(genomes, raw, eff))
    return out


def split_islands(pop: Population, count: int) -> list[Population]:
    if len(pop) % count:
        raise ValueError(f"island count {count} does not divide mu={len(pop)}")
    size = len(pop) // count
    return [pop.take(np.arange(k * size, (k + 1) * size)) for k in range(count)]


def island_step(islands: list[Population], landscape, lam, generation: int, variation,
                mech: MechanismConfig, rng) -> list[Population]:
    """One basic step per island, then ring migration on migration generations
    (positive multiples of ``migration_interval``)."""
    c = len(islands)
    if lam % c:
        raise ValueError(f"island count {c} does not divide lambda={lam}")
    if len({len(isl) for isl in islands}) != 1:
        raise ValueError("islands must share one size")
    out = [basic_step(isl, landscape, lam // c, variation, rng) for isl in islands]
    if generation > 0 and generation % mech.migration_interval == 0:
        out = ring_migrate(out, mech.emigrants_per_island, rng)
    return out


# -- hybrid ----------------------------------------------------------------

def hybrid_step(pop, landscape, lam, variation, mech: MechanismConfig, rng) -> Population:
    """Clearing-adjusted fitness fed into genotype-unique survivor selection."""
    off = generate_offspring(pop, lam, variation, rng)
    union = clearing_adjust(_union(pop, off.genomes, landscape),
                            mech.clearing_radius, mech.niche_cap)
    return unique_select(union, len(pop), variation.tournament_size, rng)


# -- driver ----------------------------------------------------------------

class Evolver:
    """Carries one run's population and mechanism state between generations."""

    def __init__(self, algorithm: str, genomes: np.ndarray, landscape: Landscape, lam: int,
                 variation: VariationConfig, mech: MechanismConfig):
        if algorithm not in ALGORITHMS:
            raise KeyError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        self.algorithm = algorithm
        self.lam = lam
        self.variation = variation
        self.mech = mech
        self.threshold = mech.incest_threshold_initial
        pop = _evaluated(np.asarray(genomes, dtype=np.uint8), landscape)
        self.islands = split_islands(pop, mech.island_count) if algorithm == "islands" else None
        self.pop = pop

    @property
    def population(self) -> Population:
        if self.islands is not None:
            return concat_populations(self.islands)
        return self.pop

    def reevaluate(self, landscape: Landscape) -> None:
        if self.islands is not None:
            self.islands = [_evaluated(isl.genomes, landscape) for isl in self.islands]
        else:
            self.pop = _evaluated(self.pop.genomes, landscape)

    def step(self, landscape: Landscape, generation: int, rng: np.random.Generator) -> Population:
        a, pop, lam, var, mech = self.algorithm, self.pop, self.lam, self.variation, self.mech
        if a == "basic":
            self.pop = basic_step(pop, landscape, lam, var, rng)
        elif a == "sharing":
            self.pop = sharing_step(pop, landscape, lam, var, mech, rng)
        elif a == "clearing":
            self.pop = clearing_step(pop, landscape, lam, var, mech, rng)
        elif a == "crowding":
            self.pop = crowding_step(pop, landscape, lam, var, rng)
        elif a == "incest":
            self.pop, self.threshold = incest_step(pop, landscape, lam, var, mech, self.threshold, rng)
        elif a == "unique":
            self.pop = unique_step(pop, landscape, lam, var, rng)
        elif a == "islands":
            self.islands = island_step(self.islands, landscape, lam, generation, var, mech, rng)
        else:
            self.pop = hybrid_step(pop, landscape, lam, var, mech, rng)
        return self.population
