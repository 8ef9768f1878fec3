"""Bitstring genomes, individuals, populations and per-run random streams.

A genome is a 1-D ``uint8`` array of zeros and ones. A population keeps its
genomes as one ``(size, length)`` matrix next to two fitness vectors so that
distance matrices and landscape evaluation stay vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

RNG_ALGORITHM = "numpy PCG64 seeded by SeedSequence(base_seed, spawn_key=(run_index,))"


def make_rng(base_seed: int, stream_index: int = 0) -> np.random.Generator:
    """Return the random stream for one run.

    Equal ``(base_seed, stream_index)`` pairs give identical sequences; distinct
    stream indices give statistically independent streams.
    """
    if stream_index < 0:
        raise ValueError(f"stream_index must be non-negative, got {stream_index}")
    seq = np.random.SeedSequence(entropy=int(base_seed), spawn_key=(int(stream_index),))
    return np.random.Generator(np.random.PCG64(seq))


def as_genome(bits: str | Sequence[int] | np.ndarray) -> np.ndarray:
    """Coerce ``"0101"``, a list of ints or an array to a read-only genome."""
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(bits)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a genome is a non-empty 1-D bit sequence")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("genome bits must be 0 or 1")
    arr = arr.astype(np.uint8)
    arr.setflags(write=False)
    return arr


def to_bitstring(genome: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in np.asarray(genome).ravel())


def hamming_distance(a: np.ndarray, b: np.ndarray) -> int:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"genome length mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return int(np.count_nonzero(a != b))


def pairwise_distances(genomes: np.ndarray, others: np.ndarray | None = None) -> np.ndarray:
    """Hamming distance matrix between the rows of ``genomes`` and ``others``.

    Uses ``|x| + |y| - 2 x.y`` in float64, which is exact for any realistic
    genome length.
    """
    x = np.asarray(genomes, dtype=np.float64)
    y = x if others is None else np.asarray(others, dtype=np.float64)
    if x.shape[1] != y.shape[1]:
        raise ValueError(f"genome length mismatch: {x.shape[1]} vs {y.shape[1]}")
    d = x.sum(axis=1)[:, None] + y.sum(axis=1)[None, :] - 2.0 * (x @ y.T)
    return np.rint(d).astype(np.int64)


def random_genome(length: int, rng: np.random.Generator) -> np.ndarray:
    if length < 1:
        raise ValueError(f"genome length must be >= 1, got {length}")
    return as_genome(rng.integers(0, 2, size=length, dtype=np.uint8))


def random_genomes(count: int, length: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` random genomes drawn row by row, bits in position order."""
    if length < 1:
        raise ValueError(f"genome length must be >= 1, got {length}")
    return rng.integers(0, 2, size=(count, length), dtype=np.uint8)


@dataclass(frozen=True)
class Individual:
    genome: np.ndarray
    raw_fitness: float = float("nan")
    effective_fitness: float = float("nan")


@dataclass(frozen=True, eq=False)
class Population:
    """Ordered members stored column-wise.

    ``raw`` holds landscape fitness, ``effective`` the mechanism-adjusted value
    that selection sees. Both are NaN for unevaluated members.
    """

    genomes: np.ndarray
    raw: np.ndarray
    effective: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.genomes, dtype=np.uint8)
        if g.ndim != 2:
            raise ValueError("genomes must be a (size, length) matrix")
        raw = np.asarray(self.raw, dtype=np.float64).reshape(-1)
        eff = np.asarray(self.effective, dtype=np.float64).reshape(-1)
        if not (len(raw) == len(eff) == g.shape[0]):
            raise ValueError("fitness vectors must match the number of genomes")
        object.__setattr__(self, "genomes", g)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "effective", eff)

    @classmethod
    def from_genomes(cls, genomes: np.ndarray, raw: np.ndarray | None = None,
                     effective: np.ndarray | None = None) -> "Population":
        genomes = np.atleast_2d(np.asarray(genomes, dtype=np.uint8))
        m = genomes.shape[0]
        raw = np.full(m, np.nan) if raw is None else np.asarray(raw, dtype=np.float64)
        effective = raw.copy() if effective is None else effective
        return cls(genomes, raw, effective)

    @classmethod
    def from_individuals(cls, members: Sequence[Individual]) -> "Population":
        members = list(members)
        if not members:
            raise ValueError("cannot build a population from no individuals")
        return cls(
            np.stack([np.asarray(ind.genome, dtype=np.uint8) for ind in members]),
            np.array([ind.raw_fitness for ind in members], dtype=np.float64),
            np.array([ind.effective_fitness for ind in members], dtype=np.float64),
        )

    @property
    def length(self) -> int:
        return self.genomes.shape[1]

    def __len__(self) -> int:
        return self.genomes.shape[0]

    def __getitem__(self, i: int) -> Individual:
        g = self.genomes[i].copy()
        g.setflags(write=False)
        return Individual(g, float(self.raw[i]), float(self.effective[i]))

    def __iter__(self) -> Iterator[Individual]:
        return (self[i] for i in range(len(self)))

    def take(self, indices: np.ndarray | Sequence[int]) -> "Population":
        idx = np.asarray(indices, dtype=np.intp)
        return Population(self.genomes[idx], self.raw[idx], self.effective[idx])

    def with_fitness(self, raw: np.ndarray | None = None,
                     effective: np.ndarray | None = None) -> "Population":
        raw = self.raw if raw is None else raw
        effective = np.asarray(raw, dtype=np.float64).copy() if effective is None else effective
        return Population(self.genomes, raw, effective)

    def concat(self, other: "Population") -> "Population":
        return Population(
            np.concatenate([self.genomes, other.genomes]),
            np.concatenate([self.raw, other.raw]),
            np.concatenate([self.effective, other.effective]),
        )

    def distances(self) -> np.ndarray:
        return pairwise_distances(self.genomes)


def concat_populations(pops: Sequence[Population]) -> Population:
    return Population(
        np.concatenate([p.genomes for p in pops]),
        np.concatenate([p.raw for p in pops]),
        np.concatenate([p.effective for p in pops]),
    )
