"""
Niching on TwoMax
=================

TwoMax has two equally good optima: all zeros and all ones. A plain
(mu + lambda) algorithm drifts onto one of them; niching keeps both.
"""

import numpy as np
from divbench import ExperimentConfig, run_single
from divbench.genome import make_rng, random_genomes
from divbench.landscapes import twomax
from divbench.mechanisms import Evolver, MechanismConfig
from divbench.variation import VariationConfig

# a quick look at the final populations, one run each
land = twomax(100)
for name in ("basic", "clearing", "crowding"):
    rng = make_rng(3)
    evo = Evolver(name, random_genomes(50, 100, rng), land, 30, VariationConfig(), MechanismConfig())
    for g in range(450):
        pop = evo.step(land, g, rng)
    ones = np.sort(pop.genomes.sum(axis=1))
    print(f"{name:9s} ones per member: {ones.min()}..{ones.max()}  "
          f"near zeros: {(ones <= 10).sum():2d}  near ones: {(ones >= 90).sum():2d}")

# the harness does the same bookkeeping and reports it per run
for name in ("basic", "clearing"):
    _, summary = run_single(ExperimentConfig(algorithm=name, problem="twomax"), 0)
    print(name, "finds both peaks:", summary.finds_both_peaks)
