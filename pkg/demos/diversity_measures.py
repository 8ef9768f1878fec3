"""
Measuring population diversity
==============================

Two ways of scoring how spread out a population of bitstrings is, and why
they agree.
"""

# a population is just a (members, bits) array of zeros and ones
import numpy as np
from divbench import genome, metrics

rng = genome.make_rng(1)
pop = genome.random_genomes(20, 100, rng)

# pairwise diversity adds up the Hamming distance of every pair of members
d = metrics.pairwise_hamming_diversity(pop)

# the moment of inertia measures squared spread around the per-bit mean
c = metrics.centroid(pop)
inertia = metrics.inertia_diversity(pop)
print(f"pairwise D = {d:.1f}, inertia I = {inertia:.3f}, D / |P| = {d / len(pop):.3f}")

# inertia is the cheaper one: O(members * bits) instead of O(members^2 * bits)
assert abs(inertia - d / len(pop)) < 1e-9

# a converged population has no spread at all
clones = np.tile(pop[0], (20, 1))
print("clones:", metrics.inertia_diversity(clones), metrics.centroid(clones)[:5])
