"""Projective measurement trees collapse to a single block measurement.

Run: python3 demos/measurement_entropy.py
"""

import numpy as np

from qoperad import density, measurement, trees
from qoperad.density import random_density
from qoperad.prob import SHANNON, EntropyFamily

rng = np.random.default_rng(2)
blocks = [1, 2, 1, 1]
rho = random_density(rng, sum(blocks))

flat = measurement.ProjectiveMeasurement.from_blocks(blocks)
probs, _, _ = measurement.project_channel(flat, rho)
print("outcome probabilities:", np.round(probs, 4))

for tau in list(trees.planar_trees(len(blocks)))[:3]:
    m = measurement.MeasurementTree.from_blocks(tau, blocks)
    p, _ = measurement.tree_proj_channel(m, rho)
    print("tree with", len(tau.internal_edges()), "internal edges:",
          "same outcomes" if np.allclose(p, probs) else "different outcomes",
          " S_vN tree entropy", round(measurement.tree_entropy_quantum(SHANNON, m, rho), 6))

print("S_vN of the post-measurement state:",
      round(density.von_neumann(measurement.block_channel(blocks, rho)), 6))
for fam in (EntropyFamily.renyi(2), EntropyFamily.tsallis(2)):
    print(f"{fam.kind} q=2 entropy of rho:", round(density.quantum_entropy(fam, rho), 6))
