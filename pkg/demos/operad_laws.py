"""Composition of probability vectors and of planar trees.

Run: python3 demos/operad_laws.py
"""

import numpy as np

from qoperad import prob, trees

rng = np.random.default_rng(0)

# composing a distribution on 2 outcomes with refinements of each outcome
P = np.array([0.25, 0.75])
parts = [np.array([0.5, 0.5]), np.array([0.2, 0.3, 0.5])]
print("P o (Q1, Q2) =", prob.compose(P, parts))

# associativity on a random instance
sub = [[rng.dirichlet(np.ones(2)) for _ in q] for q in parts]
lhs = prob.compose(prob.compose(P, parts), [s for b in sub for s in b])
rhs = prob.compose(P, [prob.compose(q, s) for q, s in zip(parts, sub)])
print("associativity gap:", np.abs(lhs - rhs).max())

# grafting trees and the edge-contraction differential
tau = trees.graft(trees.corolla(2), [trees.corolla(2), trees.corolla(3)])
print("grafted tree has", tau.n_leaves, "leaves and", len(tau.internal_edges()), "internal edges")
print("d o d vanishes:", not trees.d_squared(tau, "contract"))

# tree entropies of the same distribution depend on the branching for Renyi, not for Shannon
p = rng.dirichlet(np.ones(3))
for fam in (prob.SHANNON, prob.EntropyFamily.renyi(2)):
    vals = [prob.tree_entropy(fam, t, p) for t in trees.planar_trees(3)]
    print(f"{fam.kind:8s}", np.round(vals, 6))
