"""Kraus channels attached to the vertices of a tree.

Run: python3 demos/kraus_trees.py
"""

import numpy as np

from qoperad import channels, trees

rng = np.random.default_rng(3)
tau = trees.random_tree(rng, 4)
ch = channels.random_channel(rng, tau, 2)
ks = channels.kraus_ops(ch)
print(len(ks), "Kraus operators on dimension", ch.dim)
print("sum K^dag K = I:", np.allclose(sum(k.conj().T @ k for k in ks), np.eye(ch.dim)))

d = channels.differential(ch)
print("differential has", len(d.terms), "terms, one per edge expansion")
