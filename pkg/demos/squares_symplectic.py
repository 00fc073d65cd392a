"""Little squares acting on almost-symplectic pairings over Z/p.

Run: python3 demos/squares_symplectic.py
"""

from fractions import Fraction as F

import numpy as np

from qoperad import squares, symplectic

rng = np.random.default_rng(4)
a = squares.random_strict_tuple(rng, 2, 3)
b = squares.random_strict_tuple(rng, 2, 2)
c = squares.compose_squares(a, 1, b)
print("composite has", len(c.rects), "squares:")
for r in c.rects:
    print("  ", [str(e) for e in r.endpoints()])

# one quarter square holding the pairing [[0,2],[2,0]] over Z/2
quarter = squares.LittleSquareTuple((squares.rect(0, F(1, 2), 0, F(1, 2)),))
w = symplectic.algebra_action(quarter, [symplectic.AlmostSymplectic(2, 1, [[0, 2], [2, 0]])])
print("action table:\n", w.table)

# the loop built from a random pairing over Z/3
om = symplectic.random_omega(rng, 3, 1)
lp = symplectic.loop_from_omega(om)
print("quasigroup:", lp.is_quasigroup, " non-associative triple:", lp.associativity_witness())
