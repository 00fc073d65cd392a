"""The two block-diagonal compositions of density matrices.

Run: python3 demos/quantum_operads.py
"""

import numpy as np

from qoperad import density, qstate
from qoperad.density import random_density
from qoperad.qstate import ONE

rng = np.random.default_rng(1)
rho = random_density(rng, 2)
parts = [random_density(rng, 2), random_density(rng, 1)]

out = qstate.gamma_p(rho, parts)
print("gamma_P output:\n", np.round(out.real, 4))
print("trace:", np.trace(out).real)

# the spectral composition reorders eigenvalues and so is not symmetric
r = np.diag([0.3, 0.7])
print("gamma_Lambda(diag(.3,.7); 1, I/2):\n", np.round(qstate.gamma_lambda(r, [ONE, np.eye(2) / 2]).real, 3))

# with mixed middle states the spectral composition is not associative entrywise
root = np.diag([0.5, 0.5])
mids = [np.diag([0.9, 0.1]), np.diag([0.6, 0.4])]
lhs = qstate.gamma_lambda(qstate.gamma_lambda(root, mids), [ONE] * 4)
rhs = qstate.gamma_lambda(root, [qstate.gamma_lambda(m, [ONE, ONE]) for m in mids])
print("left diagonal :", np.round(np.diag(lhs).real, 3))
print("right diagonal:", np.round(np.diag(rhs).real, 3))
print("same spectrum :", np.allclose(density.eig_prob(lhs), density.eig_prob(rhs)))
