"""Character subspaces and code spaces on the loop algebra of a pairing.

Run: python3 demos/codes_demo.py
"""

from qoperad import codes, symplectic

om = symplectic.AlmostSymplectic(3, 1, [[1, 1, 0], [1, 0, 0], [2, 0, 1]])
h = codes.LoopAlgebra.from_omega(om)
dims = [codes.chi_subspace(h, k).shape[1] for k in range(3)]
print("dim H =", h.dim, " dim H_chi =", dims, " sum =", sum(dims))

cs = codes.code_space(om, 0, [1], [1.0])
print("code space dimension:", cs.to_json()["dimension"])
