"""Operads of probabilities, quantum states, channels and little squares.

Submodules:

- ``trees``: planar rooted trees, grafting, insertion and the edge differential
- ``prob``: simplex composition, entropies, thermodynamic algebras
- ``density``: density matrices, spectra, majorization
- ``qstate``: the two block-diagonal operads of quantum states
- ``measurement``: projective measurement trees and their entropies
- ``channels``: Kraus channels labelled by trees
- ``loops``: finite quasigroups, loops and Latin-square designs
- ``squares``: rational little squares, colored p-ary squares
- ``symplectic``: almost-symplectic pairings and their central-extension loops
- ``codes``: character subspaces and code spaces on loop algebras
"""

__version__ = "0.1.0"
