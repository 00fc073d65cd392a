"""Non-unital operads of quantum states.

Both operads compose a root state with ``n`` part states into a block-diagonal
state.  The block weights are the diagonal of the root for ``gamma_p`` and
its non-increasingly sorted spectrum for ``gamma_lambda``.  The 1x1 state
``[[1]]`` is the would-be unit; it is a left unit but not a right unit.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .density import InvalidStateError, check_density, diag_prob, eig_prob

ONE = np.ones((1, 1), dtype=complex)


def _block_diag(weights, parts) -> np.ndarray:
    dims = [p.shape[0] for p in parts]
    out = np.zeros((sum(dims), sum(dims)), dtype=complex)
    k = 0
    for w, p, d in zip(weights, parts, dims):
        out[k:k + d, k:k + d] = w * p
        k += d
    return out


def _parts(rho, parts: Sequence) -> list[np.ndarray]:
    if len(parts) != rho.shape[0]:
        raise InvalidStateError(f"root has arity {rho.shape[0]}, got {len(parts)} parts")
    return [check_density(p) for p in parts]


def gamma_p(rho, parts: Sequence) -> np.ndarray:
    """Block-diagonal composite with blocks ``rho[i, i] * parts[i]``."""
    rho = check_density(rho)
    return _block_diag(diag_prob(rho), _parts(rho, parts))


def gamma_lambda(rho, parts: Sequence) -> np.ndarray:
    """Block-diagonal composite with blocks ``lambda_i * parts[i]``."""
    rho = check_density(rho)
    return _block_diag(eig_prob(rho), _parts(rho, parts))


def _insert(rho, i: int, sigma, weight: float) -> np.ndarray:
    n, m = rho.shape[0], sigma.shape[0]
    k = i - 1
    keep = [j for j in range(n) if j != k]
    out = np.zeros((n + m - 1, n + m - 1), dtype=complex)
    # old index j maps to j (j < k) or j + m - 1 (j > k)
    new = [j if j < k else j + m - 1 for j in keep]
    out[np.ix_(new, new)] = rho[np.ix_(keep, keep)]
    out[k:k + m, k:k + m] = weight * sigma
    return out


def insert_p(rho, i: int, sigma) -> np.ndarray:
    """``rho o_i sigma``: row/column ``i`` is replaced by the block
    ``rho[i, i] * sigma``, decoupled from every other row and column."""
    rho = check_density(rho)
    sigma = check_density(sigma)
    if not 1 <= i <= rho.shape[0]:
        raise IndexError(f"insertion index {i} out of range 1..{rho.shape[0]}")
    return _insert(rho, i, sigma, diag_prob(rho)[i - 1])


def insert_lambda(rho, i: int, sigma) -> np.ndarray:
    """As :func:`insert_p` but with the i-th largest eigenvalue as weight.

    The root enters only through its spectrum, so the insertion is done in
    the root's sorted eigenbasis: the result is ``diag(Lambda(rho))`` with
    entry ``i`` replaced by the block ``lambda_i * sigma``.  Iterating from the
    last index down reproduces ``gamma_lambda`` up to a unitary inside each
    earlier-inserted block (those blocks get re-diagonalized), so the two
    always share their spectrum.
    """
    rho = check_density(rho)
    sigma = check_density(sigma)
    if not 1 <= i <= rho.shape[0]:
        raise IndexError(f"insertion index {i} out of range 1..{rho.shape[0]}")
    lam = eig_prob(rho)
    return _insert(np.diag(lam).astype(complex), i, sigma, lam[i - 1])


def iterated_insert(rho, parts: Sequence, insert=insert_p) -> np.ndarray:
    """``(...(rho o_n rho_n) ... o_1 rho_1)``."""
    out = np.asarray(rho, dtype=complex)
    for i in range(len(parts), 0, -1):
        out = insert(out, i, parts[i - 1])
    return out


def perm_matrix(sigma: Sequence[int]) -> np.ndarray:
    """Matrix sending basis vector ``e_j`` to ``e_sigma(j)`` (0-based)."""
    sigma = list(sigma)
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of 0..{n - 1}")
    s = np.zeros((n, n))
    s[sigma, range(n)] = 1.0
    return s


def perm_act(sigma: Sequence[int], rho) -> np.ndarray:
    """``sigma rho sigma^*``; the new diagonal is ``P(rho)[sigma^-1(i)]``."""
    rho = np.asarray(rho, dtype=complex)
    if len(sigma) != rho.shape[0]:
        raise ValueError("permutation and matrix dimensions differ")
    s = perm_matrix(sigma)
    return s @ rho @ s.T


def inverse_perm(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for j, s in enumerate(sigma):
        inv[s] = j
    return inv


def block_perm(sigma: Sequence[int], dims: Sequence[int]) -> list[int]:
    """Permutation of ``sum(dims)`` indices moving block ``j`` to slot ``sigma(j)``.

    ``dims[j]`` is the size of block ``j`` before the move.
    """
    inv = inverse_perm(sigma)
    new_dims = [dims[inv[s]] for s in range(len(sigma))]
    new_start = np.concatenate([[0], np.cumsum(new_dims)[:-1]]).astype(int)
    old_start = np.concatenate([[0], np.cumsum(dims)[:-1]]).astype(int)
    out = [0] * int(sum(dims))
    for j, d in enumerate(dims):
        for r in range(d):
            out[old_start[j] + r] = int(new_start[sigma[j]] + r)
    return out


def blockwise_perm(sigmas: Sequence[Sequence[int]]) -> list[int]:
    """Direct sum of permutations acting inside consecutive blocks."""
    out, off = [], 0
    for s in sigmas:
        out.extend(off + x for x in s)
        off += len(s)
    return out
