"""Density matrices, their two classical shadows, and quantum entropies.

``diag_prob`` reads off the diagonal distribution P(rho); ``eig_prob`` the
sorted spectrum Lambda(rho).  Spectra come from a cyclic complex Jacobi
solver; LAPACK is only used for the positivity gate on inputs.
"""

from __future__ import annotations

import numpy as np

from .prob import SHANNON, EntropyFamily

HERM_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9


class InvalidStateError(ValueError):
    pass


class EigenSolverError(RuntimeError):
    pass


def check_density(rho, tol: float = HERM_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array after validating it as a state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise InvalidStateError(f"expected a non-empty square matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidStateError("matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace is {float(tr):.12g}, expected 1")
    lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if lam.min() < -PSD_TOL:
        raise InvalidStateError(f"negative eigenvalue {float(lam.min()):.3e}")
    return rho


def is_density(rho, tol: float = HERM_TOL) -> bool:
    try:
        check_density(rho, tol)
    except InvalidStateError:
        return False
    return True


def jacobi_eigh(a, tol: float = 1e-14, max_sweeps: int = 100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ``a = v @ diag(w) @ v.conj().T``, eigenvalues in
    non-increasing order.  Sweeps stop once the off-diagonal Frobenius mass is
    below ``tol``.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    a = 0.5 * (a + a.conj().T)
    mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[mask]) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                r = abs(b)
                if r < 1e-300:
                    continue
                # phase makes the pivot real, then a real symmetric Schur rotation
                ph = b / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = [[c, s], [-s e, c e]] with e = conj(phase); a <- G^* a G
                e = ph.conjugate()
                g10, g11 = -s * e, c * e
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap + g10 * aq
                a[:, q] = s * ap + g11 * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap + g10.conjugate() * aq
                a[q, :] = s * ap + g11.conjugate() * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp + g10 * vq
                v[:, q] = s * vp + g11 * vq
    else:
        raise EigenSolverError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def diag_prob(rho) -> np.ndarray:
    """P(rho): the diagonal entries, tiny negatives clamped to zero."""
    rho = check_density(rho)
    return np.clip(np.diag(rho).real, 0.0, None)


def eig_prob(rho, check: bool = True) -> np.ndarray:
    """Lambda(rho): eigenvalues sorted non-increasingly, clamped at zero."""
    if check:
        rho = check_density(rho)
    w, v = jacobi_eigh(rho)
    if np.max(np.abs(v @ np.diag(w) @ v.conj().T - rho)) > 1e-10:
        raise EigenSolverError("eigen-decomposition fails reconstruction check")
    return np.clip(w, 0.0, None)


def majorizes(a, c, tol: float = 1e-9) -> bool:
    """True iff the non-increasing sequence ``a`` majorizes ``c``."""
    a = np.asarray(a, dtype=float)
    c = np.asarray(c, dtype=float)
    if a.shape != c.shape:
        raise ValueError("sequences must have equal length")
    for x in (a, c):
        if np.any(np.diff(x) > tol):
            raise ValueError("sequences must be sorted non-increasingly")
    if abs(a.sum() - c.sum()) > tol:
        raise ValueError("sequences must have equal totals")
    return bool(np.all(np.cumsum(a) >= np.cumsum(c) - tol))


def quantum_entropy(family: EntropyFamily, rho) -> float:
    """von Neumann (Shannon family), Renyi or Tsallis entropy of a state.

    All three are functions of the spectrum, evaluated with the same zero
    conventions as the classical families.
    """
    return family(eig_prob(rho))


def von_neumann(rho) -> float:
    return quantum_entropy(SHANNON, rho)


def pure_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def maximally_mixed(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex) / n


def random_density(rng, n: int, rank: int | None = None) -> np.ndarray:
    """``G G^*`` normalized, with ``G`` an ``n x rank`` complex Gaussian."""
    k = n if rank is None else rank
    g = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_unitary(rng, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with the phase correction."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def psd_sqrt(b, clamp: float = 1e-12) -> np.ndarray:
    """Hermitian square root of a PSD matrix via the Jacobi solver.

    Eigenvalues in ``[-clamp, 0)`` are treated as zero; anything more
    negative means the input was not PSD.
    """
    w, v = jacobi_eigh(b)
    if w.min() < -clamp:
        raise InvalidStateError(f"matrix is not PSD (eigenvalue {w.min()!r})")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def to_json(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"dim": rho.shape[0], "re": rho.real.tolist(), "im": rho.imag.tolist()}


def from_json(d: dict) -> np.ndarray:
    re = np.asarray(d["re"], dtype=float)
    im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
    m = re + 1j * im
    if "dim" in d and m.shape != (d["dim"], d["dim"]):
        raise InvalidStateError(f"declared dim {d['dim']} does not match shape {m.shape}")
    return m
