"""Classical probabilities on finite sets as an operad.

Probability vectors are plain 1-d float arrays.  Composition multiplies a
distribution over blocks into distributions inside each block; the average
algebra and the thermodynamic (free-energy) algebra act on real numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from .trees import Tree

NORM_TOL = 1e-9


class SimplexError(ValueError):
    pass


def as_prob(p, tol: float = NORM_TOL, renormalize: bool = False) -> np.ndarray:
    """Validate ``p`` as a point of the simplex.

    Entries within ``tol`` below zero are clamped.  Nothing is renormalized
    unless asked for explicitly.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise SimplexError("probability vector must be a non-empty 1-d array")
    if np.any(p < -tol) or not np.all(np.isfinite(p)):
        raise SimplexError(f"negative or non-finite entries in {p}")
    p = np.clip(p, 0.0, None)
    s = p.sum()
    if renormalize:
        if s <= 0:
            raise SimplexError("cannot renormalize a zero vector")
        return p / s
    if abs(s - 1.0) > tol:
        raise SimplexError(f"entries sum to {s!r}, not 1")
    return p


def compose(P, parts: Sequence) -> np.ndarray:
    """Operad composition: block ``r`` of the result is ``P[r] * parts[r]``."""
    P = as_prob(P)
    if len(parts) != P.size:
        raise SimplexError(f"expected {P.size} parts, got {len(parts)}")
    return np.concatenate([P[r] * as_prob(q) for r, q in enumerate(parts)])


def average(P, xs) -> float:
    """Action of the operad on non-negative reals by convex combination."""
    P = as_prob(P)
    xs = np.asarray(xs, dtype=float)
    if xs.shape != P.shape:
        raise SimplexError("one value per outcome required")
    return float(P @ xs)


@dataclass(frozen=True)
class EntropyFamily:
    """Shannon, Renyi or Tsallis entropy, natural logarithm throughout.

    Zero probabilities are dropped before evaluation (``0 log 0 = 0``,
    ``0**q = 0``), which is exactly the coherence condition.
    """
    kind: str = "shannon"
    q: float | None = None

    def __post_init__(self):
        if self.kind not in ("shannon", "renyi", "tsallis"):
            raise ValueError(f"unknown entropy family {self.kind!r}")
        if self.kind != "shannon":
            if self.q is None or self.q <= 0 or self.q == 1:
                raise ValueError(f"{self.kind} entropy needs q > 0, q != 1")

    @classmethod
    def shannon(cls):
        return cls("shannon")

    @classmethod
    def renyi(cls, q):
        return cls("renyi", float(q))

    @classmethod
    def tsallis(cls, q):
        return cls("tsallis", float(q))

    @property
    def extensive(self) -> bool:
        return self.kind == "shannon"

    def __call__(self, p) -> float:
        return float(self.batch(np.asarray(p, dtype=float)[None, :])[0])

    def batch(self, P: np.ndarray) -> np.ndarray:
        """Evaluate along the last axis of a stack of (sub-)distributions."""
        pos = P > 0
        safe = np.where(pos, P, 1.0)
        if self.kind == "shannon":
            return -np.sum(np.where(pos, P * np.log(safe), 0.0), axis=-1) + 0.0
        s = np.sum(np.where(pos, safe ** self.q, 0.0), axis=-1)
        if self.kind == "renyi":
            return np.log(s) / (1.0 - self.q) + 0.0
        return (s - 1.0) / (1.0 - self.q) + 0.0

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.q is not None:
            d["q"] = self.q
        return d

    @classmethod
    def from_json(cls, d: dict) -> "EntropyFamily":
        return cls(d["kind"], d.get("q"))


SHANNON = EntropyFamily.shannon()


def entropy(family: EntropyFamily, P) -> float:
    return family(as_prob(P))


def coherence_check(family: EntropyFamily, P, tol: float = 1e-12) -> bool:
    """Entropy of ``P`` agrees with the entropy of its non-zero entries."""
    P = as_prob(P)
    return abs(family(P) - family(P[P > 0])) <= tol


def _tree_entropy(family: EntropyFamily, tau: Tree, P: np.ndarray) -> np.ndarray:
    # P has shape (m, n_leaves); rows are evaluated independently
    if tau.is_leaf:
        return np.zeros(P.shape[0])
    sizes = [c.n_leaves for c in tau.children]
    bounds = np.cumsum([0] + sizes)
    q = np.stack([P[:, a:b].sum(axis=1) for a, b in zip(bounds[:-1], bounds[1:])], axis=1)
    total = family.batch(q)
    for j, child in enumerate(tau.children):
        if child.is_leaf:
            continue
        mass = q[:, j]
        live = mass > 0
        block = P[:, bounds[j]:bounds[j + 1]] / np.where(live, mass, 1.0)[:, None]
        # empty blocks get a point mass so the masked-out value stays finite
        block[~live, 0] = 1.0
        total = total + np.where(live, mass * _tree_entropy(family, child, block), 0.0)
    return total


def tree_entropy(family: EntropyFamily, tau: Tree, P) -> float:
    """Entropy attached to the branching of ``tau``.

    The root splits ``P`` into the masses of its subtrees' leaf blocks; the
    value is the family entropy of those masses plus the mass-weighted tree
    entropies of each renormalized block.  Empty blocks contribute nothing.
    """
    P = as_prob(P)
    if P.size != tau.n_leaves:
        raise SimplexError(f"tree has {tau.n_leaves} leaves, P has {P.size}")
    return float(_tree_entropy(family, tau, P[None, :])[0])


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise ValueError("inverse temperature must be positive")


def free_energy_closed_form(xs, beta: float) -> float:
    """``-(1/beta) log sum exp(-beta x)``, the Shannon minimum."""
    _check_beta(beta)
    xs = np.asarray(xs, dtype=float)
    return float(-logsumexp(-beta * xs) / beta)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1), 0.0)


def thermo_objective(family, tau, xs, beta):
    """Objective on one point (1-d) or a stack of points (2-d, one per row)."""
    xs = np.asarray(xs, dtype=float)

    def f(p):
        p = np.clip(np.asarray(p, dtype=float), 0.0, None)
        flat = p.ndim == 1
        P = p[None, :] if flat else p
        P = P / P.sum(axis=1, keepdims=True)
        vals = P @ xs - _tree_entropy(family, tau, P) / beta
        return float(vals[0]) if flat else vals

    return f


def thermo_algebra(family: EntropyFamily, tau: Tree, xs, beta: float,
                   restarts: int = 50, seed: int = 0) -> float:
    """Minimum over the simplex of ``<p, x> - S_tau(p) / beta``.

    For Shannon the minimizer is the Gibbs distribution (the chain rule makes
    the tree entropy equal to the flat one), so the objective is evaluated
    there.  Other families are minimized numerically from the uniform point
    and ``restarts`` random Dirichlet starting points.
    """
    _check_beta(beta)
    xs = np.asarray(xs, dtype=float)
    n = xs.size
    if n != tau.n_leaves:
        raise SimplexError(f"tree has {tau.n_leaves} leaves, got {n} values")
    if n == 1:
        return float(xs[0])
    f = thermo_objective(family, tau, xs, beta)
    if family.extensive:
        w = -beta * xs
        return f(np.exp(w - logsumexp(w)))
    return minimize_on_simplex(f, n, restarts=restarts, seed=seed)[0]


def minimize_on_simplex(f, n: int, restarts: int = 50, seed: int = 0):
    """Multi-start SLSQP on the closed simplex; returns ``(value, argmin)``."""
    rng = np.random.default_rng(seed)
    starts = [np.full(n, 1.0 / n)] + list(rng.dirichlet(np.ones(n), size=restarts))
    starts += list(np.eye(n))
    cons = ({"type": "eq", "fun": lambda p: p.sum() - 1.0,
             "jac": lambda p: np.ones_like(p)},)
    best_val, best_p = np.inf, None
    for p0 in starts:
        val0 = f(p0)
        if val0 < best_val:
            best_val, best_p = val0, p0
        res = minimize(f, p0, method="SLSQP", bounds=[(0.0, 1.0)] * n,
                       constraints=cons, options={"ftol": 1e-14, "maxiter": 500})
        p = project_simplex(res.x)
        val = f(p)
        if val < best_val:
            best_val, best_p = val, p
    return best_val, best_p


def grid_minimum(f, n: int, step: float = 1e-3):
    """Brute-force minimum of ``f`` over a regular simplex grid (n <= 3)."""
    m = int(round(1.0 / step))
    if n == 1:
        return f(np.ones(1)), np.ones(1)
    if n == 2:
        pts = np.stack([np.arange(m + 1), m - np.arange(m + 1)], axis=1) / m
    elif n == 3:
        i, j = np.triu_indices(m + 1)
        pts = np.stack([i, j - i, m - j], axis=1) / m
    else:
        raise ValueError("grid search is limited to n <= 3")
    vals = f(pts)
    k = int(np.argmin(vals))
    return float(vals[k]), pts[k]
