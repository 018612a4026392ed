"""Kolmogorov and Levy distances between spectral distributions, plus the
rank and trace perturbation bounds they are checked against.

A distribution argument may be a :class:`SpectralSample`, a sorted 1-D
array of atoms (an ESD), or any object with ``cdf``/``cdf_left`` methods
accepting arrays (e.g. :class:`MPLaw`). A bare callable is treated as a
continuous CDF.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .spectra import SpectralSample

LEVY_TOL = 1e-7


def _atoms(F) -> np.ndarray | None:
    if isinstance(F, SpectralSample):
        return F.eigenvalues
    if isinstance(F, np.ndarray) or isinstance(F, (list, tuple)):
        arr = np.asarray(F, dtype=float)
        if arr.ndim == 1:
            return np.sort(arr)
    return None


class _Step:
    def __init__(self, atoms: np.ndarray):
        self.atoms = atoms

    def cdf(self, x):
        return np.searchsorted(self.atoms, x, side="right") / self.atoms.size

    def cdf_left(self, x):
        return np.searchsorted(self.atoms, x, side="left") / self.atoms.size


class _Continuous:
    def __init__(self, f):
        self.cdf = self.cdf_left = f


def _as_cdf(G):
    atoms = _atoms(G)
    if atoms is not None:
        return _Step(atoms)
    if hasattr(G, "cdf"):
        if hasattr(G, "cdf_left"):
            return G
        return _Continuous(G.cdf)
    if callable(G):
        return _Continuous(G)
    raise TypeError(f"cannot interpret {type(G).__name__} as a distribution function")


def kolmogorov_distance(F, G) -> float:
    """``sup_x |F(x) - G(x)|`` for an ESD ``F`` and a nondecreasing ``G``.

    Exact: on each gap between consecutive atoms of ``F`` the extreme
    difference is attained at one of the gap's ends, so ``G`` and its left
    limit are only evaluated at the atoms.
    """
    fa = _atoms(F)
    if fa is None:
        raise TypeError("first argument must be an empirical spectral distribution")
    ga = _atoms(G)
    if ga is not None:
        return float(kernels.ks_two_sample(fa, ga))
    G = _as_cdf(G)
    s = np.unique(fa)
    Fs = np.searchsorted(fa, s, side="right") / fa.size
    Fprev = np.concatenate([[0.0], Fs[:-1]])
    Gs = np.asarray(G.cdf(s), dtype=float)
    Gl = np.asarray(G.cdf_left(s), dtype=float)
    d = max(
        float(np.max(np.abs(Fs - Gs))),
        float(np.max(np.abs(Fprev - Gl))),
    )
    return min(d, 1.0)


def _levy_feasible(s, F_at, F_left, G, eps) -> bool:
    # G(x) <= F(x + eps) + eps: worst case just before each atom of F shifted by -eps
    up = np.max(np.asarray(G.cdf_left(s - eps)) - F_left)
    # F(x - eps) - eps <= G(x): worst case at each atom of F shifted by +eps
    lo = np.max(F_at - np.asarray(G.cdf(s + eps)))
    return up <= eps and lo <= eps


def levy_distance(F, G, tol: float = LEVY_TOL) -> float:
    """``inf{eps : F(x - eps) - eps <= G(x) <= F(x + eps) + eps for all x}``.

    ``F`` must be an ESD. The corridor condition is checked exactly at the
    atoms of ``F``; bisection on ``eps`` stops once the bracket is below ``tol``.
    """
    fa = _atoms(F)
    if fa is None:
        raise TypeError("first argument must be an empirical spectral distribution")
    Gc = _as_cdf(G)
    s = np.unique(fa)
    F_at = np.searchsorted(fa, s, side="right") / fa.size
    F_left = np.searchsorted(fa, s, side="left") / fa.size
    if _levy_feasible(s, F_at, F_left, Gc, 0.0):
        return 0.0
    lo, hi = 0.0, min(1.0, kolmogorov_distance(F, G) + tol)
    while not _levy_feasible(s, F_at, F_left, Gc, hi):
        hi = min(1.0, 2.0 * hi)
        if hi >= 1.0:
            break
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _levy_feasible(s, F_at, F_left, Gc, mid):
            hi = mid
        else:
            lo = mid
    return hi


def levy_fourth_power_bound(A: np.ndarray, B: np.ndarray) -> float:
    """Right-hand side of ``L^4(F^{AA*}, F^{BB*}) <= (2/P^2) tr(AA* + BB*) tr((A-B)(A-B)*)``
    for ``P x N`` matrices ``A`` and ``B``."""
    P = A.shape[0]
    tr_sum = float(np.sum(np.abs(A) ** 2) + np.sum(np.abs(B) ** 2))
    tr_diff = float(np.sum(np.abs(A - B) ** 2))
    return 2.0 / P**2 * tr_sum * tr_diff


def rank_bound(A: np.ndarray, B: np.ndarray, tol: float | None = None) -> float:
    """``rank(A - B) / P``, the Kolmogorov-distance bound between ``F^{AA*}`` and ``F^{BB*}``."""
    return np.linalg.matrix_rank(A - B, tol=tol) / A.shape[0]
