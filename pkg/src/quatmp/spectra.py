"""Sample covariance matrices, their spectra, ESDs and empirical Stieltjes transforms."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import kernels
from .errors import ContractError, DomainError
from .quaternion import QuaternionMatrix
from .structure import embed_matrix

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10


def sample_covariance(X: QuaternionMatrix | np.ndarray) -> np.ndarray:
    """``n^{-1} psi(X) psi(X)^*`` as a ``2p x 2p`` Hermitian complex matrix."""
    Y = embed_matrix(X)
    n = Y.shape[1] // 2
    S = (Y @ Y.conj().T) / n
    # zgemm leaves rounding-level asymmetry
    return 0.5 * (S + S.conj().T)


def hermitian_eigenvalues(A: np.ndarray, check: bool = True) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Backed by LAPACK ``heevr``. With ``check`` the trace identity
    ``sum(lambda) == tr(A)`` is verified and a :class:`ContractError` raised
    if it is off by more than ``1e-10 * ||A|| * dim``.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ContractError(f"square matrix required, got {A.shape}")
    scale = float(np.max(np.abs(A))) if A.size else 0.0
    asym = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if asym > HERMITIAN_TOL * max(scale, np.finfo(float).tiny):
        raise ContractError(f"matrix is not Hermitian (max|A - A*| = {asym:.3e})")
    lam = scipy.linalg.eigvalsh(A, driver="evr", check_finite=True)
    lam = np.sort(lam.real)
    if check and lam.size:
        norm2 = max(abs(lam[0]), abs(lam[-1]))
        tr = float(np.trace(A).real)
        if abs(lam.sum() - tr) > TRACE_TOL * max(norm2, 1e-300) * lam.size:
            raise ContractError(f"eigenvalue sum {lam.sum()!r} disagrees with trace {tr!r}")
    return lam


def eigen_residuals(A: np.ndarray) -> np.ndarray:
    """``||A v - lambda v||`` per eigenpair; diagnostic for the accuracy contract."""
    lam, V = np.linalg.eigh(A)
    return np.linalg.norm(A @ V - V * lam, axis=0)


@dataclass(frozen=True)
class SpectralSample:
    """Sorted spectrum of an embedded ``2p x 2p`` sample covariance matrix."""

    eigenvalues: np.ndarray
    dim_p: int
    dim_n: int
    seed: int = 0
    distribution_tag: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        if lam.ndim != 1:
            raise ValueError("eigenvalues must be one-dimensional")
        if lam.size > 1 and np.any(np.diff(lam) < 0):
            raise ValueError("eigenvalues must be sorted ascending")
        lam.setflags(write=False)
        object.__setattr__(self, "eigenvalues", lam)

    @property
    def y_n(self) -> float:
        return self.dim_p / self.dim_n

    @property
    def size(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def cdf(self, x):
        return esd_eval(self, x)

    def cdf_left(self, x):
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.eigenvalues, x, side="left") / self.size
        return float(out) if out.ndim == 0 else out

    __call__ = cdf

    def pairing_gap(self) -> float:
        return kernels.max_pair_gap(self.eigenvalues)

    def count_below(self, rel: float = 1e-8) -> int:
        return int(np.count_nonzero(self.eigenvalues <= rel * max(self.lambda_max, 0.0)))


def spectrum(
    X: QuaternionMatrix | np.ndarray, seed: int = 0, distribution_tag: str = ""
) -> SpectralSample:
    q = X.coeffs if isinstance(X, QuaternionMatrix) else np.asarray(X)
    lam = hermitian_eigenvalues(sample_covariance(q))
    return SpectralSample(lam, q.shape[0], q.shape[1], seed, distribution_tag)


def esd_eval(s: SpectralSample, x):
    """Fraction of eigenvalues ``<= x`` (right-continuous)."""
    x = np.asarray(x, dtype=float)
    out = np.searchsorted(s.eigenvalues, x, side="right") / s.size
    return float(out) if out.ndim == 0 else out


def empirical_stieltjes(s: SpectralSample | np.ndarray, z):
    """``(1 / 2p) sum_j 1 / (lambda_j - z)`` for ``Im z > 0``."""
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.imag > 0)):
        raise DomainError("empirical Stieltjes transform requires Im z > 0")
    lam = s.eigenvalues if isinstance(s, SpectralSample) else np.asarray(s, dtype=float)
    out = kernels.stieltjes_sums(lam, z.ravel()).reshape(z.shape)
    return complex(out) if out.ndim == 0 else out
