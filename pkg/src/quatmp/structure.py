"""Complex embedding of quaternion matrices and 2x2-block structure checks.

The three block patterns (Type-I, Type-II, Type-III) act on a ``2n x 2n``
complex matrix viewed as an ``n x n`` grid of 2x2 blocks. Every pattern asks
for diagonal blocks ``t_i * I_2``; they differ in how the block below the
diagonal is tied to its mirror above it. With upper block ``[[P, Q], [R, S]]``:

* Type-I:   lower block is ``[[S, -Q], [-R, P]]``.
* Type-II:  upper block written through parameters ``a, b, c, d``
  (``P = a + c i``, ``Q = b + d i``, ``R = -conj(b) - conj(d) i``,
  ``S = conj(a) + conj(c) i``), lower block rebuilt from those parameters.
* Type-III: upper block is ``[[P, Q], [-conj(Q), conj(P)]]`` and the lower
  block is ``[[conj(P), -Q], [conj(Q), P]]``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvertibilityError, PreconditionError
from .quaternion import Quaternion, QuaternionMatrix


class Kind(str, enum.Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III = "TypeIII"


@dataclass(frozen=True)
class StructureReport:
    kind: Kind
    residual: float
    block_dim: int

    def holds(self, tol: float) -> bool:
        return self.residual <= tol


def embed_scalar(x: Quaternion) -> np.ndarray:
    return np.array(
        [[complex(x.a, x.b), complex(x.c, x.d)], [complex(-x.c, x.d), complex(x.a, -x.b)]]
    )


def embed_matrix(X: QuaternionMatrix | np.ndarray) -> np.ndarray:
    """Map a ``p x n`` quaternion matrix to its ``2p x 2n`` complex form."""
    q = X.coeffs if isinstance(X, QuaternionMatrix) else np.asarray(X, dtype=float)
    p, n = q.shape[:2]
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty((p, 2, n, 2), dtype=complex)
    out[:, 0, :, 0] = a + 1j * b
    out[:, 0, :, 1] = c + 1j * d
    out[:, 1, :, 0] = -c + 1j * d
    out[:, 1, :, 1] = a - 1j * b
    return out.reshape(2 * p, 2 * n)


def unembed_matrix(A: np.ndarray) -> QuaternionMatrix:
    """Inverse of :func:`embed_matrix`; reads the first row of every block."""
    A = np.asarray(A)
    if A.shape[0] % 2 or A.shape[1] % 2:
        raise DimensionError(f"embedded matrix needs even dimensions, got {A.shape}")
    blk = A.reshape(A.shape[0] // 2, 2, A.shape[1] // 2, 2)
    top_left = blk[:, 0, :, 0]
    top_right = blk[:, 0, :, 1]
    return QuaternionMatrix(
        np.stack([top_left.real, top_left.imag, top_right.real, top_right.imag], axis=-1)
    )


def _blocks(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"square matrix required, got shape {A.shape}")
    if A.shape[0] % 2:
        raise DimensionError(f"even dimension required, got {A.shape[0]}")
    n = A.shape[0] // 2
    return A.reshape(n, 2, n, 2).transpose(0, 2, 1, 3)


def _expected_lower(upper: np.ndarray, kind: Kind) -> np.ndarray:
    P, Q, R, S = upper[..., 0, 0], upper[..., 0, 1], upper[..., 1, 0], upper[..., 1, 1]
    low = np.empty(upper.shape, dtype=complex)
    if kind is Kind.TYPE_I:
        low[..., 0, 0], low[..., 0, 1] = S, -Q
        low[..., 1, 0], low[..., 1, 1] = -R, P
    elif kind is Kind.TYPE_II:
        a = (P + np.conj(S)) / 2
        c = (P - np.conj(S)) / 2j
        b = (Q - np.conj(R)) / 2
        d = (Q + np.conj(R)) / 2j
        low[..., 0, 0] = np.conj(a) + np.conj(c) * 1j
        low[..., 0, 1] = -b - d * 1j
        low[..., 1, 0] = np.conj(b) + np.conj(d) * 1j
        low[..., 1, 1] = a + c * 1j
    else:
        low[..., 0, 0], low[..., 0, 1] = np.conj(P), -Q
        low[..., 1, 0], low[..., 1, 1] = np.conj(Q), P
    return low


def structure_residual(A: np.ndarray, kind: Kind | str) -> StructureReport:
    """Largest absolute violation of the block pattern ``kind`` in ``A``.

    Raises
    ------
    DimensionError
        If ``A`` is not square with even dimension.
    """
    kind = Kind(kind)
    blk = _blocks(A)
    n = blk.shape[0]
    resid = 0.0

    diag = blk[np.arange(n), np.arange(n)]
    resid = max(
        resid,
        float(np.max(np.abs(diag[:, 0, 1]), initial=0.0)),
        float(np.max(np.abs(diag[:, 1, 0]), initial=0.0)),
        float(np.max(np.abs(diag[:, 0, 0] - diag[:, 1, 1]), initial=0.0)),
    )

    ju, lu = np.triu_indices(n, k=1)
    if ju.size:
        upper = blk[ju, lu]
        lower = blk[lu, ju]
        if kind is Kind.TYPE_III:
            P, Q, R, S = upper[:, 0, 0], upper[:, 0, 1], upper[:, 1, 0], upper[:, 1, 1]
            resid = max(
                resid,
                float(np.max(np.abs(R + np.conj(Q)))),
                float(np.max(np.abs(S - np.conj(P)))),
            )
        resid = max(resid, float(np.max(np.abs(lower - _expected_lower(upper, kind)))))

    return StructureReport(kind=kind, residual=resid, block_dim=n)


def inverse_structure_check(
    A: np.ndarray, tol_in: float = 1e-10, max_cond: float = 1e12
) -> StructureReport:
    """Invert a Type-III matrix and report the Type-I residual of the inverse.

    ``tol_in`` is applied relative to ``max(1, max|A|)``.
    """
    A = np.asarray(A, dtype=complex)
    pre = structure_residual(A, Kind.TYPE_III)
    scale = max(1.0, float(np.max(np.abs(A))))
    if pre.residual > tol_in * scale:
        raise PreconditionError(
            f"input is not Type-III: residual {pre.residual:.3e} > {tol_in * scale:.3e}"
        )
    with np.errstate(all="ignore"):
        cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond >= max_cond:
        raise InvertibilityError(f"matrix is singular or ill-conditioned (cond={cond:.3e})")
    inv = np.linalg.inv(A)
    return structure_residual(inv, Kind.TYPE_I)


def random_type_iii(n: int, rng: np.random.Generator, shift: complex = 0.0) -> np.ndarray:
    """Random Type-III matrix of size ``2n`` with complex Gaussian parameters."""

    def cn(size):
        return rng.standard_normal(size) + 1j * rng.standard_normal(size)

    blk = np.zeros((n, n, 2, 2), dtype=complex)
    t = cn(n) + shift
    blk[np.arange(n), np.arange(n), 0, 0] = t
    blk[np.arange(n), np.arange(n), 1, 1] = t
    ju, lu = np.triu_indices(n, k=1)
    P, Q = cn(ju.size), cn(ju.size)
    blk[ju, lu, 0, 0], blk[ju, lu, 0, 1] = P, Q
    blk[ju, lu, 1, 0], blk[ju, lu, 1, 1] = -np.conj(Q), np.conj(P)
    blk[lu, ju, 0, 0], blk[lu, ju, 0, 1] = np.conj(P), -Q
    blk[lu, ju, 1, 0], blk[lu, ju, 1, 1] = np.conj(Q), P
    return blk.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)
