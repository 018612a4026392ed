"""Quaternion scalars and dense quaternion matrices.

A quaternion ``a e + b i + c j + d k`` is stored as four real coefficients.
Its complex 2x2 block is

    [[a + b i,  c + d i],
     [-c + d i, a - b i]]

and the product below is the one that makes this block map multiplicative.
Matrices are numpy arrays of shape ``(rows, cols, 4)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Quaternion:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @classmethod
    def from_array(cls, v) -> "Quaternion":
        a, b, c, d = (float(t) for t in v)
        return cls(a, b, c, d)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=float)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return multiply(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __abs__(self) -> float:
        return norm(self)

    def conjugate(self) -> "Quaternion":
        return conjugate(self)

    @property
    def real(self) -> float:
        return self.a

    @property
    def imag(self) -> tuple[float, float, float]:
        return (self.b, self.c, self.d)


E = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def multiply(x: Quaternion, y: Quaternion) -> Quaternion:
    """Hamilton product, ``i*j = k``, ``j*k = i``, ``k*i = j``."""
    return Quaternion(
        x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
        x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
        x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
        x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a,
    )


def conjugate(x: Quaternion) -> Quaternion:
    return Quaternion(x.a, -x.b, -x.c, -x.d)


def norm(x: Quaternion) -> float:
    return math.hypot(x.a, x.b, x.c, x.d)


# -- array-valued counterparts -------------------------------------------------


def qmul_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise Hamilton product over trailing axis of length 4 (broadcasting)."""
    xa, xb, xc, xd = np.moveaxis(np.asarray(x, dtype=float), -1, 0)
    ya, yb, yc, yd = np.moveaxis(np.asarray(y, dtype=float), -1, 0)
    return np.stack(
        [
            xa * ya - xb * yb - xc * yc - xd * yd,
            xa * yb + xb * ya + xc * yd - xd * yc,
            xa * yc - xb * yd + xc * ya + xd * yb,
            xa * yd + xb * yc - xc * yb + xd * ya,
        ],
        axis=-1,
    )


def qconj_array(x: np.ndarray) -> np.ndarray:
    out = np.array(x, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qnorm_array(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.square(x), axis=-1))


class QuaternionMatrix:
    """A ``p x n`` matrix of quaternions backed by a ``(p, n, 4)`` float array."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.asarray(coeffs, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ValueError(f"expected shape (p, n, 4), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("quaternion matrix needs at least one row and column")
        self.coeffs = arr

    @classmethod
    def from_entries(cls, rows) -> "QuaternionMatrix":
        return cls([[q.as_array() for q in row] for row in rows])

    @classmethod
    def zeros(cls, p: int, n: int) -> "QuaternionMatrix":
        return cls(np.zeros((p, n, 4)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.coeffs.shape[0], self.coeffs.shape[1]

    @property
    def p(self) -> int:
        return self.coeffs.shape[0]

    @property
    def n(self) -> int:
        return self.coeffs.shape[1]

    def __getitem__(self, idx) -> Quaternion:
        j, k = idx
        return Quaternion.from_array(self.coeffs[j, k])

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuaternionMatrix):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and np.array_equal(self.coeffs, other.coeffs)

    def __repr__(self) -> str:
        return f"QuaternionMatrix(p={self.p}, n={self.n})"

    def __add__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.coeffs + other.coeffs)

    def __sub__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.coeffs - other.coeffs)

    def scale(self, s: float) -> "QuaternionMatrix":
        return QuaternionMatrix(self.coeffs * s)

    def conj_transpose(self) -> "QuaternionMatrix":
        return QuaternionMatrix(qconj_array(self.coeffs).transpose(1, 0, 2))

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        # sum_k x_jk * y_kl, order preserved since the product is not commutative
        if self.n != other.p:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prod = qmul_array(self.coeffs[:, :, None, :], other.coeffs[None, :, :, :])
        return QuaternionMatrix(prod.sum(axis=1))

    def norms(self) -> np.ndarray:
        return qnorm_array(self.coeffs)
