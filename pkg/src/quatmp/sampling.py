"""Quaternion entry distributions, counter-based sampling and entry preprocessing.

Every entry ``(j, k)`` is generated from uniforms addressed by
``(seed, j, k, slot)``, so a matrix is a pure function of its inputs and any
block of it can be produced in any order.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate, special, stats

from . import kernels
from .errors import DomainError
from .quaternion import Quaternion, QuaternionMatrix, qnorm_array

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

TAGS = ("gaussian", "signed_units", "student_t", "shifted")
MC_CACHE_DRAWS = 1_000_000
ZETA_SALT = 0x5A3E7A
MC_CACHE_SEED = 0xC0FFEE


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, *words: int) -> int:
    """Fold integer ``words`` into ``seed``; used for replication and stream seeds."""
    h = mix64(int(seed) & _MASK)
    for w in words:
        h = mix64(h ^ mix64((int(w) + _GOLDEN) & _MASK))
    return h


@dataclass(frozen=True)
class EntryDistribution:
    tag: str
    sigma2: float = 1.0
    df: float | None = None
    base: "EntryDistribution | None" = None
    mu: Quaternion = Quaternion()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise DomainError(f"unknown distribution tag {self.tag!r}")
        if not (self.sigma2 > 0 and math.isfinite(self.sigma2)):
            raise DomainError(f"sigma2 must be positive, got {self.sigma2}")
        if self.tag == "student_t" and (self.df is None or not self.df > 2):
            raise DomainError(f"student_t needs df > 2 for finite variance, got {self.df}")
        if self.tag == "shifted":
            if self.base is None or self.base.tag == "shifted":
                raise DomainError("shifted needs a non-shifted base distribution")
            if self.sigma2 != self.base.sigma2:
                object.__setattr__(self, "sigma2", self.base.sigma2)

    @property
    def mean(self) -> Quaternion:
        return self.mu if self.tag == "shifted" else Quaternion()

    @property
    def slots(self) -> int:
        return {"gaussian": 4, "signed_units": 1, "student_t": 5}.get(self.tag) or self.base.slots

    @property
    def is_symmetric(self) -> bool:
        return self.tag != "shifted"

    def label(self) -> str:
        if self.tag == "student_t":
            return f"student_t(df={self.df:g})"
        if self.tag == "shifted":
            m = self.mu
            return f"shifted({self.base.label()}, mu=({m.a:g},{m.b:g},{m.c:g},{m.d:g}))"
        return self.tag

    def to_dict(self) -> dict:
        d = {"tag": self.tag, "sigma2": self.sigma2}
        if self.df is not None:
            d["df"] = self.df
        if self.tag == "shifted":
            d["base"] = self.base.to_dict()
            d["mu"] = [self.mu.a, self.mu.b, self.mu.c, self.mu.d]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EntryDistribution":
        if d["tag"] == "shifted":
            return shifted(cls.from_dict(d["base"]), Quaternion.from_array(d["mu"]))
        return cls(d["tag"], float(d.get("sigma2", 1.0)), d.get("df"))


def gaussian(sigma2: float = 1.0) -> EntryDistribution:
    return EntryDistribution("gaussian", sigma2)


def signed_units(sigma2: float = 1.0) -> EntryDistribution:
    return EntryDistribution("signed_units", sigma2)


def student_t(df: float, sigma2: float = 1.0) -> EntryDistribution:
    return EntryDistribution("student_t", sigma2, float(df))


def shifted(base: EntryDistribution, mu: Quaternion) -> EntryDistribution:
    return EntryDistribution("shifted", base.sigma2, None, base, mu)


def _transform(dist: EntryDistribution, u: np.ndarray) -> np.ndarray:
    """Map uniforms of shape ``(..., slots)`` to quaternion coefficients ``(..., 4)``."""
    if dist.tag == "gaussian":
        return special.ndtri(u) * math.sqrt(dist.sigma2 / 4.0)
    if dist.tag == "signed_units":
        idx = np.minimum((u[..., 0] * 8.0).astype(np.int64), 7)
        out = np.zeros(u.shape[:-1] + (4,))
        sign = np.where(idx % 2 == 0, 1.0, -1.0) * math.sqrt(dist.sigma2)
        np.put_along_axis(out, (idx // 2)[..., None], sign[..., None], axis=-1)
        return out
    if dist.tag == "student_t":
        df = dist.df
        t = special.stdtrit(df, u[..., 0]) * math.sqrt(dist.sigma2 * (df - 2.0) / df)
        g = special.ndtri(u[..., 1:5])
        direction = g / qnorm_array(g)[..., None]
        return t[..., None] * direction
    base = _transform(dist.base, u)
    return base + dist.mu.as_array()


def draw_block(dist: EntryDistribution, seed: int, p: int, n: int, row0: int = 0, col0: int = 0) -> np.ndarray:
    u = kernels.counter_uniforms(int(seed) & _MASK, p, n, dist.slots, row0, col0)
    return _transform(dist, u)


def sample_matrix(p: int, n: int, dist: EntryDistribution, seed: int) -> QuaternionMatrix:
    """``p x n`` matrix of independent draws, a pure function of its arguments."""
    if int(p) < 1 or int(n) < 1:
        raise DomainError(f"matrix dimensions must be positive, got p={p}, n={n}")
    return QuaternionMatrix(draw_block(dist, seed, int(p), int(n)))


def draw_entries(dist: EntryDistribution, count: int, seed: int, chunk: int = 250_000):
    """Yield ``count`` i.i.d. draws as ``(m, 4)`` arrays, chunk by chunk."""
    done = 0
    while done < count:
        m = min(chunk, count - done)
        yield draw_block(dist, seed, m, 1, row0=done)[:, 0, :]
        done += m


# -- truncation, centralization, rescaling ------------------------------------


@dataclass(frozen=True)
class PipelineOutput:
    stage: str
    matrix: QuaternionMatrix
    replaced_count: int
    threshold: float
    truncated_count: int = 0


@functools.lru_cache(maxsize=256)
def _mc_truncated_moments(dist: EntryDistribution, threshold: float):
    s1 = np.zeros(4)
    s2 = 0.0
    for x in draw_entries(dist, MC_CACHE_DRAWS, MC_CACHE_SEED):
        keep = qnorm_array(x) <= threshold
        xt = x * keep[:, None]
        s1 += xt.sum(axis=0)
        s2 += float(np.sum(xt * xt))
    mean = s1 / MC_CACHE_DRAWS
    return tuple(mean), s2 / MC_CACHE_DRAWS - float(mean @ mean)


def truncated_moments(dist: EntryDistribution, threshold: float) -> tuple[np.ndarray, float]:
    """Mean and variance ``E||x_hat - E x_hat||^2`` of ``x_hat = x I(||x|| <= threshold)``.

    Closed forms for the symmetric families, a cached Monte Carlo estimate for
    shifted ones.
    """
    if dist.tag == "gaussian":
        # ||x||^2 = (sigma2/4) chi2_4 and E[chi2_k I(chi2_k <= c)] = k P(chi2_{k+2} <= c)
        c = 4.0 * threshold**2 / dist.sigma2
        return np.zeros(4), dist.sigma2 * float(stats.chi2.cdf(c, 6))
    if dist.tag == "signed_units":
        return np.zeros(4), dist.sigma2 if math.sqrt(dist.sigma2) <= threshold else 0.0
    if dist.tag == "student_t":
        df = dist.df
        scale = math.sqrt(dist.sigma2 * (df - 2.0) / df)
        lim = threshold / scale
        val, _ = integrate.quad(lambda s: s * s * stats.t.pdf(s, df), -lim, lim, epsabs=1e-13, limit=200)
        return np.zeros(4), scale * scale * val
    mean, var = _mc_truncated_moments(dist, float(threshold))
    return np.array(mean), var


def _sample_moments(flat: np.ndarray) -> tuple[np.ndarray, float]:
    mean = flat.mean(axis=0)
    return mean, float(np.mean(np.sum((flat - mean) ** 2, axis=1)))


def truncate(X: QuaternionMatrix, threshold: float) -> tuple[QuaternionMatrix, int]:
    keep = X.norms() <= threshold
    return QuaternionMatrix(X.coeffs * keep[..., None]), int(np.count_nonzero(~keep))


def preprocess_entries(
    X: QuaternionMatrix,
    eta: float,
    dist: EntryDistribution | None = None,
    seed: int = 0,
) -> tuple[PipelineOutput, PipelineOutput, PipelineOutput]:
    """Truncate at ``eta sqrt(n)``, subtract the truncated mean, rescale to unit variance.

    Entries whose post-centering variance falls below half of the nominal
    variance are replaced by independent signed-unit draws (bounded, mean 0,
    variance 1). Without ``dist`` the truncated moments are estimated from
    the entries of ``X`` themselves, treating them as identically distributed.
    """
    if not eta > 0:
        raise DomainError(f"eta must be positive, got {eta}")
    p, n = X.shape
    threshold = eta * math.sqrt(n)

    Xh, cut = truncate(X, threshold)
    stage1 = PipelineOutput("truncated", Xh, 0, threshold, cut)

    if dist is not None:
        mean, var = truncated_moments(dist, threshold)
        nominal = dist.sigma2
    else:
        mean, var = _sample_moments(Xh.coeffs.reshape(-1, 4))
        nominal = _sample_moments(X.coeffs.reshape(-1, 4))[1]
    Xt = QuaternionMatrix(Xh.coeffs - mean)
    stage2 = PipelineOutput("centralized", Xt, 0, threshold, cut)

    if nominal <= 0 or var < 0.5 * nominal:
        zeta = draw_block(signed_units(1.0), derive_seed(seed, ZETA_SALT), p, n)
        stage3 = PipelineOutput("rescaled", QuaternionMatrix(zeta), p * n, threshold, cut)
    else:
        stage3 = PipelineOutput("rescaled", Xt.scale(1.0 / math.sqrt(var)), 0, threshold, cut)
    return stage1, stage2, stage3


def lindeberg_estimate(dist: EntryDistribution, eta: float, n: int, draws: int, seed: int) -> float:
    """Monte Carlo estimate of ``E ||x||^2 I(||x|| > eta sqrt(n))``."""
    if int(draws) < 1:
        raise DomainError("draws must be at least 1")
    threshold = eta * math.sqrt(n)
    total = 0.0
    for x in draw_entries(dist, int(draws), seed):
        sq = np.sum(x * x, axis=1)
        total += float(np.sum(sq[sq > threshold * threshold]))
    return total / int(draws)


def with_sigma2(dist: EntryDistribution, sigma2: float) -> EntryDistribution:
    if dist.tag == "shifted":
        return shifted(with_sigma2(dist.base, sigma2), dist.mu)
    return replace(dist, sigma2=sigma2)
