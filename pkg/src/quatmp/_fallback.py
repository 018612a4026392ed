"""Pure numpy implementations of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` module. The
integer hashing is bit-identical between the two; floating reductions may
differ in the last few ulps because of summation order.
"""
import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
ROW_SALT = np.uint64(0xD1B54A32D192ED03)
COL_SALT = np.uint64(0x8CB92BA72F3D8DD7)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_INV53 = 2.0 ** -53


def mix64(z):
    """splitmix64 finalizer on uint64 arrays (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def entry_keys(seed, rows, cols):
    """Per-entry 64-bit keys for the index grid ``rows x cols``."""
    seed = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
    r = np.asarray(rows, dtype=np.uint64)
    c = np.asarray(cols, dtype=np.uint64)
    with np.errstate(over="ignore"):
        kr = mix64(seed ^ ((r + np.uint64(1)) * ROW_SALT))
        return mix64(kr[:, None] ^ ((c[None, :] + np.uint64(1)) * COL_SALT))


def counter_uniforms(seed, p, n, slots, row0=0, col0=0):
    """Uniform(0, 1) draws of shape ``(p, n, slots)`` addressed by (row, col, slot).

    Every value is a pure function of ``(seed, row, col, slot)``, so any
    sub-block can be regenerated independently of the others.
    """
    keys = entry_keys(seed, np.arange(row0, row0 + p), np.arange(col0, col0 + n))
    s = np.arange(1, slots + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        h = mix64(keys[:, :, None] + s * GOLDEN)
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def ks_two_sample(a, b):
    """Exact sup-distance between the ESDs of two sorted samples."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    pts = np.concatenate([a, b])
    fa = np.searchsorted(a, pts, side="right") / a.size
    fb = np.searchsorted(b, pts, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


def stieltjes_sums(eigs, zs):
    """``mean(1 / (eigs - z))`` for every ``z`` in ``zs``."""
    eigs = np.asarray(eigs, dtype=float)
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    out = np.empty(zs.shape, dtype=complex)
    for i, z in enumerate(zs):
        out[i] = np.mean(1.0 / (eigs - z))
    return out


def max_pair_gap(eigs):
    """``max_i |eigs[2i+1] - eigs[2i]|`` over consecutive pairs."""
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size < 2:
        return 0.0
    m = eigs.size // 2 * 2
    return float(np.max(np.abs(eigs[1:m:2] - eigs[0:m:2])))
