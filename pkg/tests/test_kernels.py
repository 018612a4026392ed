"""Both kernel backends must agree; the compiled one is optional."""
import importlib
import os

import numpy as np
import pytest

from quatmp import _fallback, kernels

try:
    compiled = importlib.import_module("quatmp._kernels")
except ImportError:  # pragma: no cover - depends on the build
    compiled = None

BACKENDS = [pytest.param(_fallback, id="python")]
BACKENDS.append(pytest.param(compiled, id="cython", marks=pytest.mark.skipif(compiled is None, reason="extension not built")))


def test_dispatch_reports_backend():
    assert kernels.BACKEND in ("cython", "python")
    forced = os.environ.get("QUATMP_PURE_PYTHON", "") not in ("", "0")
    expected = "python" if forced or compiled is None else "cython"
    assert kernels.BACKEND == expected


@pytest.mark.skipif(compiled is None, reason="extension not built")
@pytest.mark.parametrize("seed", [0, 1, 2**64 - 1, 123456789])
def test_uniform_streams_bit_identical(seed):
    a = compiled.counter_uniforms(seed, 9, 13, 5, 4, 7)
    b = _fallback.counter_uniforms(seed, 9, 13, 5, 4, 7)
    assert np.array_equal(a, b)
    z = np.arange(100, dtype=np.uint64) * np.uint64(0x9E3779B97F4A7C15)
    assert np.array_equal(compiled.mix64(z), _fallback.mix64(z))


@pytest.mark.parametrize("impl", BACKENDS)
def test_uniforms_are_addressable_sub_blocks(impl):
    full = impl.counter_uniforms(99, 10, 10, 3)
    part = impl.counter_uniforms(99, 4, 5, 3, row0=3, col0=2)
    assert np.array_equal(full[3:7, 2:7], part)
    assert 0.0 < full.min() and full.max() < 1.0


@pytest.mark.parametrize("impl", BACKENDS)
def test_uniforms_look_uniform(impl):
    u = impl.counter_uniforms(5, 200, 250, 2).ravel()
    assert abs(u.mean() - 0.5) < 4 * np.sqrt(1 / 12 / u.size)
    hist, _ = np.histogram(u, bins=10, range=(0, 1))
    expected = u.size / 10
    chi2 = np.sum((hist - expected) ** 2 / expected)
    assert chi2 < 30  # 9 dof, p ~ 4e-4


def ks_brute(a, b):
    grid = np.union1d(a, b)
    fa = np.array([np.mean(a <= t) for t in grid])
    fb = np.array([np.mean(b <= t) for t in grid])
    return np.max(np.abs(fa - fb))


@pytest.mark.parametrize("impl", BACKENDS)
def test_ks_two_sample(impl, rng):
    assert impl.ks_two_sample([0, 0, 1, 1], [0, 0, 0, 1]) == pytest.approx(0.25)
    for _ in range(20):
        a = np.sort(rng.integers(0, 6, rng.integers(1, 30)).astype(float))
        b = np.sort(rng.integers(0, 6, rng.integers(1, 30)).astype(float))
        assert impl.ks_two_sample(a, b) == pytest.approx(ks_brute(a, b), abs=1e-15)


@pytest.mark.parametrize("impl", BACKENDS)
def test_stieltjes_sums(impl, rng):
    lam = np.sort(rng.standard_normal(50))
    z = np.array([1j, 2 + 0.1j, -1 + 3j])
    ref = np.array([np.mean(1 / (lam - zi)) for zi in z])
    assert np.allclose(impl.stieltjes_sums(lam, z), ref, rtol=1e-13, atol=1e-15)


@pytest.mark.parametrize("impl", BACKENDS)
def test_pair_gap(impl):
    assert impl.max_pair_gap(np.array([0.0, 0.1, 1.0, 1.5, 3.0])) == pytest.approx(0.5)
    assert impl.max_pair_gap(np.array([2.0])) == 0.0


def test_read_only_inputs_accepted():
    lam = np.linspace(0, 1, 10)
    lam.setflags(write=False)
    kernels.stieltjes_sums(lam, np.array([1j]))
    kernels.ks_two_sample(lam, lam)
    kernels.max_pair_gap(lam)
