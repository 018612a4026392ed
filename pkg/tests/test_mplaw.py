import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from quatmp.errors import DomainError
from quatmp.mplaw import MPLaw, mp_cdf, mp_density, mp_stieltjes, mp_support

YS = [0.25, 0.5, 1.0, 2.0, 4.0]


def quad_density(law, lo, hi):
    """Oracle: scipy quad on the raw density, no substitution."""
    lo, hi = max(lo, law.a), min(hi, law.b)
    if hi <= lo:
        return 0.0
    f = lambda x: mp_density(law, x)
    return integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=500)[0]


@pytest.mark.parametrize("y,s2,expected", [(1, 1, (0, 4)), (0.25, 1, (0.25, 2.25)), (1, 2, (0, 8))])
def test_support_examples(y, s2, expected):
    assert mp_support(MPLaw(y, s2)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("bad", [dict(y=0), dict(y=-1), dict(y=1, sigma2=0), dict(y=1, sigma2=-2), dict(y=float("nan"))])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        MPLaw(**bad)


def test_density_examples():
    assert mp_density(MPLaw(1), 2.0) == pytest.approx(1 / (2 * math.pi), abs=1e-15)
    assert mp_density(MPLaw(0.5), 5.0) == 0.0
    assert mp_density(MPLaw(0.25), 1.0) == pytest.approx(math.sqrt(0.9375) / (math.pi / 2), abs=1e-12)
    assert mp_density(MPLaw(0.25), 1.0) == pytest.approx(0.616404, abs=1e-6)
    assert mp_density(MPLaw(1), 0.0) == 0.0
    assert mp_density(MPLaw(2), -1.0) == 0.0


@pytest.mark.parametrize("y", YS)
def test_density_mass_against_oracle(y):
    law = MPLaw(y)
    assert quad_density(law, law.a, law.b) == pytest.approx(min(1, 1 / y), abs=1e-8)
    assert mp_cdf(law, law.b) - law.atom == pytest.approx(min(1, 1 / y), abs=1e-8)


def test_cdf_examples():
    assert mp_cdf(MPLaw(1), -0.5) == 0.0
    assert mp_cdf(MPLaw(2), 1e-9) == pytest.approx(0.5, abs=1e-8)
    assert mp_cdf(MPLaw(2), 0.0) == pytest.approx(0.5, abs=1e-15)
    assert mp_cdf(MPLaw(2), 0.0, left=True) == 0.0
    assert mp_cdf(MPLaw(1), 4.0) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("y,s2", [(0.25, 1), (0.5, 3), (1, 1), (2, 0.5), (4, 1), (0.99, 1)])
def test_cdf_against_pointwise_quadrature(y, s2):
    law = MPLaw(y, s2)
    xs = np.linspace(law.a - 0.1, law.b + 0.1, 17)
    got = mp_cdf(law, xs)
    ref = [law.atom * (x >= 0) + quad_density(law, law.a, x) for x in xs]
    assert np.max(np.abs(got - ref)) <= 1e-8


@pytest.mark.parametrize("y", YS)
def test_cdf_monotone_and_limits(y):
    law = MPLaw(y)
    xs = np.linspace(-1, law.b + 1, 1000)
    G = mp_cdf(law, xs)
    assert np.all(np.diff(G) >= 0)
    assert mp_cdf(law, -1.0) == 0.0
    assert mp_cdf(law, law.b + 1) == pytest.approx(1.0, abs=1e-8)


def test_cdf_scalar_and_array_agree():
    law = MPLaw(0.7, 1.3)
    xs = np.array([0.2, 1.0, 2.5, 0.9])
    arr = mp_cdf(law, xs)
    for x, v in zip(xs, arr):
        assert mp_cdf(law, float(x)) == pytest.approx(v, abs=1e-13)


def z_grid(count=100):
    rng = np.random.default_rng(7)
    return rng.uniform(-2, 8, count) + 1j * 10 ** rng.uniform(-3, 1, count)


@pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
def test_stieltjes_is_upper_root(y):
    law = MPLaw(y)
    z = z_grid()
    m = mp_stieltjes(law, z)
    resid = np.abs(y * z * m * m + (z - (1 - y)) * m + 1)
    assert resid.max() <= 1e-12
    assert np.all(m.imag > 0)


@pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
def test_stieltjes_matches_closed_form_with_branch_fix(y):
    z = z_grid()
    root = np.sqrt((1 - z - y) ** 2 - 4 * y * z)
    m = (1 - y - z + root) / (2 * y * z)
    flip = m.imag <= 0
    m[flip] = ((1 - y - z - root) / (2 * y * z))[flip]
    assert np.max(np.abs(mp_stieltjes(MPLaw(y), z) - m)) <= 1e-12


def quadrature_stieltjes(law, z):
    """Oracle: atom / (0 - z) + int g(x) / (x - z) dx with QAWS endpoint weights."""
    c = 1.0 / (2 * math.pi * law.y * law.sigma2)
    wvar = (0.5, 0.5) if law.a > 0 else (-0.5, 0.5)
    f = (lambda x: c / (x * (x - z))) if law.a > 0 else (lambda x: c / (x - z))
    re = integrate.quad(lambda x: f(x).real, law.a, law.b, weight="alg", wvar=wvar, epsabs=1e-13)[0]
    im = integrate.quad(lambda x: f(x).imag, law.a, law.b, weight="alg", wvar=wvar, epsabs=1e-13)[0]
    return law.atom / (0 - z) + complex(re, im)


def test_stieltjes_against_quadrature_at_i():
    law = MPLaw(0.5)
    assert abs(mp_stieltjes(law, 1j) - quadrature_stieltjes(law, 1j)) <= 1e-8


@pytest.mark.parametrize("y,s2,z", [(0.5, 1, 1 + 1j), (2, 1, 0.5 + 0.2j), (1, 1, 3 + 0.1j), (4, 2, -1 + 1j), (0.25, 3, 2 + 2j)])
def test_stieltjes_against_quadrature(y, s2, z):
    law = MPLaw(y, s2)
    assert abs(mp_stieltjes(law, z) - quadrature_stieltjes(law, z)) <= 1e-8


def test_stieltjes_inversion_recovers_density():
    for y in (0.25, 0.5, 2.0):
        law = MPLaw(y)
        xs = np.linspace(law.a, law.b, 202)[1:-1]
        rec = mp_stieltjes(law, xs + 1e-6j).imag / math.pi
        assert np.max(np.abs(rec - mp_density(law, xs))) <= 1e-3


def test_stieltjes_domain():
    with pytest.raises(DomainError):
        mp_stieltjes(MPLaw(1), 1.0)
    with pytest.raises(DomainError):
        mp_stieltjes(MPLaw(1), np.array([1j, 2 - 1j]))


@given(
    st.floats(0.05, 20), st.floats(0.1, 10),
    st.floats(-10, 30), st.floats(1e-3, 20),
)
@settings(max_examples=200)
def test_stieltjes_bound_and_sign(y, s2, u, v):
    z = complex(u, v)
    m = mp_stieltjes(MPLaw(y, s2), z)
    assert m.imag > 0
    assert abs(m) <= 1 / v * (1 + 1e-12)
