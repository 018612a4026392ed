"""End-to-end acceptance checks. Each test prints one PASS/FAIL line with its
measurements and the wall time against its budget.

Run with ``pytest tests/test_acceptance.py -s -v``.
"""
import math
import time

import numpy as np
import pytest
from scipy import integrate, stats

from quatmp.cli import structure_suite
from quatmp.distances import kolmogorov_distance, levy_distance, levy_fourth_power_bound, rank_bound
from quatmp.experiment import ExperimentConfig, run_experiment, run_sweep
from quatmp.mplaw import MPLaw, continuous_cdf
from quatmp.quaternion import Quaternion, QuaternionMatrix
from quatmp.sampling import gaussian, lindeberg_estimate, sample_matrix, shifted, signed_units, student_t
from quatmp.spectra import spectrum
from quatmp.structure import embed_matrix

SWEEP = [(50, 100), (100, 200), (200, 400)]
SWEEP_SEED = 1
SWEEP_REPS = 10


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail, elapsed, budget):
        ok = bool(ok) and elapsed < budget
        with capsys.disabled():
            print(f"\ncriterion {number:2d} {'PASS' if ok else 'FAIL'}: {detail} [{elapsed:.2f}s / {budget:g}s]")
        return ok

    return emit


def sweep_medians(dist, eta=None, out=None):
    cfg = ExperimentConfig(p=SWEEP[0][0], n=SWEEP[0][1], dist=dist, replications=SWEEP_REPS,
                           seed=SWEEP_SEED, eta=eta, output_dir=out, formats=("csv", "json"))
    return [r.median_ks for r in run_sweep(cfg, SWEEP)]


def stieltjes_oracle(law, z):
    """Adaptive quadrature against the algebraic endpoint weight ``(x-a)^1/2 (b-x)^1/2``."""
    a, b = law.a, law.b
    c = 1.0 / (2 * math.pi * law.y * law.sigma2)
    if a == 0.0:
        # sqrt(x (b - x)) / x: move the 1/x into the weight
        wvar, f = (-0.5, 0.5), lambda x: c / (x - z)
    else:
        wvar, f = (0.5, 0.5), lambda x: c / (x * (x - z))
    re = lambda x: f(x).real
    im = lambda x: f(x).imag
    kw = dict(weight="alg", wvar=wvar, epsabs=1e-13, epsrel=1e-13, limit=500)
    val = integrate.quad(re, a, b, **kw)[0] + 1j * integrate.quad(im, a, b, **kw)[0]
    return val - law.atom / z


def test_criterion_01_mp_mass_and_atom(verdict):
    ys = (0.25, 0.5, 1.0, 2.0, 4.0)
    t0 = time.perf_counter()
    rows = []
    for y in ys:
        law = MPLaw(y)
        rows.append((law, float(continuous_cdf(law, law.b)[0]), law.cdf(law.b), law.atom, law.cdf(0.0) - law.cdf_left(0.0)))
    elapsed = time.perf_counter() - t0
    worst = 0.0
    ok = True
    for law, mass, Gb, atom, jump in rows:
        # independent check of the mass with scipy's algebraic-weight rule
        if law.a == 0.0:
            oracle = integrate.quad(lambda x: 1 / (2 * math.pi * law.y), 0.0, law.b, weight="alg",
                                    wvar=(-0.5, 0.5), epsabs=1e-14)[0]
        else:
            oracle = integrate.quad(lambda x: 1 / (2 * math.pi * law.y * x), law.a, law.b, weight="alg",
                                    wvar=(0.5, 0.5), epsabs=1e-14)[0]
        target = min(1.0, 1.0 / law.y)
        worst = max(worst, abs(mass - target), abs(Gb - 1.0), abs(oracle - target))
        ok &= abs(mass - target) <= 1e-8 and abs(Gb - 1.0) <= 1e-8 and abs(oracle - target) <= 1e-8
        want_atom = 1 - 1 / law.y if law.y > 1 else 0.0
        ok &= abs(atom - want_atom) <= 1e-15 and abs(jump - want_atom) <= 1e-12
    assert verdict(1, ok, f"worst mass/G(b) error {worst:.2e} over y={ys}", elapsed, 1.0)


def test_criterion_02_stieltjes_branch(verdict):
    re = np.linspace(-2, 8, 10)
    im = np.geomspace(1e-3, 10, 10)
    grid = (re[:, None] + 1j * im[None, :]).ravel()
    spots = np.array([1j, 1 + 1j, 2 + 0.5j, -1 + 0.1j, 0.5 + 0.05j, 3 + 2j, 5 + 0.01j, 0.1 + 3j, 7 + 1j, 1.5 + 0.2j])
    t0 = time.perf_counter()
    vals = {y: MPLaw(y).stieltjes(grid) for y in (0.5, 1.0, 2.0)}
    spot_vals = {y: MPLaw(y).stieltjes(spots) for y in (0.5, 1.0, 2.0)}
    elapsed = time.perf_counter() - t0
    worst_res = worst_spot = 0.0
    min_im = np.inf
    for y, m in vals.items():
        A, B = y * grid, grid - (1 - y)
        scale = np.maximum.reduce([np.ones(grid.size), np.abs(A * m * m), np.abs(B * m)])
        worst_res = max(worst_res, float(np.max(np.abs(A * m * m + B * m + 1) / scale)))
        min_im = min(min_im, float(np.min(m.imag)))
        oracle = np.array([stieltjes_oracle(MPLaw(y), z) for z in spots])
        worst_spot = max(worst_spot, float(np.max(np.abs(spot_vals[y] - oracle))))
    ok = worst_res <= 1e-12 and min_im > 0 and worst_spot <= 1e-8
    assert verdict(2, ok, f"residual {worst_res:.1e}, min Im {min_im:.2e}, oracle gap {worst_spot:.1e}",
                   elapsed, 1.0)


def test_criterion_03_type_iii_inverse_is_type_i(verdict):
    t0 = time.perf_counter()
    res = structure_suite(200, dims=(2, 4, 8), seed=11, tol=1e-10)
    elapsed = time.perf_counter() - t0
    ok = res["passed"] and res["inverted"] == 200
    assert verdict(3, ok, f"{res['inverted']}/200 inverted, worst Type-I residual of inverse "
                   f"{res['worst']['TypeI_inverse']:.1e}", elapsed, 5.0)


def test_criterion_04_kramers_pairing(verdict):
    t0 = time.perf_counter()
    ratios = []
    for seed in range(20):
        s = spectrum(sample_matrix(50, 75, gaussian(), seed))
        ratios.append(s.pairing_gap() / s.lambda_max)
    elapsed = time.perf_counter() - t0
    worst = max(ratios)
    assert verdict(4, worst <= 1e-8, f"worst pair gap / lambda_max {worst:.1e}", elapsed, 30.0)


def test_criterion_05_atom_by_rank(verdict):
    t0 = time.perf_counter()
    runs = [run_experiment(ExperimentConfig(p=100, n=50, seed=5)) for _ in range(2)]
    elapsed = time.perf_counter() - t0
    s = runs[0].replications[0].sample
    zeros = s.count_below(1e-8)
    same = np.array_equal(s.eigenvalues, runs[1].replications[0].sample.eigenvalues)
    ok = zeros == 100 and runs[0].atom_mass[0] == 0.5 == MPLaw(2.0).atom and same
    assert verdict(5, ok, f"{zeros} eigenvalues below 1e-8*lambda_max, atom {runs[0].atom_mass[0]}, "
                   f"repeatable={same}", elapsed, 10.0)


def test_criterion_06_gaussian_convergence(verdict):
    t0 = time.perf_counter()
    med = sweep_medians(gaussian())
    elapsed = time.perf_counter() - t0
    ok = med[0] > med[1] > med[2] and med[2] <= 0.08
    assert verdict(6, ok, "median KS " + ", ".join(f"{m:.4f}" for m in med), elapsed, 180.0)


def test_criterion_07_universality(verdict):
    t0 = time.perf_counter()
    g = sweep_medians(gaussian())[-1]
    su = sweep_medians(signed_units())[-1]
    st = sweep_medians(student_t(3.0), eta=0.5)[-1]
    elapsed = time.perf_counter() - t0
    ok = abs(su - g) <= 0.05 and abs(st - g) <= 0.05
    assert verdict(7, ok, f"final median KS gaussian {g:.4f}, signed_units {su:.4f}, student_t(3) {st:.4f}",
                   elapsed, 300.0)


def test_criterion_08_resolvent(verdict):
    t0 = time.perf_counter()
    rep = run_experiment(ExperimentConfig(p=400, n=800, replications=5, seed=SWEEP_SEED))
    elapsed = time.perf_counter() - t0
    med = np.median(rep.stieltjes_errors, axis=0)
    assert verdict(8, np.all(med <= 0.05), "median |m_n - m| " + ", ".join(f"{v:.1e}" for v in med),
                   elapsed, 120.0)


def test_criterion_09_perturbation_bounds(verdict):
    rng = np.random.default_rng(9)
    p, n = 32, 48
    t0 = time.perf_counter()
    rank_ok = True
    worst_slack = np.inf
    for inst in range(100):
        k = 1 + inst % 3
        X = sample_matrix(p, n, gaussian(), 100 + inst)
        cols = rng.choice(n, size=k, replace=False)
        Yc = X.coeffs.copy()
        Yc[:, cols] = rng.standard_normal((p, k, 4))
        Y = QuaternionMatrix(Yc)
        A, B = embed_matrix(X) / math.sqrt(n), embed_matrix(Y) / math.sqrt(n)
        ks = kolmogorov_distance(spectrum(X), spectrum(Y))
        rb = rank_bound(A, B)
        rank_ok &= ks <= rb + 1e-12 and rb <= 2 * k / (2 * p) + 1e-15
        worst_slack = min(worst_slack, 2 * k / (2 * p) - ks)
    levy_ok = True
    worst_ratio = 0.0
    for inst in range(100):
        X = sample_matrix(8, 12, gaussian(), 500 + inst)
        Y = QuaternionMatrix(X.coeffs + rng.uniform(0.01, 1.0) * rng.standard_normal(X.coeffs.shape))
        A, B = embed_matrix(X) / math.sqrt(12), embed_matrix(Y) / math.sqrt(12)
        L4 = levy_distance(spectrum(X), spectrum(Y)) ** 4
        bound = levy_fourth_power_bound(A, B)
        levy_ok &= L4 <= bound
        worst_ratio = max(worst_ratio, L4 / bound)
    elapsed = time.perf_counter() - t0
    assert verdict(9, rank_ok and levy_ok, f"rank bound slack >= {worst_slack:.4f}, "
                   f"max L^4/bound {worst_ratio:.2e}", elapsed, 30.0)


def test_criterion_10_mean_shift(verdict):
    t0 = time.perf_counter()
    mu = Quaternion(5.0)
    a = spectrum(sample_matrix(200, 200, gaussian(), 21))
    b = spectrum(sample_matrix(200, 200, shifted(gaussian(), mu), 21))
    ks = kolmogorov_distance(a, b)
    elapsed = time.perf_counter() - t0
    assert verdict(10, ks <= 1 / 200 + 0.03, f"KS(shifted, unshifted) {ks:.4f} vs 1/p + 0.03 = {1/200 + 0.03:.3f}",
                   elapsed, 30.0)


def test_criterion_11_lindeberg(verdict):
    t0 = time.perf_counter()
    bounded = [lindeberg_estimate(signed_units(), 0.5, n, 200_000, 3) for n in (5, 100, 10_000)]
    ns = (100, 1_000, 10_000)
    heavy = [lindeberg_estimate(student_t(3.0), 0.5, n, 1_000_000, 4) for n in ns]
    elapsed = time.perf_counter() - t0
    # exact tail second moment for reference: ||x|| = |T| sqrt(1/3) with T ~ t_3
    scale = math.sqrt(1 / 3)
    exact = [2 * scale**2 * integrate.quad(lambda s: s * s * stats.t.pdf(s, 3), 0.5 * math.sqrt(n) / scale,
                                           np.inf)[0] for n in ns]
    ok = all(v == 0.0 for v in bounded) and heavy[0] > heavy[1] > heavy[2] > 0
    assert verdict(11, ok, "bounded " + str(bounded) + "; student_t(3) " + ", ".join(f"{v:.3e}" for v in heavy)
                   + " (exact " + ", ".join(f"{v:.3e}" for v in exact) + ")", elapsed, 30.0)


def test_criterion_12_determinism(verdict, tmp_path):
    t0 = time.perf_counter()
    blobs = []
    for tag in ("first", "second"):
        cfg = ExperimentConfig(p=SWEEP[0][0], n=SWEEP[0][1], replications=SWEEP_REPS, seed=SWEEP_SEED,
                               output_dir=str(tmp_path / tag), formats=("csv", "json"))
        run_experiment(cfg)
        blobs.append(((tmp_path / tag / "eigenvalues.csv").read_bytes(), (tmp_path / tag / "report.json").read_bytes()))
    elapsed = time.perf_counter() - t0
    ok = blobs[0] == blobs[1]
    assert verdict(12, ok, f"CSV {len(blobs[0][0])} bytes and JSON {len(blobs[0][1])} bytes identical={ok}",
                   elapsed, 60.0)
