"""Monte Carlo experiments comparing quaternion sample covariance spectra with
the Marchenko-Pastur law, and the files they emit."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .distances import kolmogorov_distance, levy_distance
from .errors import ValidationError
from .mplaw import MPLaw
from .sampling import EntryDistribution, derive_seed, gaussian, preprocess_entries, sample_matrix
from .spectra import SpectralSample, empirical_stieltjes, spectrum

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
ATOM_REL_THRESHOLD = 1e-8
DEFAULT_Z_GRID = (1j, 1 + 1j, 2 + 0.5j)
FORMATS = ("csv", "json", "svg")


@dataclass(frozen=True)
class ExperimentConfig:
    p: int
    n: int
    dist: EntryDistribution = field(default_factory=gaussian)
    replications: int = 1
    seed: int = 0
    eta: float | None = None
    z_grid: tuple[complex, ...] = DEFAULT_Z_GRID
    output_dir: str | None = None
    formats: tuple[str, ...] = FORMATS
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "z_grid", tuple(complex(z) for z in self.z_grid))
        object.__setattr__(self, "formats", tuple(self.formats))
        self.validate()

    def validate(self) -> None:
        bad = []
        if not isinstance(self.p, (int, np.integer)) or self.p < 1:
            bad.append("p")
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            bad.append("n")
        if not isinstance(self.replications, (int, np.integer)) or self.replications < 1:
            bad.append("replications")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            bad.append("seed")
        if self.eta is not None and not (self.eta > 0 and math.isfinite(self.eta)):
            bad.append("eta")
        if not self.z_grid or any(not z.imag > 0 for z in self.z_grid):
            bad.append("z_grid")
        if any(f not in FORMATS for f in self.formats):
            bad.append("formats")
        if self.workers < 1:
            bad.append("workers")
        if bad:
            raise ValidationError(f"invalid experiment configuration: {', '.join(bad)}", bad)

    @property
    def y(self) -> float:
        return self.p / self.n

    def law(self) -> MPLaw:
        # the preprocessing pipeline rescales entries to unit variance
        return MPLaw(self.y, 1.0 if self.eta is not None else self.dist.sigma2)

    def to_dict(self) -> dict:
        return {
            "p": int(self.p),
            "n": int(self.n),
            "dist": self.dist.to_dict(),
            "replications": int(self.replications),
            "seed": int(self.seed),
            "eta": self.eta,
            "z_grid": [[z.real, z.imag] for z in self.z_grid],
        }

    @classmethod
    def from_dict(cls, d: dict, **overrides) -> "ExperimentConfig":
        known = {"p", "n", "dist", "replications", "seed", "eta", "z_grid", "output_dir", "formats", "workers"}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ValidationError(f"unknown configuration keys: {', '.join(unknown)}", unknown)
        kw = dict(d)
        if "dist" in kw and isinstance(kw["dist"], dict):
            kw["dist"] = EntryDistribution.from_dict(kw["dist"])
        if "z_grid" in kw:
            kw["z_grid"] = tuple(complex(*z) if isinstance(z, (list, tuple)) else complex(z) for z in kw["z_grid"])
        kw.update(overrides)
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ValidationError(str(exc), ["config"]) from exc


@dataclass
class ReplicationResult:
    replication: int
    seed: int
    ks: float
    levy: float
    atom_mass: float
    stieltjes_errors: list[float]
    sample: SpectralSample = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "replication": self.replication,
            "seed": self.seed,
            "ks": self.ks,
            "levy": self.levy,
            "atom_mass": self.atom_mass,
            "stieltjes_errors": list(self.stieltjes_errors),
        }


@dataclass
class ConvergenceReport:
    config: ExperimentConfig
    replications: list[ReplicationResult]
    runtime_seconds: float = 0.0

    def _col(self, name):
        return np.array([getattr(r, name) for r in self.replications])

    @property
    def ks(self) -> np.ndarray:
        return self._col("ks")

    @property
    def levy(self) -> np.ndarray:
        return self._col("levy")

    @property
    def atom_mass(self) -> np.ndarray:
        return self._col("atom_mass")

    @property
    def stieltjes_errors(self) -> np.ndarray:
        return np.array([r.stieltjes_errors for r in self.replications])

    @property
    def median_ks(self) -> float:
        return float(np.median(self.ks))

    def aggregates(self) -> dict:
        se = self.stieltjes_errors
        return {
            "ks": {"median": float(np.median(self.ks)), "max": float(np.max(self.ks))},
            "levy": {"median": float(np.median(self.levy)), "max": float(np.max(self.levy))},
            "atom_mass": {"median": float(np.median(self.atom_mass)), "max": float(np.max(self.atom_mass))},
            "stieltjes_errors": {
                "median": [float(v) for v in np.median(se, axis=0)],
                "max": [float(v) for v in np.max(se, axis=0)],
            },
        }

    def to_dict(self) -> dict:
        law = self.config.law()
        return {
            "schema": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "law": {"y": law.y, "sigma2": law.sigma2, "a": law.a, "b": law.b, "atom": law.atom},
            "per_replication": [r.to_dict() for r in self.replications],
            "aggregates": self.aggregates(),
        }


def atom_mass(sample: SpectralSample, rel: float = ATOM_REL_THRESHOLD) -> float:
    return sample.count_below(rel) / sample.size


def run_replication(cfg: ExperimentConfig, r: int) -> ReplicationResult:
    seed_r = derive_seed(cfg.seed, r)
    X = sample_matrix(cfg.p, cfg.n, cfg.dist, seed_r)
    if cfg.eta is not None:
        X = preprocess_entries(X, cfg.eta, cfg.dist, seed_r)[2].matrix
    s = spectrum(X, seed_r, cfg.dist.label())
    law = cfg.law()
    z = np.array(cfg.z_grid)
    errs = np.abs(empirical_stieltjes(s, z) - law.stieltjes(z))
    return ReplicationResult(
        replication=r,
        seed=seed_r,
        ks=kolmogorov_distance(s, law),
        levy=levy_distance(s, law),
        atom_mass=atom_mass(s),
        stieltjes_errors=[float(e) for e in np.atleast_1d(errs)],
        sample=s,
    )


def run_experiment(cfg: ExperimentConfig) -> ConvergenceReport:
    """Run every replication of ``cfg`` and write the configured outputs.

    Replication ``r`` uses seed ``derive_seed(cfg.seed, r)``; results are
    collected in replication order whatever the worker count.
    """
    cfg.validate()
    t0 = time.perf_counter()
    reps = range(cfg.replications)
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(lambda r: run_replication(cfg, r), reps))
    else:
        results = [run_replication(cfg, r) for r in reps]
    report = ConvergenceReport(cfg, results, time.perf_counter() - t0)
    log.info("p=%d n=%d reps=%d median KS=%.4f", cfg.p, cfg.n, cfg.replications, report.median_ks)
    if cfg.output_dir is not None:
        write_outputs(report, cfg.output_dir)
    return report


def run_sweep(base_cfg: ExperimentConfig, sizes) -> list[ConvergenceReport]:
    """One experiment per ``(p, n)`` in ``sizes``; all must share ``p/n`` within 1%."""
    sizes = [(int(p), int(n)) for p, n in sizes]
    if not sizes:
        raise ValidationError("sweep needs at least one size", ["sizes"])
    y0 = sizes[0][0] / sizes[0][1]
    if any(abs(p / n - y0) > 0.01 * y0 for p, n in sizes):
        raise ValidationError("all sweep sizes must share the same p/n ratio within 1%", ["sizes"])
    reports = []
    for p, n in sizes:
        out = None if base_cfg.output_dir is None else os.path.join(base_cfg.output_dir, f"p{p}_n{n}")
        reports.append(run_experiment(replace(base_cfg, p=p, n=n, output_dir=out)))
    if base_cfg.output_dir is not None:
        _write_text(os.path.join(base_cfg.output_dir, "sweep_summary.csv"), sweep_summary_csv(reports))
    return reports


# -- file emission -------------------------------------------------------------


def eigenvalues_csv(report: ConvergenceReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["replication", "index", "lambda"])
    for r in report.replications:
        for i, lam in enumerate(r.sample.eigenvalues):
            w.writerow([r.replication, i, f"{lam:.17g}"])
    return buf.getvalue()


def report_json(report: ConvergenceReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n"


def sweep_summary_csv(reports: list[ConvergenceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "n", "y", "median_ks", "max_ks", "median_levy"])
    for rep in reports:
        c = rep.config
        w.writerow([c.p, c.n, f"{c.y:.17g}", f"{rep.median_ks:.17g}", f"{float(np.max(rep.ks)):.17g}",
                    f"{float(np.median(rep.levy)):.17g}"])
    return buf.getvalue()


def _write_text(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def write_outputs(report: ConvergenceReport, out_dir: str) -> list[str]:
    """Write eigenvalues.csv, report.json, histogram.svg (as configured) and timing.json."""
    from .svg import histogram_svg

    written = []
    fmts = report.config.formats
    files = []
    if "csv" in fmts:
        files.append(("eigenvalues.csv", eigenvalues_csv(report)))
    if "json" in fmts:
        files.append(("report.json", report_json(report)))
    if "svg" in fmts:
        pooled = np.concatenate([r.sample.eigenvalues for r in report.replications])
        files.append(("histogram.svg", histogram_svg(pooled, report.config.law())))
    files.append(("timing.json", json.dumps({"runtime_seconds": report.runtime_seconds}) + "\n"))
    for name, text in files:
        path = os.path.join(out_dir, name)
        _write_text(path, text)
        written.append(path)
    return written
