"""Command line interface.

Exit codes: 0 success, 2 validation error, 3 numerical-contract violation,
4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .errors import ContractError, DomainError, InvertibilityError, PreconditionError, ValidationError
from .experiment import DEFAULT_Z_GRID, FORMATS, ExperimentConfig, run_experiment, run_sweep
from .mplaw import MPLaw
from .quaternion import Quaternion
from .sampling import EntryDistribution, sample_matrix
from .spectra import empirical_stieltjes, spectrum
from .structure import Kind, inverse_structure_check, random_type_iii, structure_residual

EXIT_OK, EXIT_VALIDATION, EXIT_CONTRACT, EXIT_IO = 0, 2, 3, 4
DIST_CHOICES = {"gaussian": "gaussian", "signed-units": "signed_units", "student-t": "student_t"}


def parse_complex(tok: str) -> complex:
    """Parse ``re+imi`` style tokens such as ``1+0.5i``, ``-2-1i`` or ``i``."""
    t = tok.strip().replace(" ", "").replace("I", "i")
    if t.endswith("i"):
        t = t[:-1] + "j"
        if t in ("j", "+j", "-j"):
            t = t.replace("j", "1j")
        elif t[-2] in "+-":
            t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError as exc:
        raise ValidationError(f"cannot parse complex number {tok!r}", ["z_grid"]) from exc


def parse_z_grid(text: str) -> tuple[complex, ...]:
    return tuple(parse_complex(tok) for tok in text.split(",") if tok.strip())


def parse_mu(text: str) -> Quaternion:
    parts = [float(v) for v in text.split(",")]
    if len(parts) == 1:
        return Quaternion(parts[0])
    if len(parts) != 4:
        raise ValidationError("--mu takes one real or four comma-separated reals", ["mu"])
    return Quaternion(*parts)


def parse_sizes(text: str) -> list[tuple[int, int]]:
    out = []
    for tok in text.split(","):
        try:
            p, n = tok.lower().split("x")
            out.append((int(p), int(n)))
        except ValueError as exc:
            raise ValidationError(f"bad size {tok!r}, expected PxN", ["sizes"]) from exc
    return out


def _dist_from_args(args) -> EntryDistribution:
    tag = DIST_CHOICES[args.dist]
    d = {"tag": tag, "sigma2": args.sigma2}
    if tag == "student_t":
        d["df"] = args.df
    dist = EntryDistribution.from_dict(d)
    if args.mu is not None:
        mu = parse_mu(args.mu)
        dist = EntryDistribution.from_dict({"tag": "shifted", "base": dist.to_dict(), "mu": list(mu.as_array())})
    return dist


def _config_from_args(args) -> ExperimentConfig:
    overrides = {}
    base = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            base = json.load(fh)
    for key in ("p", "n", "seed", "eta"):
        v = getattr(args, key, None)
        if v is not None:
            overrides[key] = v
    if args.reps is not None:
        overrides["replications"] = args.reps
    if args.dist is not None or "dist" not in base:
        args.dist = args.dist or "gaussian"
        overrides["dist"] = _dist_from_args(args)
    if args.z_grid is not None:
        overrides["z_grid"] = parse_z_grid(args.z_grid)
    if args.out is not None:
        overrides["output_dir"] = args.out
    if args.format:
        overrides["formats"] = tuple(args.format)
    overrides["workers"] = args.workers
    missing = [k for k in ("p", "n") if k not in base and k not in overrides]
    if missing:
        raise ValidationError(f"missing required settings: {', '.join(missing)}", missing)
    return ExperimentConfig.from_dict(base, **overrides)


def _print_report(rep) -> None:
    agg = rep.aggregates()
    c = rep.config
    print(f"p={c.p} n={c.n} y={c.y:.4g} dist={c.dist.label()} reps={c.replications} seed={c.seed}")
    print(f"  KS    median={agg['ks']['median']:.6f} max={agg['ks']['max']:.6f}")
    print(f"  Levy  median={agg['levy']['median']:.6f} max={agg['levy']['max']:.6f}")
    print(f"  atom  median={agg['atom_mass']['median']:.6f} (law {c.law().atom:.6f})")
    for z, m in zip(c.z_grid, agg["stieltjes_errors"]["median"]):
        print(f"  |m_n - m| at z={z.real:g}{z.imag:+g}i  median={m:.3e}")
    print(f"  runtime {rep.runtime_seconds:.2f}s")


def cmd_simulate(args) -> int:
    rep = run_experiment(_config_from_args(args))
    _print_report(rep)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _config_from_args(args) if args.p is not None or args.config else None
    sizes = parse_sizes(args.sizes)
    if cfg is None:
        args.p, args.n = sizes[0]
        cfg = _config_from_args(args)
    for rep in run_sweep(cfg, sizes):
        _print_report(rep)
    return EXIT_OK


def cmd_density(args) -> int:
    law = MPLaw(args.y, args.sigma2)
    lo = args.xmin if args.xmin is not None else min(0.0, law.a)
    hi = args.xmax if args.xmax is not None else law.b * 1.05
    x = np.linspace(lo, hi, args.points)
    g, G = law.density(x), law.cdf(x)
    if args.format == "json":
        print(json.dumps({"y": law.y, "sigma2": law.sigma2, "a": law.a, "b": law.b, "atom": law.atom,
                          "x": x.tolist(), "density": g.tolist(), "cdf": G.tolist()}))
    else:
        print("x,density,cdf")
        for xi, gi, Gi in zip(x, g, G):
            print(f"{xi:.17g},{gi:.17g},{Gi:.17g}")
    return EXIT_OK


def cmd_stieltjes(args) -> int:
    z = np.array(parse_z_grid(args.z_grid) if args.z_grid else DEFAULT_Z_GRID)
    dist = _dist_from_args(args)
    law = MPLaw(args.p / args.n, dist.sigma2)
    s = spectrum(sample_matrix(args.p, args.n, dist, args.seed), args.seed, dist.label())
    mn = np.atleast_1d(empirical_stieltjes(s, z))
    m = np.atleast_1d(law.stieltjes(z))
    print("z_re,z_im,m_re,m_im,mn_re,mn_im,abs_err")
    for zi, a, b in zip(z, m, mn):
        print(f"{zi.real:.17g},{zi.imag:.17g},{a.real:.17g},{a.imag:.17g},{b.real:.17g},{b.imag:.17g},{abs(a - b):.6e}")
    return EXIT_OK


def structure_suite(count: int, dims=(2, 4, 8), seed: int = 0, tol: float = 1e-10) -> dict:
    """Random Type-III matrices of block dimension ``dims``: pattern residuals and
    the Type-I residual of their inverses."""
    rng = np.random.default_rng(seed)
    worst = {"TypeIII_input": 0.0, "TypeI_inverse": 0.0, "TypeI_input": 0.0, "TypeII_input": 0.0}
    checked = 0
    for i in range(count):
        n = dims[i % len(dims)]
        A = random_type_iii(n, rng)
        worst["TypeIII_input"] = max(worst["TypeIII_input"], structure_residual(A, Kind.TYPE_III).residual)
        worst["TypeI_input"] = max(worst["TypeI_input"], structure_residual(A, Kind.TYPE_I).residual)
        worst["TypeII_input"] = max(worst["TypeII_input"], structure_residual(A, Kind.TYPE_II).residual)
        try:
            rep = inverse_structure_check(A)
        except InvertibilityError:
            continue
        worst["TypeI_inverse"] = max(worst["TypeI_inverse"], rep.residual)
        checked += 1
    return {"count": count, "inverted": checked, "tolerance": tol, "worst": worst,
            "passed": all(v <= tol for v in worst.values())}


def cmd_check_structure(args) -> int:
    res = structure_suite(args.count, tuple(args.dims), args.seed)
    print(json.dumps(res, indent=2))
    return EXIT_OK if res["passed"] else EXIT_CONTRACT


def _add_common(p: argparse.ArgumentParser, need_pn: bool = False) -> None:
    p.add_argument("--p", type=int, required=need_pn)
    p.add_argument("--n", type=int, required=need_pn)
    p.add_argument("--dist", choices=sorted(DIST_CHOICES), default=None)
    p.add_argument("--df", type=float, default=3.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--mu", default=None, help="mean shift: one real or a,b,c,d")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--z-grid", dest="z_grid", default=None, help="e.g. 0+1i,1+1i,2+0.5i")
    p.add_argument("--out", default=None)
    p.add_argument("--format", action="append", choices=FORMATS, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--config", default=None, help="JSON file with ExperimentConfig fields")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quatmp", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="run one Monte Carlo experiment")
    _add_common(sp)
    sp.set_defaults(func=cmd_simulate)

    sw = sub.add_parser("sweep", help="run experiments over several sizes with a common p/n")
    _add_common(sw)
    sw.add_argument("--sizes", required=True, help="e.g. 50x100,100x200,200x400")
    sw.set_defaults(func=cmd_sweep)

    de = sub.add_parser("density", help="tabulate the Marchenko-Pastur density and CDF")
    de.add_argument("--y", type=float, required=True)
    de.add_argument("--sigma2", type=float, default=1.0)
    de.add_argument("--points", type=int, default=41)
    de.add_argument("--xmin", type=float, default=None)
    de.add_argument("--xmax", type=float, default=None)
    de.add_argument("--format", choices=("csv", "json"), default="csv")
    de.set_defaults(func=cmd_density)

    st = sub.add_parser("stieltjes", help="limit and empirical Stieltjes transforms on a grid")
    st.add_argument("--p", type=int, required=True)
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--dist", choices=sorted(DIST_CHOICES), default="gaussian")
    st.add_argument("--df", type=float, default=3.0)
    st.add_argument("--sigma2", type=float, default=1.0)
    st.add_argument("--mu", default=None)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--z-grid", dest="z_grid", default=None)
    st.set_defaults(func=cmd_stieltjes)

    cs = sub.add_parser("check-structure", help="Type-I/II/III and inverse-structure checks")
    cs.add_argument("--count", type=int, default=200)
    cs.add_argument("--dims", type=int, nargs="+", default=[2, 4, 8], help="block dimensions n (matrix size 2n)")
    cs.add_argument("--seed", type=int, default=0)
    cs.set_defaults(func=cmd_check_structure)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValidationError, DomainError, PreconditionError) as exc:
        fields = getattr(exc, "fields", None)
        extra = f" [fields: {', '.join(fields)}]" if fields else ""
        print(f"validation error: {exc}{extra}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ContractError, InvertibilityError) as exc:
        print(f"numerical contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"I/O error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
