"""Minimal deterministic SVG histogram with the limiting density overlaid."""
import math

import numpy as np

from .mplaw import MPLaw

MIN_BINS = 40
WIDTH, HEIGHT, PAD = 640, 400, 40


def fd_bins(x: np.ndarray) -> np.ndarray:
    """Freedman-Diaconis bin edges, never fewer than ``MIN_BINS`` bins."""
    lo, hi = float(np.min(x)), float(np.max(x))
    if hi <= lo:
        hi = lo + 1.0
    q75, q25 = np.percentile(x, [75, 25])
    h = 2.0 * (q75 - q25) / len(x) ** (1.0 / 3.0)
    nbins = MIN_BINS if h <= 0 else max(MIN_BINS, int(math.ceil((hi - lo) / h)))
    return np.linspace(lo, hi, nbins + 1)


def histogram_svg(eigs: np.ndarray, law: MPLaw) -> str:
    eigs = np.asarray(eigs, dtype=float)
    edges = fd_bins(eigs)
    counts, _ = np.histogram(eigs, bins=edges)
    dens = counts / (eigs.size * np.diff(edges))
    xmax = max(float(edges[-1]), law.b) * 1.05
    xmin = min(0.0, float(edges[0]))
    grid = np.linspace(max(law.a, 1e-12), law.b, 400)
    g = law.density(grid)
    ymax = max(float(np.max(dens)), float(np.max(g))) * 1.1 or 1.0

    def sx(v):
        return PAD + (v - xmin) / (xmax - xmin) * (WIDTH - 2 * PAD)

    def sy(v):
        return HEIGHT - PAD - v / ymax * (HEIGHT - 2 * PAD)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{PAD}" y1="{HEIGHT - PAD}" x2="{WIDTH - PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
        f'<line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{HEIGHT - PAD}" stroke="black"/>',
    ]
    for left, right, d in zip(edges[:-1], edges[1:], dens):
        if d <= 0:
            continue
        x0, x1, y0 = sx(left), sx(right), sy(d)
        out.append(
            f'<rect x="{x0:.3f}" y="{y0:.3f}" width="{x1 - x0:.3f}" height="{HEIGHT - PAD - y0:.3f}" '
            f'fill="#9ecae1" stroke="#3182bd" stroke-width="0.5"/>'
        )
    pts = " ".join(f"{sx(x):.3f},{sy(v):.3f}" for x, v in zip(grid, g))
    out.append(f'<polyline points="{pts}" fill="none" stroke="#d62728" stroke-width="2"/>')
    label = f"y={law.y:.4g} sigma2={law.sigma2:.4g}"
    if law.atom > 0:
        label += f" atom at 0: {law.atom:.4g}"
    out.append(f'<text x="{PAD}" y="{PAD - 10}" font-family="monospace" font-size="12">{label}</text>')
    for t in np.linspace(xmin, xmax, 6):
        out.append(f'<text x="{sx(t):.3f}" y="{HEIGHT - PAD + 16}" font-family="monospace" font-size="10" '
                   f'text-anchor="middle">{t:.2f}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
