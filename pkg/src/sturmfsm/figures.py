"""Plot-ready rows for band spectra and ``G_m`` points of periodic approximants, plus a renderer."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cf import DigitsLike, q_of
from .spectra import MERGE_TOL, band_spectrum, approximant_potential, g_m_set


@dataclass(frozen=True)
class FigureRow:
    m: int
    kind: str  # "band" or "point"
    lo: float
    hi: float
    degenerate: bool = False

    def as_tuple(self) -> tuple:
        return (self.m, self.kind, self.lo, self.hi, self.degenerate)


COLUMNS = ("m", "type", "lo", "hi", "degenerate")


def _merged_bands(bands: Iterable[tuple[float, float]]) -> list[tuple[float, float]]:
    out: list[list[float]] = []
    for lo, hi in sorted(bands):
        if out and lo <= out[-1][1] + MERGE_TOL:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return [(lo, hi) for lo, hi in out]


def emit_figure_data(digits: DigitsLike, lam, m_range: Sequence[int],
                     window: tuple[float, float] = (-3.0, 3.0), workers: int = 1) -> list[FigureRow]:
    """Bands and ``G_m`` points for each ``m``, clipped to the energy window.

    Touching bands are merged.  When ``q_m = 1`` the point set is undefined;
    the band rows then carry ``degenerate=True``.
    """
    w_lo, w_hi = window
    if w_lo >= w_hi:
        raise ValueError("empty energy window")
    rows: list[FigureRow] = []
    for m in m_range:
        degenerate = q_of(digits, m) < 2
        bands = band_spectrum(approximant_potential(digits, lam, m))
        for lo, hi in _merged_bands(bands.bands):
            if hi < w_lo or lo > w_hi:
                continue
            rows.append(FigureRow(m, "band", float(max(lo, w_lo)), float(min(hi, w_hi)), degenerate))
        if degenerate:
            continue
        for x in g_m_set(digits, lam, m, workers=workers).points:
            if w_lo <= x <= w_hi:
                rows.append(FigureRow(m, "point", x, x, False))
    return rows


def render_figure(rows: Sequence[FigureRow], path, window: Optional[tuple[float, float]] = None,
                  title: Optional[str] = None) -> None:
    """Grey bands and green points, one horizontal strip per ``m``, saved to ``path``."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    for r in rows:
        if r.kind == "band":
            ax.plot([r.lo, r.hi], [r.m, r.m], color="0.55", linewidth=6, solid_capstyle="butt")
        else:
            ax.plot([r.lo], [r.m], "o", color="tab:green", markersize=4)
    ms = sorted({r.m for r in rows})
    if ms:
        ax.set_yticks(ms)
        ax.set_ylim(ms[-1] + 0.7, ms[0] - 0.7)
    if window is not None:
        ax.set_xlim(*window)
    ax.axvline(0.0, color="k", linewidth=0.5, linestyle=":")
    ax.set_xlabel("energy")
    ax.set_ylabel("m")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


__all__ = ["FigureRow", "COLUMNS", "emit_figure_data", "render_figure"]
