"""Static renderer for emission-curve CSV files.

Consumes only the CSV contract of the simulator CLI: ``#`` header comments
(one of which carries the config hash), a header row starting with ``t``, and
numeric rows. Produces a deterministic PNG or SVG: fixed figure geometry, no
timestamps, and a legend whose top-to-bottom order matches the curves'
top-to-bottom order (equivalently, their rate ordering).

Command form: ``render <in.csv> <out.png|out.svg> [--title ...]``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["CurveFile", "RenderError", "Style", "parse_curve_file", "ordered_series", "render", "main"]


class RenderError(Exception):
    """Malformed input or unusable style options."""


@dataclass(frozen=True)
class CurveFile:
    """Parsed curve CSV: strictly ascending times plus equally long named series."""

    times: np.ndarray
    series: dict[str, np.ndarray]
    config_sha256: str | None

    def __post_init__(self) -> None:
        if self.times.size == 0:
            raise RenderError("CSV contains no data rows")
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0.0):
            raise RenderError("time column must be strictly ascending")
        for name, values in self.series.items():
            if values.shape != self.times.shape:
                raise RenderError(f"series {name!r} length differs from the time column")


# Line styling: warm solid for the coherent boson curve, cold solid for the
# coherent fermion curve, black family for the mixtures, with distinct dashes
# so the mixture variants stay tellable apart. Unknown columns cycle greys.
_STYLES: dict[str, dict] = {
    "boson_sup": {"color": "red", "linestyle": "-"},
    "fermion_sup": {"color": "blue", "linestyle": "-"},
    "mix_boson": {"color": "black", "linestyle": "-"},
    "mix_fermion": {"color": "black", "linestyle": "-."},
    "mix_noexchange": {"color": "black", "linestyle": "--"},
}
_FALLBACK = {"color": "dimgray", "linestyle": ":"}


@dataclass(frozen=True)
class Style:
    title: str = ""
    figsize: tuple[float, float] = (8.0, 5.6)
    dpi: int = 120


def parse_curve_file(path: str | Path) -> CurveFile:
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise RenderError(f"cannot read {path}: {exc}") from exc

    config_sha256 = None
    header: list[str] | None = None
    rows: list[list[float]] = []
    for lineno, line in enumerate(lines, start=1):
        if line.startswith("#"):
            stripped = line[1:].strip()
            if stripped.startswith("config_sha256:"):
                config_sha256 = stripped.split(":", 1)[1].strip()
            continue
        if not line.strip():
            continue
        cells = line.split(",")
        if header is None:
            header = [cell.strip() for cell in cells]
            if not header or header[0] != "t":
                raise RenderError(f"{path}:{lineno}: first header column must be 't'")
            if len(header) < 2:
                raise RenderError(f"{path}:{lineno}: no curve columns found")
            continue
        if len(cells) != len(header):
            raise RenderError(
                f"{path}:{lineno}: expected {len(header)} columns, found {len(cells)}"
            )
        parsed = []
        for col, cell in enumerate(cells, start=1):
            try:
                parsed.append(float(cell))
            except ValueError as exc:
                raise RenderError(
                    f"{path}:{lineno}: column {col} ({header[col - 1]!r}) is not numeric: {cell!r}"
                ) from exc
        rows.append(parsed)

    if header is None:
        raise RenderError(f"{path}: no header row found")
    if not rows:
        raise RenderError(f"{path}: no data rows")
    data = np.asarray(rows, dtype=float)
    return CurveFile(
        times=data[:, 0],
        series={name: data[:, i + 1] for i, name in enumerate(header[1:])},
        config_sha256=config_sha256,
    )


def ordered_series(curves: CurveFile) -> list[str]:
    """Series names from uppermost curve to lowest (by final value, then name)."""
    return sorted(curves.series, key=lambda name: (-curves.series[name][-1], name))


def _build_figure(curves: CurveFile, style: Style):
    fig, ax = plt.subplots(figsize=style.figsize, dpi=style.dpi)
    order = ordered_series(curves)
    for name in order:
        ax.plot(
            curves.times,
            curves.series[name],
            label=name,
            linewidth=1.8,
            **_STYLES.get(name, _FALLBACK),
        )
    ax.set_xlabel("t (units of 1/gamma0)")
    ax.set_ylabel("emitted fraction n_emi/n0")
    ax.set_xlim(curves.times[0], curves.times[-1])
    ax.set_ylim(0.0, 1.0)
    ax.grid(True, alpha=0.25)
    if style.title:
        ax.set_title(style.title)
    ax.legend(loc="lower right")
    return fig, order


def render(csv_path: str | Path, out_path: str | Path, style: Style = Style()) -> Path:
    """Render the CSV to ``out_path`` (.png or .svg); returns the output path."""
    out_path = Path(out_path)
    suffix = out_path.suffix.lower()
    if suffix not in (".png", ".svg"):
        raise RenderError(f"unsupported output format {suffix!r}; use .png or .svg")
    curves = parse_curve_file(csv_path)

    # Fixed ids and no creation date, so repeated renders are byte-identical.
    with matplotlib.rc_context({"svg.hashsalt": "plotview"}):
        fig, _ = _build_figure(curves, style)
        try:
            metadata = {"Date": None} if suffix == ".svg" else None
            fig.savefig(out_path, format=suffix[1:], metadata=metadata)
        finally:
            plt.close(fig)
    return out_path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render an emission-curve CSV as a figure."
    )
    parser.add_argument("csv", help="input curves CSV")
    parser.add_argument("out", help="output image path (.png or .svg)")
    parser.add_argument("--title", default="", help="figure title")
    args = parser.parse_args(argv)
    try:
        render(args.csv, args.out, Style(title=args.title))
    except RenderError as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    raise SystemExit(main())
