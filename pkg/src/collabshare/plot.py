"""Render collaborating curves over one period x = 0..p-1.

Output is generated as plain text so that identical inputs give identical
bytes.
"""

from __future__ import annotations

from typing import Sequence

from . import _kernels
from .poly import Polynomial

COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
MAX_PLOT_MODULUS = 4096


def curve_table(polys: Sequence[Polynomial]) -> list[list[int]]:
    """One row of values per curve over x = 0..p-1."""
    p = polys[0].modulus.p
    if any(f.modulus.p != p for f in polys):
        raise ValueError("all curves must share one modulus")
    if p > MAX_PLOT_MODULUS:
        raise ValueError(f"p = {p} is too large to tabulate (limit {MAX_PLOT_MODULUS})")
    grid = _kernels.eval_grid([f.coeffs for f in polys], range(p), p)
    return [[int(v) for v in row] for row in grid]


def shared_xs(table: list[list[int]]) -> list[int]:
    """x values where every curve takes the same value."""
    if len(table) < 2:
        return []
    return [x for x in range(len(table[0])) if len({row[x] for row in table}) == 1]


def points_text(polys: Sequence[Polynomial], labels: Sequence[str]) -> str:
    table = curve_table(polys)
    lines = ["x\t" + "\t".join(labels)]
    for x in range(len(table[0])):
        lines.append("\t".join([str(x)] + [str(row[x]) for row in table]))
    return "\n".join(lines) + "\n"


def svg(
    polys: Sequence[Polynomial],
    labels: Sequence[str],
    crossover_x: Sequence[int] = (),
    width: int = 640,
    height: int = 420,
) -> str:
    table = curve_table(polys)
    p = polys[0].modulus.p
    left, right, top, bottom = 50, 20, 30, 40
    span = max(p - 1, 1)

    def sx(x: int) -> str:
        return f"{left + (width - left - right) * x / span:.2f}"

    def sy(y: int) -> str:
        return f"{height - bottom - (height - top - bottom) * y / span:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
    ]
    if p <= 32:
        for v in range(p):
            out.append(
                f'<text x="{sx(v)}" y="{height - bottom + 16}" font-size="11" '
                f'text-anchor="middle">{v}</text>'
            )
            out.append(
                f'<text x="{left - 8}" y="{sy(v)}" font-size="11" text-anchor="end" '
                f'dominant-baseline="middle">{v}</text>'
            )
    for i, (row, label) in enumerate(zip(table, labels)):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in enumerate(row))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for x, y in enumerate(row):
            out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="2.5" fill="{color}"/>')
        out.append(
            f'<text x="{width - right}" y="{top - 14 + 14 * i}" font-size="12" '
            f'text-anchor="end" fill="{color}">{_escape(label)}</text>'
        )
    designated = set(crossover_x)
    for x in shared_xs(table):
        y = table[0][x]
        fill = "black" if x in designated else "none"
        out.append(
            f'<circle class="crossover" cx="{sx(x)}" cy="{sy(y)}" r="6" fill="{fill}" '
            f'stroke="black" stroke-width="1.5"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")

