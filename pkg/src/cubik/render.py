"""ASCII and matplotlib renderings of grids, fronts and cube diagrams.

SVG output is byte-for-byte reproducible: the hash salt is fixed and the
date metadata is dropped.
"""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .cube import CubeDiagram, knot_from_cube  # noqa: E402
from .grid import GridDiagram, crossings, x_bends  # noqa: E402
from .invariants import corner_types  # noqa: E402

__all__ = ["ascii_grid", "grid_figure", "front_figure", "cube_figure", "figure_bytes", "save_figure", "render"]

SVG_SALT = "cubik"


def ascii_grid(G: GridDiagram) -> str:
    """Top row first; ``-`` and ``|`` trace the knot, ``+`` marks a crossing."""
    n = G.n
    cells = [[" "] * n for _ in range(n)]
    for r in range(n):
        lo, hi = G.horizontal_span(r)
        for c in range(lo + 1, hi):
            cells[r][c] = "-"
    for c in range(n):
        lo, hi = sorted((G.x_row[c], G.o_row[c]))
        for r in range(lo + 1, hi):
            cells[r][c] = "+" if cells[r][c] == "-" else "|"
    for r in range(n):
        cells[r][G.x_cols[r]] = "X"
        cells[r][G.o_cols[r]] = "O"
    return "".join("".join(row).rstrip() + "\n" for row in reversed(cells))


def _style(ax, n):
    ax.set_xlim(-0.5, n - 0.5)
    ax.set_ylim(-0.5, n - 0.5)
    ax.set_aspect("equal")
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.grid(True, color="0.9", linewidth=0.5)


def grid_figure(G: GridDiagram, title: str | None = None):
    """Markings and segments; horizontal strands are broken where they pass under."""
    n = G.n
    fig, ax = plt.subplots(figsize=(0.5 * n + 1.5, 0.5 * n + 1.5))
    _style(ax, n)
    gap = 0.18
    under = {}
    for x in crossings(G):
        under.setdefault(x.position[0], []).append(x.position[1])
    for r in range(n):
        lo, hi = G.horizontal_span(r)
        cuts = [lo] + [v for c in sorted(under.get(r, [])) for v in (c - gap, c + gap)] + [hi]
        for a, b in zip(cuts[::2], cuts[1::2]):
            ax.plot([a, b], [r, r], color="tab:blue", linewidth=1.5)
    for c in range(n):
        ax.plot([c, c], sorted((G.x_row[c], G.o_row[c])), color="tab:blue", linewidth=1.5)
    for r in range(n):
        ax.text(G.x_cols[r], r, "X", ha="center", va="center", fontsize=12, fontweight="bold",
                bbox=dict(boxstyle="square,pad=0.1", fc="white", ec="none"))
        ax.text(G.o_cols[r], r, "O", ha="center", va="center", fontsize=12, fontweight="bold",
                bbox=dict(boxstyle="square,pad=0.1", fc="white", ec="none"))
    if title:
        ax.set_title(title)
    return fig


def front_figure(G: GridDiagram, title: str | None = None):
    """Grid rotated 45 degrees counterclockwise with NW/SE corners marked as cusps."""
    fig, ax = plt.subplots(figsize=(0.6 * G.n + 1.5, 0.4 * G.n + 1.5))

    def rot(r, c):
        return (c - r, c + r)

    for b in x_bends(G):
        for seg in (b.incoming, b.outgoing):
            (r0, c0), (r1, c1) = seg.start, seg.end
            p, q = rot(r0, c0), rot(r1, c1)
            ax.plot([p[0], q[0]], [p[1], q[1]], color="tab:purple", linewidth=1.2)
    for kind, (r, c), quad in corner_types(G):
        if quad in ("NW", "SE"):
            p = rot(r, c)
            ax.plot(p[0], p[1], marker="<" if quad == "NW" else ">", color="black", markersize=6)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return fig


def cube_figure(C: CubeDiagram, title: str | None = None):
    """Isometric wireframe of the lattice knot, edges coloured by axis."""
    fig, ax = plt.subplots(figsize=(5, 5))
    colours = {0: "tab:red", 1: "tab:green", 2: "tab:blue"}

    def iso(p):
        i, j, k = p
        return (0.866 * (i - j), 0.5 * (i + j) + k)

    for comp in knot_from_cube(C).components:
        for e in comp:
            a, b = iso(e.start), iso(e.end)
            ax.plot([a[0], b[0]], [a[1], b[1]], color=colours[e.axis], linewidth=1.5)
    for m in C.markings:
        p = iso(m.p)
        ax.text(p[0], p[1], m.t, fontsize=7, ha="center", va="center")
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    return fig


def figure_bytes(fig, fmt: str = "svg") -> bytes:
    buf = io.BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": SVG_SALT, "svg.fonttype": "path"}):
        if fmt == "svg":
            fig.savefig(buf, format="svg", metadata={"Date": None})
        else:
            fig.savefig(buf, format=fmt, metadata={"Software": None}, dpi=100)
    plt.close(fig)
    return buf.getvalue()


def save_figure(fig, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(figure_bytes(fig, path.suffix.lstrip(".") or "svg"))
    return path


def render(obj, fmt: str = "ascii", view: str = "grid") -> str:
    """Text document for a grid (ascii or svg) or a cube diagram (svg)."""
    if isinstance(obj, CubeDiagram):
        if fmt != "svg":
            raise ValueError("cube diagrams only render as svg")
        return figure_bytes(cube_figure(obj)).decode("utf-8")
    if fmt == "ascii":
        return ascii_grid(obj)
    if fmt == "svg":
        fig = front_figure(obj) if view == "front" else grid_figure(obj)
        return figure_bytes(fig).decode("utf-8")
    raise ValueError(f"unknown format {fmt}")
