"""Raster and PDF figures through matplotlib (write-only; never feeds back into results)."""
from __future__ import annotations

from typing import Sequence

from .drawing import Drawing
from .geometry import Point
from .svg import PALETTE


def render_figure(
    d: Drawing,
    path,
    faces: Sequence[Sequence[Point]] = (),
    rects: Sequence[Sequence[Point]] = (),
    title: str | None = None,
) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Polygon as Patch

    fig, ax = plt.subplots(figsize=(6, 6))
    for i, poly in enumerate(faces):
        pts = [(float(p[0]), float(p[1])) for p in poly]
        ax.add_patch(Patch(pts, closed=True, facecolor=PALETTE[i % len(PALETTE)], alpha=0.35, edgecolor="none"))
    for poly in rects:
        pts = [(float(p[0]), float(p[1])) for p in poly]
        ax.add_patch(Patch(pts, closed=True, facecolor="#999999", alpha=0.5, edgecolor="#555555"))
    for line in d.edges.values():
        ax.plot([float(p.x) for p in line.points], [float(p.y) for p in line.points], color="#222222", lw=0.8)
    if d.vertices:
        xs = [float(p.x) for p in d.vertices.values()]
        ys = [float(p.y) for p in d.vertices.values()]
        ax.scatter(xs, ys, s=14, color="#d62728", zorder=3)
        for v, p in d.vertices.items():
            ax.annotate(str(v), (float(p.x), float(p.y)), textcoords="offset points", xytext=(3, 3), fontsize=7)
    ax.set_aspect("equal", adjustable="datalim")
    ax.autoscale_view()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_summary(rows, path) -> None:
    """Two panels per sweep: collection size and smallest 4-face area against n."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    families = sorted({r["family"] for r in rows})
    for i, fam in enumerate(families):
        mine = [r for r in rows if r["family"] == fam]
        ns = [r["n"] for r in mine]
        color = PALETTE[i % len(PALETTE)]
        left.plot(ns, [r["bounded_cells"] for r in mine], marker="o", color=color, label=fam)
        right.plot(ns, [float(r["min_4face_area_float"]) for r in mine], marker="o", color=color, label=fam)
        if fam == "dn":
            right.plot(ns, [1 / (3 * n) for n in ns], ls="--", color=color, label="1/(3n)")
    left.set_xlabel("n")
    left.set_ylabel("disjoint bounded 4-faces found")
    right.set_xlabel("n")
    right.set_ylabel("smallest 4-face area")
    right.set_yscale("log")
    left.legend()
    right.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
