"""Render a decoder-labeled region CSV as a 3D scatter figure."""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .common import FigureSpec, SchemaError, label_colors, read_regions_csv


def render_regions(spec: FigureSpec) -> None:
    points, labels = read_regions_csv(spec.input_csv)
    colors = label_colors(labels)
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    for label, color in colors.items():
        mask = [lab == label for lab in labels]
        pts = points[mask]
        ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2], s=4, color=color,
                   label=label, depthshade=False)
    ax.set_xlabel("y1")
    ax.set_ylabel("y2")
    ax.set_zlabel("y3")
    ax.view_init(elev=spec.elev, azim=spec.azim)
    ax.legend(title="permutation", loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="3D scatter of decoder-labeled region samples")
    parser.add_argument("csv", help="region CSV (columns y1,y2,y3,label)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--elev", type=float, default=20.0)
    parser.add_argument("--azim", type=float, default=-60.0)
    parser.add_argument("--kind", choices=["regions3d", "cones"], default="regions3d")
    args = parser.parse_args(argv)
    try:
        render_regions(FigureSpec(input_csv=args.csv, kind=args.kind,
                                  out=args.out, elev=args.elev, azim=args.azim))
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
