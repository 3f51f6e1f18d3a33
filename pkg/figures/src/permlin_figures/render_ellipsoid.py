"""Render ellipsoid-surface and hyperplane-projection points in one scene."""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .common import FigureSpec, SchemaError, read_ellipsoid_csv


def render_ellipsoid(spec: FigureSpec) -> None:
    sets = read_ellipsoid_csv(spec.input_csv)
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    surf = sets["surface"]
    proj = sets["projection"]
    ax.scatter(surf[:, 0], surf[:, 1], surf[:, 2], s=3, color="#1f77b4",
               alpha=0.45, label="ellipsoid surface", depthshade=False)
    ax.scatter(proj[:, 0], proj[:, 1], proj[:, 2], s=3, color="#d62728",
               alpha=0.8, label="projection onto 1.x = 0", depthshade=False)
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_zlabel("x3")
    ax.view_init(elev=spec.elev, azim=spec.azim)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=150)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="3D view of the posterior ellipsoid and its hyperplane shadow")
    parser.add_argument("csv", help="ellipsoid CSV (columns set,x1,x2,x3)")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--elev", type=float, default=18.0)
    parser.add_argument("--azim", type=float, default=-55.0)
    args = parser.parse_args(argv)
    try:
        render_ellipsoid(FigureSpec(input_csv=args.csv, kind="ellipsoid",
                                    out=args.out, elev=args.elev, azim=args.azim))
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
