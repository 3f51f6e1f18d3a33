"""Command-line front end.

Every command is deterministic given its flags and --seed; structured
results go to JSON, point clouds to CSV.  Exit codes: 0 success, 2 on
parameter/domain errors; `check` exits 1 when the matrix is not in the
linear regime.
"""

from __future__ import annotations

import argparse
import datetime
import shlex
import sys

from . import __version__
from .decoder import linear_decode, map_decode
from .errors import PermlinError
from .estimators import (
    ellipsoid_projection_data,
    perr_geometric,
    perr_simulation,
    region_sample,
)
from .io import (
    dumps_json,
    estimate_to_dict,
    matrix_to_dict,
    parse_vector,
    read_matrix,
    read_params,
    write_ellipsoid_csv,
    write_matrix_json,
    write_region_csv,
)
from .linalg import CovarianceMatrix, sym_eigen
from .regime import check_linear_regime, construct_covariance


def _meta(args) -> dict:
    return {
        "tool": "permlin",
        "version": __version__,
        "command": shlex.join(args.argv_echo),
        "seed": args.seed,
        "workers": args.workers,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _emit_json(doc: dict, out: str | None) -> None:
    text = dumps_json(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _covariance(path: str) -> CovarianceMatrix:
    return CovarianceMatrix(read_matrix(path).entries)


def _parse_box(spec: str | None, n: int):
    if spec is None:
        return None
    pairs = [part for part in spec.split(";") if part.strip()]
    if len(pairs) == 1:
        pairs = pairs * n
    if len(pairs) != n:
        raise PermlinError(f"--box needs one lo,hi pair or {n} of them, got {len(pairs)}")
    box = []
    for part in pairs:
        lo, hi = (float(t) for t in part.split(","))
        box.append((lo, hi))
    return box


def cmd_construct(args) -> int:
    params = read_params(args.params)
    k = construct_covariance(params)
    doc = matrix_to_dict(k, meta=_meta(args))
    if args.out:
        write_matrix_json(k, args.out, meta=_meta(args))
    else:
        sys.stdout.write(dumps_json(doc))
    return 0


def cmd_spectrum(args) -> int:
    k = read_matrix(args.matrix)
    spec = sym_eigen(k)
    _emit_json({"eigenvalues": spec.eigenvalues.tolist(), "meta": _meta(args)}, args.out)
    return 0


def cmd_check(args) -> int:
    k = _covariance(args.matrix)
    result = check_linear_regime(k, tol=args.tol)
    doc = {"is_linear": result.is_linear, "residual": result.residual, "params": None,
           "meta": _meta(args)}
    if result.params is not None:
        p = result.params
        doc["params"] = {"n": p.n, "gamma": p.gamma, "a": p.a, "v": p.v,
                         "q": p.q.columns.tolist()}
    _emit_json(doc, args.out)
    return 0 if result.is_linear else 1


def cmd_decode(args) -> int:
    k = _covariance(args.matrix)
    y = parse_vector(args.y)
    if args.decoder == "linear":
        perm = linear_decode(k, y)
    else:
        perm = map_decode(k, y, args.samples, args.seed, workers=args.workers,
                          max_factorial_n=args.max_factorial_n)
    sys.stdout.write(perm.to_text() + "\n")
    if args.out:
        _emit_json({"permutation": perm.to_text(), "decoder": args.decoder,
                    "meta": _meta(args)}, args.out)
    return 0


def cmd_perr(args) -> int:
    k = _covariance(args.matrix)
    if args.method == "sim":
        est = perr_simulation(k, decoder=args.decoder, trials=args.trials,
                              seed=args.seed, map_samples=args.map_samples,
                              workers=args.workers, max_factorial_n=args.max_factorial_n)
    else:
        est = perr_geometric(k, samples=args.samples, seed=args.seed,
                             workers=args.workers, tol=args.tol)
    _emit_json(estimate_to_dict(est, meta=_meta(args)), args.out)
    return 0


def cmd_regions(args) -> int:
    k = _covariance(args.matrix)
    sample = region_sample(k, box=_parse_box(args.box, k.n), count=args.count,
                           decoder=args.decoder, map_samples=args.samples,
                           seed=args.seed, max_factorial_n=args.max_factorial_n)
    write_region_csv(sample, args.out, meta=_meta(args))
    return 0


def cmd_ellipsoid(args) -> int:
    params = read_params(args.params)
    data = ellipsoid_projection_data(params, surface_count=args.count, seed=args.seed)
    write_ellipsoid_csv(data, args.out, meta=_meta(args))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base random seed")
    common.add_argument("--workers", type=int, default=1,
                        help="Monte Carlo worker-stream count")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="regime-membership tolerance")
    common.add_argument("--max-factorial-n", type=int, default=8, dest="max_factorial_n",
                        help="refuse n! enumeration beyond this n")
    common.add_argument("--out", default=None, help="output file path")

    parser = argparse.ArgumentParser(prog="permlin",
                                     description="Permutation recovery from noisy data: "
                                                 "linear-regime tools and decoders")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common],
                       help="build a covariance from regime params JSON")
    p.add_argument("params")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("spectrum", parents=[common],
                       help="eigenvalues of a matrix file")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check", parents=[common],
                       help="test a covariance for linear-regime membership "
                            "(exit 0 linear, 1 not, 2 error)")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decode", parents=[common], help="decode one observation")
    p.add_argument("matrix")
    p.add_argument("--y", required=True, help="observation vector (JSON array or CSV row)")
    p.add_argument("--decoder", choices=["linear", "map"], default="linear")
    p.add_argument("--samples", type=int, default=20_000,
                   help="posterior samples for the map decoder")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("perr", parents=[common], help="estimate the error probability")
    p.add_argument("matrix")
    p.add_argument("--method", choices=["sim", "geo"], required=True)
    p.add_argument("--decoder", choices=["linear", "map"], default="linear")
    p.add_argument("--trials", type=int, default=100_000, help="simulation trials")
    p.add_argument("--samples", type=int, default=100_000, help="geometric ball samples")
    p.add_argument("--map-samples", type=int, default=20_000, dest="map_samples")
    p.set_defaults(func=cmd_perr)

    p = sub.add_parser("regions", parents=[common],
                       help="decoder-labeled point cloud over a box (CSV)")
    p.add_argument("matrix")
    p.add_argument("--box", default=None,
                   help='per-axis bounds "lo,hi" or "lo,hi;lo,hi;..." (default -3,3)')
    p.add_argument("--count", type=int, default=2000)
    p.add_argument("--decoder", choices=["linear", "map"], default="linear")
    p.add_argument("--samples", type=int, default=20_000,
                   help="posterior samples per point for the map decoder")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("ellipsoid", parents=[common],
                       help="posterior-ellipsoid surface and projection points (CSV)")
    p.add_argument("params")
    p.add_argument("--count", type=int, default=2000)
    p.set_defaults(func=cmd_ellipsoid)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv_echo = ["permlin"] + argv
    for name in ("regions", "ellipsoid"):
        if args.command == name and not args.out:
            parser.error(f"{name} requires --out")
    try:
        return args.func(args)
    except PermlinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
