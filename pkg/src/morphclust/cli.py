"""Command-line interface: ``morphclust {cluster,kmeans,generate,bench,plot}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 algorithm error.
"""

import argparse
import logging
import sys

import numpy as np

from . import _backend
from .datasets import PAPER_CENTERS, BlobSpec, MoonsSpec, generate_blobs, generate_moons
from .engine import ClusterConfig, cluster
from .errors import MorphClustError
from .io import read_csv, write_csv
from .metrics import accuracy_tp, cluster_counts, kmeans
from .protocol import format_table, run_protocol
from .svg import emit_svg_scatter

log = logging.getLogger("morphclust")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _noise(text):
    text = text.lower()
    if text in ("none", "auto-paper", "auto-robust"):
        return text.replace("-", "_")
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected none, auto-paper, auto-robust or a positive number") from None
    if not val > 0:
        raise argparse.ArgumentTypeError("a fixed noise threshold must be positive")
    return val


def _seeds(text):
    out = []
    for part in text.split(","):
        if "-" in part.strip()[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _centers(text):
    return tuple(tuple(float(v) for v in c.split(",")) for c in text.split(";"))


def _add_engine_flags(p):
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    p.add_argument("--range", dest="R", type=int, default=100, help="grid resolution R (default 100)")
    p.add_argument("--max-iter", type=int, default=None, help="dilation cap (default R/2)")
    p.add_argument("--se", choices=["disk", "sphere", "square3", "cube3"], default=None,
                   help="structuring element (default disk in 2D, sphere in 3D)")
    p.add_argument("--connectivity", choices=["face", "full"], default="full")
    p.add_argument("--noise", type=_noise, default="none",
                   help="none | auto-paper | auto-robust | <threshold in grid units>")
    p.add_argument("--assign", choices=["bruteforce", "grid"], default="grid")


def _config(args, k=None):
    return ClusterConfig(
        k=k if k is not None else args.k,
        R=args.R,
        max_iter=args.max_iter,
        se_kind=args.se,
        connectivity=args.connectivity,
        noise_policy=args.noise,
        assignment_mode="bruteforce" if args.assign == "bruteforce" else "grid_transform",
    )


def _report(labels, truth, k):
    counts, noise = cluster_counts(labels, k)
    print(f"counts: {' '.join(map(str, counts))}  noise: {noise}")
    if truth is not None:
        gt_k = int(truth.max())
        if gt_k <= 10 and truth.min() >= 1:
            print(f"accuracy: {accuracy_tp(labels, truth, gt_k).accuracy:.4f}")


def cmd_cluster(args):
    points, truth = read_csv(args.inp)
    res, out_pts = cluster(points, _config(args))
    print(f"iterations: {res.iterations_used}")
    print(f"component trace: {' '.join(map(str, res.component_count_trace))}")
    if res.T_d_used is not None:
        print(f"noise threshold: {res.T_d_used:.6g}")
    _report(res.labels, truth, args.k)
    if args.out:
        write_csv(args.out, out_pts, res.labels)
    if args.plot:
        emit_svg_scatter(args.plot, out_pts, res.labels)
    return 0


def cmd_kmeans(args):
    points, truth = read_csv(args.inp)
    labels = kmeans(points, args.k, seed=args.seed, max_iter=args.max_iter)
    _report(labels, truth, args.k)
    if args.out:
        write_csv(args.out, points, labels)
    if args.plot:
        emit_svg_scatter(args.plot, points, labels)
    return 0


def _generate(args, seed):
    if args.kind == "blobs":
        centers = args.centers or PAPER_CENTERS
        return generate_blobs(BlobSpec(centers=centers, spread=args.spread,
                                       points_per_blob=args.points or 250, seed=seed))
    return generate_moons(MoonsSpec(points_per_moon=args.points or 200, radius=args.radius,
                                    gap=args.gap, jitter=args.jitter, seed=seed))


def _add_dataset_flags(p):
    p.add_argument("--kind", choices=["blobs", "moons"], default="blobs")
    p.add_argument("--points", type=int, default=None,
                   help="points per blob (default 250) or per moon (default 200)")
    p.add_argument("--centers", type=_centers, default=None, help='blob centers, e.g. "1,1;-1,-1"')
    p.add_argument("--spread", type=float, default=0.6, help="per-axis std of each blob")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--gap", type=float, default=0.3)
    p.add_argument("--jitter", type=float, default=0.05)


def cmd_generate(args):
    points, labels = _generate(args, args.seed)
    write_csv(args.out, points, labels)
    if args.plot:
        emit_svg_scatter(args.plot, points, labels)
    return 0


def cmd_bench(args):
    if args.kind == "blobs":
        params = dict(centers=args.centers or PAPER_CENTERS, spread=args.spread,
                      points_per_blob=args.points or 250)
        n_per, k = params["points_per_blob"], len(params["centers"])
    else:
        params = dict(points_per_moon=args.points or 200, radius=args.radius,
                      gap=args.gap, jitter=args.jitter)
        n_per, k = params["points_per_moon"], 2
    cfg = _config(args, k=k)
    records = run_protocol(args.seeds, kind=args.kind, cfg=cfg, **params)
    print(f"backend: {_backend.get_backend()}")
    print(format_table(records, [n_per] * k))
    return 0


def cmd_plot(args):
    points, labels = read_csv(args.inp)
    if labels is None:
        labels = np.ones(points.shape[0], dtype=np.int64)
    emit_svg_scatter(args.out, points, labels)
    return 0


def build_parser():
    parser = _Parser(prog="morphclust", description=__doc__.splitlines()[0])
    parser.add_argument("--backend", choices=sorted(_backend.AVAILABLE), default=None,
                        help="kernel backend (default: compiled if available)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="morphological clustering of a CSV point set")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--plot")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("kmeans", help="K-means baseline on a CSV point set")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out")
    p.add_argument("--plot")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=300)
    p.set_defaults(func=cmd_kmeans)

    p = sub.add_parser("generate", help="write a synthetic labeled dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--plot")
    p.add_argument("--seed", type=int, default=0)
    _add_dataset_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="accuracy table over seeds, proposed method vs K-means")
    p.add_argument("--seeds", type=_seeds, default=list(range(1, 21)), help='e.g. "1-20" or "1,4,7"')
    _add_dataset_flags(p)
    _add_engine_flags(p)
    p.set_defaults(func=cmd_bench)
    # k comes from the dataset in bench mode
    for action in p._actions:
        if action.dest == "k":
            action.required = False

    p = sub.add_parser("plot", help="render a labeled CSV as an SVG scatter plot")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.backend:
        _backend.set_backend(args.backend)
    try:
        return args.func(args)
    except MorphClustError as exc:
        print(f"morphclust: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
