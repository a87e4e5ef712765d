"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row is one kernel on one workload; ``speedup`` is fallback time over
compiled time.
"""

import argparse
import time

import numpy as np

from morphclust import _backend
from morphclust.components import label_components
from morphclust.datasets import BlobSpec, generate_blobs
from morphclust.engine import ClusterConfig, _kernel_points, cluster
from morphclust.morphology import Grid


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(rng):
    for shape, density in (((100, 100, 1), 0.05), ((300, 300, 1), 0.05), ((40, 40, 40), 0.02)):
        occ = (rng.random(shape) < density).astype(np.uint8)
        dim = 2 if shape[2] == 1 else 3
        lg = label_components(Grid.from3d(occ, dim))
        lab = lg.as3d()
        pts = _kernel_points(rng.uniform(0, shape[0], (500, dim)))
        yield "x".join(map(str, shape[:dim])), occ, lab, pts


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "cython" not in _backend.AVAILABLE:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    ck, pk = _backend.AVAILABLE["cython"], _backend.AVAILABLE["python"]
    offs = np.array([(0, 0, 0), (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    rng = np.random.default_rng(0)

    print(f"{'kernel':<16}{'grid':>12}{'fallback s':>14}{'compiled s':>14}{'speedup':>10}")
    for name, occ, lab, pts in workloads(rng):
        d2, _ = ck.edt(lab)
        cases = {
            "dilate": lambda k: k.dilate(occ, offs),
            "label": lambda k: k.label(occ, True),
            "edt": lambda k: k.edt(lab),
            "nearest_window": lambda k: k.nearest_window(pts, lab, d2),
            "nearest_brute": lambda k: k.nearest_brute(pts, lab),
        }
        for kernel, fn in cases.items():
            tp = best_of(lambda: fn(pk), args.repeat)
            tc = best_of(lambda: fn(ck), args.repeat)
            print(f"{kernel:<16}{name:>12}{tp:>14.4f}{tc:>14.4f}{tp / tc:>10.1f}")

    pts, _ = generate_blobs(BlobSpec(spread=0.15, seed=1))
    for backend in ("python", "cython"):
        _backend.set_backend(backend)
        t = best_of(lambda: cluster(pts, ClusterConfig(k=3)), args.repeat)
        print(f"end-to-end cluster (750 blob points, R=100) [{backend}]: {t:.4f}s")


if __name__ == "__main__":
    main()
