"""Refinement experiments: diagrams from nested nets should sit within summed bounds.

    python3 scripts/refinement.py --kind cross2d --x 0,0 --r 0.25 --max-scale 0.1 --eps 0.04 0.02 0.01 0.005
    python3 scripts/refinement.py --pipeline r --kind circle --x 1,0 --eps 0.05 0.025 0.0125
"""

import argparse
import itertools
import math
import time
from collections import Counter

from localhom.diagram_metric import bottleneck_distance
from localhom.geometry import LocalQuery, sample_density
from localhom.local_homology import alpha_pipeline, r_pipeline
from localhom.synthetic import KINDS, SpaceSpec, dense_reference, generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pipeline", choices=["alpha", "r"], default="alpha")
    ap.add_argument("--kind", choices=KINDS, default="cross2d")
    ap.add_argument("--x", default="0,0")
    ap.add_argument("--r", type=float, default=0.25)
    ap.add_argument("--max-scale", type=float, default=0.1)
    ap.add_argument("--max-dim", type=int, default=1)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.04, 0.02, 0.01])
    args = ap.parse_args()
    x = tuple(float(t) for t in args.x.split(","))

    runs = {}
    for eps in args.eps:
        spec = SpaceSpec(args.kind, eps)
        cloud = generate(spec)
        t0 = time.perf_counter()
        if args.pipeline == "alpha":
            res = alpha_pipeline(cloud, LocalQuery(x, args.r, eps, args.max_scale, args.max_dim))
        else:
            res = r_pipeline(cloud, LocalQuery(x, math.inf, eps, 2 * eps, args.max_dim))
        elapsed = time.perf_counter() - t0
        runs[eps] = res
        strong = Counter(k for k, b, d in res.diagram if d - b > 2 * res.bound)
        measured = sample_density(cloud, dense_reference(spec, 4))
        print(f"eps={eps:<8g} n={len(cloud):<6d} measured={measured:.4g} bound={res.bound:.4g} "
              f"points={len(res.diagram):<5d} strong={dict(strong)} time={elapsed:.2f}s")

    print()
    print("eps_a    eps_b    bottleneck  summed_bound  ok")
    for a, b in itertools.combinations(args.eps, 2):
        dist = bottleneck_distance(runs[a].diagram, runs[b].diagram)
        total = runs[a].bound + runs[b].bound
        print(f"{a:<8g} {b:<8g} {dist:<11.4g} {total:<13.4g} {dist <= total}")


if __name__ == "__main__":
    main()
