"""Compare expected local homology at canonical basepoints with dense alpha-pipeline runs.

A class counts when its persistence exceeds twice the certified bound.

    python3 scripts/ground_truth_sweep.py --jobs 4
"""

import argparse
from collections import Counter

from localhom.geometry import LocalQuery
from localhom.local_homology import sweep
from localhom.synthetic import SpaceSpec, canonical_points, generate, ground_truth_note

SETUPS = [
    (SpaceSpec("segment", 0.005), 0.25, 0.1, 1),
    (SpaceSpec("circle", 0.01), 0.4, 0.1, 1),
    (SpaceSpec("cone2d", 0.01, arms=4), 0.3, 0.1, 1),
    (SpaceSpec("cross2d", 0.005), 0.25, 0.1, 1),
    (SpaceSpec("planes3d", 0.05), 0.25, 0.1, 2),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    mismatches = 0
    for spec, r, alpha, max_dim in SETUPS:
        cloud = generate(spec)
        points = canonical_points(spec)
        queries = []
        for x, _, r_max in points.values():
            radius = min(r, 0.9 * r_max)
            queries.append(LocalQuery(x, radius, spec.density, min(alpha, radius / 2), max_dim))
        results = sweep(cloud, queries, jobs=args.jobs)
        for (name, (x, ranks, _)), q, res in zip(points.items(), queries, results):
            seen = dict(Counter(k for k, b, d in res.diagram if d - b > 2 * res.bound))
            ok = seen == ranks
            mismatches += not ok
            print(f"{'ok ' if ok else 'BAD'} r={q.radius:<6g} alpha={q.max_scale:<6g} "
                  f"bound={res.bound:<7.4g} seen={seen}  {ground_truth_note(spec, x)}")
    raise SystemExit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
