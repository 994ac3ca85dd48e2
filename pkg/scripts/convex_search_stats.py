"""Trial counts of the randomized convex-cover search.

Graph classes on n vertices are searched in R^3; with --random-dim 2 random
2-complexes are searched in R^5 instead.
"""
import argparse
import json
import statistics
import time

import numpy as np

from mapperforge.generators import graph_classes, random_complex
from mapperforge.geometry import SearchConfig, SearchExhausted, synthesize_convex_cover
from mapperforge.inverse import required_points
from mapperforge.mapper import PointCloud


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vertices", type=int, default=5)
    ap.add_argument("--random-dim", type=int, default=0)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-trials", type=int, default=10_000)
    args = ap.parse_args()

    if args.random_dim:
        rng = np.random.default_rng(args.seed)
        complexes = [random_complex(rng, max_dim=args.random_dim) for _ in range(args.count)]
        d = args.random_dim
    else:
        complexes = graph_classes(args.vertices)
        d = 1
    cfg = SearchConfig(seed=args.seed, max_trials=args.max_trials)
    trials, exhausted = [], 0
    t0 = time.perf_counter()
    for K in complexes:
        X = PointCloud.anonymous(required_points(K) + 2, dim=2)
        try:
            trials.append(synthesize_convex_cover(K, X, d=d, search=cfg).trial + 1)
        except SearchExhausted:
            exhausted += 1
    summary = {
        "complexes": len(complexes),
        "ambient_dim": 2 * d + 1,
        "certified": len(trials),
        "exhausted": exhausted,
        "trials_mean": statistics.mean(trials) if trials else None,
        "trials_max": max(trials, default=None),
        "seconds": round(time.perf_counter() - t0, 2),
    }
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()
