"""Safety radii and stability under in-ball perturbations for random graphs."""
import argparse
from fractions import Fraction

import numpy as np

from mapperforge.exact import sq_dist
from mapperforge.extension import LipschitzData, safety_radii, verify_stability
from mapperforge.generators import graph_classes
from mapperforge.geometry import SearchConfig, synthesize_convex_cover
from mapperforge.inverse import required_points
from mapperforge.mapper import PointCloud


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=10)
    ap.add_argument("--perturb", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    pool = [G for G in graph_classes(4) + graph_classes(5) if G.edges]
    print("edges  min_radius  stable")
    for i in range(args.instances):
        G = pool[int(rng.integers(len(pool)))]
        X = PointCloud({j: (j, int(rng.integers(-8, 9))) for j in range(required_points(G) + 1)})
        cc = synthesize_convex_cover(G, X, search=SearchConfig(seed=i))
        radii = safety_radii(LipschitzData.from_lens(X, cc.lens), cc.family)
        new = {}
        for k in range(args.perturb):
            pid = X.ids[int(rng.integers(len(X.ids)))]
            r = radii.radii[pid]
            while True:
                y = tuple(Fraction(c) + Fraction(float(u)) for c, u in zip(X[pid], rng.uniform(-1, 1, 2) * float(r) * 0.7))
                if sq_dist(y, X[pid]) < r * r:
                    break
            new[1000 + k] = y
        res = verify_stability(cc, X, radii, PointCloud(new))
        print(f"{len(G.edges):5d}  {float(min(radii.radii.values())):.3e}  {res.stable}")


if __name__ == "__main__":
    main()
