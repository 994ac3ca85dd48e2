"""Star-cover round trip over every graph class up to n vertices."""
import argparse
import time

from mapperforge.generators import graph_classes
from mapperforge.inverse import RoundTripFailed, required_points, verify_round_trip
from mapperforge.mapper import PointCloud


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-vertices", type=int, default=6)
    ap.add_argument("--extra", type=int, nargs="+", default=[0, 3], help="points beyond the minimum")
    args = ap.parse_args()
    print("n  classes  ok  seconds")
    for n in range(1, args.max_vertices + 1):
        t0 = time.perf_counter()
        classes = graph_classes(n)
        ok = 0
        for G in classes:
            for extra in args.extra:
                try:
                    verify_round_trip(G, PointCloud.anonymous(required_points(G) + extra))
                    ok += 1
                except RoundTripFailed:
                    pass
        print(f"{n}  {len(classes):7d}  {ok:3d}/{len(classes) * len(args.extra)}  {time.perf_counter() - t0:.3f}")


if __name__ == "__main__":
    main()
