"""Where do minimum-dimension formulae sit relative to the box centers?

Runs the probe over random determinantal systems and tallies the distances.
"""
import argparse
from collections import Counter

from mhres.random_systems import RandomSystemConfig, random_systems
from mhres.search import enumerate_det_vectors, min_dim_probe


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-r", type=int, default=2)
    args = ap.parse_args(argv)

    cfg = RandomSystemConfig(max_r=args.max_r, max_n=4, seed=args.seed)
    tally = Counter()
    for sys_ in random_systems(cfg, args.count, accept=lambda s: bool(enumerate_det_vectors(s))):
        rep = min_dim_probe(sys_)
        near = min(rep.distances.values())
        tally[near] += 1
        print(f"l={sys_.l} d={sys_.d} s={sys_.s}: min dim {rep.min_dim} at {rep.argmins}, distance {near}")
    print("\nnearest distance histogram:", {str(k): v for k, v in sorted(tally.items())})


if __name__ == "__main__":
    main()
