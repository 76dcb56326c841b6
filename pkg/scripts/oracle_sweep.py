"""Run the planted-root and generic-nonvanishing oracle over random systems."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from mhres.random_systems import RandomSystemConfig, random_systems
from mhres.search import enumerate_det_vectors
from mhres.verify import verify_report


@dataclass
class SweepConfig:
    systems: int = 5
    trials: int = 10
    max_dim: int = 24
    seed: int = 0
    degrees: bool = False


def sweep(cfg: SweepConfig):
    def small(s):
        vecs = enumerate_det_vectors(s)
        return bool(vecs) and max(dim for _, dim in vecs) <= cfg.max_dim

    gen = RandomSystemConfig(max_r=2, max_n=3, seed=cfg.seed)
    for sys_ in random_systems(gen, cfg.systems, accept=small):
        for m, dim in enumerate_det_vectors(sys_):
            t = time.perf_counter()
            rep = verify_report(sys_, m, trials=cfg.trials, seed=cfg.seed, degrees=cfg.degrees)
            yield {"l": sys_.l, "d": sys_.d, "s": sys_.s, "dim": dim,
                   "seconds": round(time.perf_counter() - t, 3), **rep}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(SweepConfig()).items():
        flag = "--" + name.replace("_", "-")
        if isinstance(default, bool):
            ap.add_argument(flag, action="store_true")
        else:
            ap.add_argument(flag, type=type(default), default=default)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    rows = list(sweep(cfg))
    for row in rows:
        print(json.dumps(row))
    ok = sum(r["planted_root_pass"] == r["trials"] == r["generic_nonzero_pass"] for r in rows)
    print(f"{ok}/{len(rows)} vectors passed every trial")


if __name__ == "__main__":
    main()
