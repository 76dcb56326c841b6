"""Random small (l, d, s) data for property tests and sweeps."""
from __future__ import annotations

import random
from functools import reduce
from math import gcd
from dataclasses import dataclass

from .combinatorics import SystemData, validate_system


@dataclass(frozen=True)
class RandomSystemConfig:
    max_r: int = 3
    max_n: int = 4
    max_d: int = 2
    max_s: int = 3
    seed: int = 0


def random_system(rng: random.Random, cfg: RandomSystemConfig) -> SystemData:
    """Pick r, then n >= r, then a random composition of n into r parts.

    s is redrawn until its entries are coprime.
    """
    r = rng.randint(1, min(cfg.max_r, cfg.max_n))
    n = rng.randint(r, cfg.max_n)
    cuts = sorted(rng.sample(range(1, n), r - 1))
    l = [b - a for a, b in zip([0, *cuts], [*cuts, n])]
    d = [rng.randint(1, cfg.max_d) for _ in range(r)]
    while True:
        s = sorted(rng.randint(1, cfg.max_s) for _ in range(sum(l) + 1))
        if reduce(gcd, s) == 1:
            return validate_system(l, d, s)


def random_systems(cfg: RandomSystemConfig, count: int, accept=None, max_draws: int = 10_000) -> list[SystemData]:
    """``count`` distinct systems passing ``accept`` (all systems if None)."""
    rng = random.Random(cfg.seed)
    seen, out = set(), []
    for _ in range(max_draws):
        sys = random_system(rng, cfg)
        key = (sys.l, sys.d, sys.s)
        if key in seen:
            continue
        seen.add(key)
        if accept is None or accept(sys):
            out.append(sys)
            if len(out) == count:
                return out
    raise RuntimeError(f"only {len(out)} of {count} systems found in {max_draws} draws")
