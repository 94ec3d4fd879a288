"""Learn random targets in both modes and tabulate query counts.

    python scripts/roundtrip.py --kind sst --count 50 --seed 3
"""

import argparse
import random
import statistics
import time
from collections import defaultdict
from dataclasses import dataclass

from funl.dfa import dfa_isomorphic, minimize_dfa
from funl.generators import random_dfa, random_sst, random_wfa
from funl.learner import funl
from funl.sst import minimize_sst, sst_isomorphic
from funl.teachers import Teacher
from funl.wfa import minimize_wfa


@dataclass
class Config:
    kind: str = "dfa"
    count: int = 100
    seed: int = 0
    max_size: int = 0   # 0 picks the per-kind default (10 / 5 / 6)


SETUP = {
    "dfa": (random_dfa, minimize_dfa, lambda m: m.n_states, lambda h, m: dfa_isomorphic(h, m), 10),
    "wfa": (random_wfa, minimize_wfa, lambda m: m.dim, lambda h, m: h.dim == m.dim, 5),
    "sst": (random_sst, minimize_sst, lambda m: m.n_states, lambda h, m: sst_isomorphic(h, m), 6),
}


def run(cfg: Config):
    gen, minimize, size, same, default = SETUP[cfg.kind]
    rng = random.Random(cfg.seed)
    by_size = defaultdict(lambda: defaultdict(list))
    mismatches = 0
    for _ in range(cfg.count):
        target = gen(rng, cfg.max_size or default)
        m = minimize(target)
        for mode in ("basic", "optimized"):
            t0 = time.perf_counter()
            h, stats = funl(Teacher(target), mode=mode)
            dt = time.perf_counter() - t0
            mismatches += not same(h, m)
            by_size[size(m)][mode].append((stats.eval_queries, stats.equiv_queries, stats.while_iterations, dt))

    print(f"{cfg.kind}: {cfg.count} targets, seed {cfg.seed}, {mismatches} non-minimal results")
    print(f"{'size':>4} {'n':>4} | {'basic eval':>10} {'equiv':>6} {'repairs':>7} | "
          f"{'opt eval':>9} {'equiv':>6} {'repairs':>7} | {'ms/run':>7}")
    for s in sorted(by_size):
        b, o = by_size[s]["basic"], by_size[s]["optimized"]
        mean = lambda rows, i: statistics.mean(r[i] for r in rows)
        ms = 1000 * statistics.mean(r[3] for r in b + o)
        print(f"{s:>4} {len(b):>4} | {mean(b, 0):>10.1f} {mean(b, 1):>6.2f} {mean(b, 2):>7.2f} | "
              f"{mean(o, 0):>9.1f} {mean(o, 1):>6.2f} {mean(o, 2):>7.2f} | {ms:>7.2f}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--kind", choices=sorted(SETUP), default=Config.kind)
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--max-size", type=int, default=Config.max_size)
    run(Config(**vars(p.parse_args())))


if __name__ == "__main__":
    main()
