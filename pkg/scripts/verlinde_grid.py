"""Compare the level-one trigonometric formula with exact counts, and time both."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from dormant.arith import PrimeLevel
from dormant.fusion import degree_table, verlinde_N1


@dataclass
class Config:
    primes: list[int] = field(default_factory=lambda: [3, 5, 7, 11, 13])
    g_max: int = 4
    r_max: int = 3


def run(cfg: Config) -> dict:
    out = []
    for p in cfg.primes:
        for g in range(cfg.g_max + 1):
            for r in range(cfg.r_max + 1):
                if 2 * g - 2 + r <= 0:
                    continue
                t0 = time.perf_counter()
                exact = sum(degree_table(PrimeLevel(p, 1), g, r).values())
                t1 = time.perf_counter()
                approx = verlinde_N1(p, g, r)
                t2 = time.perf_counter()
                out.append({
                    "p": p, "g": g, "r": r, "exact": exact, "formula": approx,
                    "rel_error": abs(approx - exact) / max(1, exact),
                    "t_exact": t1 - t0, "t_formula": t2 - t1,
                })
    return {"config": asdict(cfg), "rows": out, "worst": max(r["rel_error"] for r in out)}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5,7,11,13")
    ap.add_argument("--g-max", type=int, default=4)
    ap.add_argument("--r-max", type=int, default=3)
    a = ap.parse_args(argv)
    cfg = Config([int(x) for x in a.primes.split(",")], a.g_max, a.r_max)
    res = run(cfg)
    print(json.dumps(res, indent=2))
    return 0 if res["worst"] <= 1e-6 else 1


if __name__ == "__main__":
    raise SystemExit(main())
