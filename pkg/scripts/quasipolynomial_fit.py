"""Fit the quasi-polynomial degree for a graph type and evaluate it at primes."""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from dormant.ehrhart import closed_form_03, verify_quasipolynomial


@dataclass
class Config:
    g: int = 0
    r: int = 3
    N: int = 1
    primes: list[int] = field(default_factory=lambda: [3, 5, 7, 11, 13])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--genus", type=int, default=0)
    ap.add_argument("--marked", type=int, default=3)
    ap.add_argument("--level", type=int, default=1)
    ap.add_argument("--primes", default="3,5,7,11,13")
    a = ap.parse_args(argv)
    cfg = Config(a.genus, a.marked, a.level, [int(x) for x in a.primes.split(",")])
    ref = closed_form_03 if (cfg.g, cfg.r) == (0, 3) else None
    rep = verify_quasipolynomial(cfg.g, cfg.r, cfg.primes, cfg.N, reference=ref)
    print(json.dumps(rep, indent=2))
    return 0 if rep["pass"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
