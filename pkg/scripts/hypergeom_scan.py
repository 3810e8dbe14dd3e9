"""Scan every (a,b,c) at one level and tabulate why operators fail to have full root functions."""
from __future__ import annotations

import argparse
import json
import re
from collections import Counter
from dataclasses import dataclass

from dormant.arith import PrimeLevel
from dormant.hypergeom import HGOperator, root_function_report
from dormant.triples import enumerate_dagger_B


@dataclass
class Config:
    p: int = 3
    N: int = 2


def run(cfg: Config) -> dict:
    pp = PrimeLevel(cfg.p, cfg.N)
    reasons: Counter[str] = Counter()
    full = set()
    rng = range(1, pp.q + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                rep = root_function_report(HGOperator(a, b, c, pp))
                if rep.full:
                    full.add((a, b, c))
                else:
                    # drop the index so reasons group together
                    reasons[re.sub(r"n=\d+", "n=*", rep.reason or "")] += 1
    target = set(enumerate_dagger_B(pp))
    return {
        "p": cfg.p, "N": cfg.N, "scanned": pp.q**3, "full": len(full),
        "mismatches": len(full ^ target), "failure_reasons": dict(reasons.most_common()),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--level", type=int, default=2)
    a = ap.parse_args(argv)
    res = run(Config(a.p, a.level))
    print(json.dumps(res, indent=2))
    return 0 if res["mismatches"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
