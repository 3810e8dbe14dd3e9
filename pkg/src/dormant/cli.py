"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad input, 3 a
resource limit was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .arith import PrimeLevel, RadiusClass, enumerate_radii
from .cache import append_entry, cache_dir_from_env, make_key
from .edgecount import count, enumerate_numberings
from .errors import DomainError, NotInvertible, ParameterError, ResourceLimit, ValidationError
from .fusion import DEFAULT_SEED, DEFAULT_TOL, build_fusion_ring, casimir, character_sum, characters
from .hypergeom import HGOperator, report_record
from .semigraph import from_json, standard_graph
from .triples import DEFAULT_BUDGET

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    N: int | None = None
    genus: int | None = None
    marked: int | None = None
    radii: list[int] | None = None
    graph: Path | None = None
    fmt: str = "text"
    cache_dir: Path | None = None
    budget: int = DEFAULT_BUDGET
    tol: float = DEFAULT_TOL
    seed: int = DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    @property
    def pp(self) -> PrimeLevel:
        pp = PrimeLevel(self.p, self.N)  # type: ignore[arg-type]
        if pp.q > self.budget:
            raise ResourceLimit(f"p^N = {pp.q} exceeds the enumeration budget {self.budget}")
        return pp


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _check_radii(radii: Sequence[int], pp: PrimeLevel) -> list[RadiusClass]:
    return [RadiusClass.checked(x, pp) for x in radii]


def _emit_csv(rows: Sequence[Sequence], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_fusion(cfg: RunConfig) -> int:
    pp = cfg.pp
    ring = build_fusion_ring(pp, cfg.budget)
    lams = [r.lam for r in ring.basis]
    rows = [
        (lams[i], lams[j], lams[k], int(ring.constants[i, j, k]))
        for i in range(ring.dim)
        for j in range(ring.dim)
        for k in range(ring.dim)
        if ring.constants[i, j, k]
    ]
    table = characters(ring, cfg.tol, cfg.seed)
    chars = [
        [round(float(c), 9) for c in [cas] + list(vals)]
        for cas, vals in zip(table.casimir_values, table.values)
    ]
    if cfg.fmt == "json":
        print(json.dumps({
            "p": pp.p, "N": pp.N,
            "basis": [{"lambda": r.lam, "s": s} for r, s in zip(ring.basis, ring.svalues)],
            "constants": [list(r) for r in rows],
            "casimir": casimir(ring),
            "characters": [{"casimir": c[0], "values": c[1:]} for c in chars],
        }, indent=2))
    elif cfg.fmt == "csv":
        print(_emit_csv(rows, ["lambda_a", "lambda_b", "lambda_c", "N"]), end="")
        print()
        print(_emit_csv([[k] + c for k, c in enumerate(chars)], ["character", "casimir"] + [f"chi_{x}" for x in lams]), end="")
    else:
        print(f"fusion ring (p,N)=({pp.p},{pp.N}), basis lambda={lams}, s={list(ring.svalues)}")
        for r in rows:
            print(f"N[{r[0]},{r[1]},{r[2]}] = {r[3]}")
        print("characters (casimir; values on basis):")
        for c in chars:
            print(f"  {c[0]:g}; " + ", ".join(f"{x:g}" for x in c[1:]))
    return EXIT_OK


def cmd_degree(cfg: RunConfig) -> int:
    pp = cfg.pp
    g, r = cfg.genus, cfg.marked
    if g is None or r is None:
        raise ParameterError("--genus and --marked are required")
    if g < 0 or r < 0 or 2 * g - 2 + r <= 0:
        raise ParameterError(f"type (g,r)=({g},{r}) is not stable")
    ring = build_fusion_ring(pp, cfg.budget)
    table = characters(ring, cfg.tol, cfg.seed)
    graph = standard_graph(g, r)
    if cfg.extra.get("all_radii"):
        res = count(graph, pp, per_radius=True)
        per = res.per_radius or {}
        lams = [x.lam for x in enumerate_radii(pp)]
        from itertools import product

        rows = [[pp.p, pp.N, g, r, *key, per.get(key, 0)] for key in product(lams, repeat=r)]
        if cfg.fmt == "json":
            print(json.dumps({"p": pp.p, "N": pp.N, "g": g, "r": r, "total": res.count,
                              "per_radius": [{"radii": row[4:-1], "count": row[-1]} for row in rows]}, indent=2))
        elif cfg.fmt == "csv":
            print(_emit_csv(rows, ["p", "N", "g", "r", *[f"radius_{i + 1}" for i in range(r)], "count"]), end="")
        else:
            for row in rows:
                print(" ".join(map(str, row[4:])) if r else str(row[-1]))
            print(f"total: {res.count}")
        _record(cfg, pp, g, r, None, res.count)
        return EXIT_OK
    if cfg.radii is not None:
        if len(cfg.radii) != r:
            raise ParameterError(f"--radii has {len(cfg.radii)} entries but --marked is {r}")
        radii = _check_radii(cfg.radii, pp)
        exact = count(graph, pp, radii=radii).count
        approx = character_sum(ring, g, radii, table)
    else:
        exact = count(graph, pp).count
        # summing over radii replaces each chi(rho) by the sum of chi over the basis
        sums = table.values.sum(axis=1)
        approx = float((table.casimir_values ** (g - 1) * sums**r).sum())
    _record(cfg, pp, g, r, cfg.radii, exact)
    if cfg.fmt == "json":
        print(json.dumps({"p": pp.p, "N": pp.N, "g": g, "r": r, "radii": cfg.radii,
                          "degree": exact, "character_sum": approx}))
    elif cfg.fmt == "csv":
        print(_emit_csv([[pp.p, pp.N, g, r, *(cfg.radii or []), exact]],
                        ["p", "N", "g", "r", *[f"radius_{i + 1}" for i in range(len(cfg.radii or []))], "count"]), end="")
    else:
        print(f"degree: {exact}")
        print(f"character_sum: {approx:.6f}")
    return EXIT_OK


def _record(cfg: RunConfig, pp: PrimeLevel, g: int, r: int, radii, value: int) -> None:
    if cfg.cache_dir is not None and not cfg.extra.get("no_catalog"):
        append_entry(cfg.cache_dir, make_key(pp.p, pp.N, g, r, radii), value)


def cmd_enumerate(cfg: RunConfig) -> int:
    pp = cfg.pp
    if cfg.graph is None:
        raise ParameterError("a graph file is required")
    try:
        text = Path(cfg.graph).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParameterError(f"cannot read {cfg.graph}: {exc.strerror}") from None
    c = from_json(text)
    radii = None
    if cfg.radii is not None:
        if len(cfg.radii) != len(c.open_order):
            raise ParameterError(f"--radii has {len(cfg.radii)} entries but the graph has {len(c.open_order)} open edges")
        radii = _check_radii(cfg.radii, pp)
    res = count(c, pp, radii=radii, per_radius=bool(c.open_order))
    per = [{"radii": list(k), "count": v} for k, v in (res.per_radius or {}).items()]
    if cfg.extra.get("count_only"):
        out = {"count": res.count, "per_radius": per}
    else:
        numberings = enumerate_numberings(c, pp, radii)
        out = {"count": len(numberings), "per_radius": per,
               "numberings": [{str(e): v for e, v in n.as_dict().items()} for n in numberings]}
    if cfg.fmt == "json":
        print(json.dumps(out))
    else:
        print(f"count: {out['count']}")
        for row in per:
            print(f"  radii {row['radii']}: {row['count']}")
        for n in out.get("numberings", []):
            print("  " + " ".join(f"e{e}={v}" for e, v in n.items()))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    from .verify import SUITES, run_suite

    suite = cfg.extra["suite"]
    if suite not in SUITES and suite != "all":
        raise ParameterError(f"unknown suite {suite!r}; choose from {sorted(SUITES) + ['all']}")
    p_list = cfg.extra.get("p_list") or [3, 5]
    for p in p_list:
        PrimeLevel(p, 1)
    checks = run_suite(suite, p_list, cfg.extra.get("level_max") or 2, cfg.cache_dir)
    report = {"suite": suite, "checks": checks, "version": __version__}
    text = json.dumps(report, indent=2)
    if cfg.extra.get("output"):
        Path(cfg.extra["output"]).write_text(text + "\n", encoding="utf-8")
    if cfg.fmt == "text":
        failed = [c for c in checks if not c["pass"]]
        print(f"suite {suite}: {len(checks) - len(failed)}/{len(checks)} checks passed")
        for c in failed:
            print(f"FAIL {c['name']} {json.dumps(c['params'])} expected={c['expected']} actual={c['actual']}")
    else:
        print(text)
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAILED


def cmd_hypergeom(cfg: RunConfig) -> int:
    pp = cfg.pp
    abc = cfg.extra.get("abc")
    if not abc or len(abc) != 3:
        raise ParameterError("--abc needs three integers a,b,c")
    op = HGOperator(*abc, pp)
    rec = report_record(op)
    if cfg.fmt == "json":
        print(json.dumps(rec))
    else:
        print(f"full={'true' if rec['full'] else 'false'}")
        print(f"series0: {_series_text(rec['series0'], 0)}")
        print(f"series1: {_series_text(rec['series1'], rec['start_exponent1'])}")
        print(f"exponent_differences: {rec['exponent_differences']}")
        print(f"radii: {rec['radii']}")
        if rec["reason"]:
            print(f"reason: {rec['reason']}")
    return EXIT_OK


def _series_text(coeffs: list[int] | None, start: int | None) -> str:
    if coeffs is None:
        return "-"
    terms = []
    for n, c in enumerate(coeffs):
        if c:
            mono = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
    body = " + ".join(terms) or "0"
    return body if not start else f"x^({start}) * ({body})"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dormant", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", type=Path, default=None, help="defaults to $DORMANT_CACHE_DIR")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest p^N to enumerate")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    level = argparse.ArgumentParser(add_help=False)
    level.add_argument("--p", type=int, required=True)
    level.add_argument("--level", type=int, required=True)

    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("fusion", parents=[common, level], help="fusion table and characters")
    d = sub.add_parser("degree", parents=[common, level], help="degree for a type (g,r)")
    d.add_argument("--genus", type=int, required=True)
    d.add_argument("--marked", type=int, required=True)
    d.add_argument("--radii", type=_int_list, default=None, help="lambda representatives, comma separated")
    d.add_argument("--all-radii", action="store_true")
    d.add_argument("--no-catalog", action="store_true")
    e = sub.add_parser("enumerate", parents=[common, level], help="edge numberings of a graph file")
    e.add_argument("graph", type=Path)
    e.add_argument("--radii", type=_int_list, default=None)
    e.add_argument("--count-only", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--p-list", type=_int_list, default=None)
    v.add_argument("--level-max", type=int, default=2)
    v.add_argument("--output", type=Path, default=None)
    h = sub.add_parser("hypergeom", parents=[common, level], help="root functions of one operator")
    h.add_argument("--abc", type=_int_list, required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    extra = {}
    for key in ("all_radii", "no_catalog", "count_only", "suite", "p_list", "level_max", "output", "abc"):
        if hasattr(ns, key):
            extra[key] = getattr(ns, key)
    return RunConfig(
        command=ns.command,
        p=getattr(ns, "p", None),
        N=getattr(ns, "level", None),
        genus=getattr(ns, "genus", None),
        marked=getattr(ns, "marked", None),
        radii=getattr(ns, "radii", None),
        graph=getattr(ns, "graph", None),
        fmt=ns.fmt,
        cache_dir=ns.cache_dir or cache_dir_from_env(),
        budget=ns.budget,
        tol=ns.tol,
        seed=ns.seed,
        extra=extra,
    )


COMMANDS = {
    "fusion": cmd_fusion,
    "degree": cmd_degree,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "hypergeom": cmd_hypergeom,
}


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return COMMANDS[ns.command](config_from_args(ns))
    except (ParameterError, ValidationError, DomainError, NotInvertible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    raise SystemExit(main())
