"""Verification suites. Each returns a list of check records.

A record is ``{name, params, expected, actual, pass}`` with JSON-safe values.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .arith import PrimeLevel
from .cache import load_catalog, recompute
from .edgecount import count, diff_op_count, independence_check
from .ehrhart import dagger_C_via_lattice, edge_count_via_lattice, verify_quasipolynomial
from .fusion import (
    build_fusion_ring,
    character_sum,
    characters,
    degree_table,
    tqft_checks,
    verlinde_N1,
)
from .hypergeom import scan_full_root_functions
from .semigraph import standard_graph
from .triples import (
    bc_map,
    brute_force_dagger_B,
    dagger_B_count_formula,
    dagger_C_count_formula,
    enumerate_dagger_B,
    enumerate_dagger_C,
)

Check = dict


def check(name: str, params: dict, expected, actual, ok: bool | None = None) -> Check:
    return {
        "name": name,
        "params": params,
        "expected": _jsonable(expected),
        "actual": _jsonable(actual),
        "pass": bool(expected == actual if ok is None else ok),
    }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _grid(p_list: Sequence[int], level_max: int, q_max: int) -> list[PrimeLevel]:
    return [PrimeLevel(p, N) for p in p_list for N in range(1, level_max + 1) if p**N <= q_max]


def suite_closedform(p_list: Sequence[int], level_max: int) -> list[Check]:
    out = []
    for pp in _grid(p_list, level_max, 343):
        params = {"p": pp.p, "N": pp.N}
        formula = dagger_C_count_formula(pp)
        out.append(check("dagger_C_cardinality", params, formula, len(enumerate_dagger_C(pp))))
        out.append(check("degree_0_3", params, formula, count(standard_graph(0, 3), pp).count))
        g2 = count(standard_graph(2, 0), pp).count
        out.append(check("degree_2_0", params, formula, g2))
        out.append(check("dagger_B_cardinality", params, dagger_B_count_formula(pp), len(enumerate_dagger_B(pp))))
        out.append(check("diff_op_count", params, pp.p ** (2 * pp.N) * formula, diff_op_count(2, pp)))
        if pp.N < level_max and pp.p ** (pp.N + 1) <= 343:
            up = count(standard_graph(2, 0), PrimeLevel(pp.p, pp.N + 1)).count
            out.append(
                check("verschiebung_ratio", params, Fraction(pp.p**3 + 2 * pp.p, 3), Fraction(up, g2))
            )
    return out


def suite_dagger_B(p_list: Sequence[int], level_max: int) -> list[Check]:
    out = []
    for pp in _grid(p_list, level_max, 27):
        params = {"p": pp.p, "N": pp.N}
        image = enumerate_dagger_B(pp)
        out.append(check("delta_image_equals_brute_force", params, len(image), len(brute_force_dagger_B(pp)),
                         image == brute_force_dagger_B(pp)))
        fibres: dict = {}
        for t in image:
            fibres.setdefault(bc_map(t, pp), 0)
            fibres[bc_map(t, pp)] += 1
        out.append(check("bc_map_fibres_of_size_8", params, [8], sorted(set(fibres.values()))))
    return out


def suite_hypergeom(p_list: Sequence[int], level_max: int) -> list[Check]:
    out = []
    for pp in _grid(p_list, level_max, 125):
        flagged = set(scan_full_root_functions(pp))
        target = {tuple(t) for t in enumerate_dagger_B(pp)}
        out.append(
            check(
                "full_root_functions_equals_dagger_B",
                {"p": pp.p, "N": pp.N, "scanned": pp.q**3},
                len(target),
                len(flagged),
                flagged == target,
            )
            | {"mismatches": [list(t) for t in sorted(flagged ^ target)][:20]}
        )
    return out


def suite_ehrhart(p_list: Sequence[int], level_max: int, fit: bool = True) -> list[Check]:
    out = []
    for pp in _grid(p_list, level_max, 125):
        params = {"p": pp.p, "N": pp.N}
        out.append(check("dagger_C_via_lattice", params, len(enumerate_dagger_C(pp)), dagger_C_via_lattice(pp)))
        for g, r in ((0, 3), (1, 1)):
            c = standard_graph(g, r)
            out.append(check("edge_count_via_lattice", params | {"g": g, "r": r}, count(c, pp).count,
                             edge_count_via_lattice(c, pp)))
    if fit:
        for N in range(1, min(level_max, 2) + 1):
            rep = verify_quasipolynomial(0, 3, [3, 5, 7, 11, 13], N, reference=dagger_C_count_formula)
            out.append(check("quasi_polynomial_0_3", {"N": N, "period": rep["period"]},
                             {"degree": 3 * N}, {"degree": rep["degree"]}, rep["pass"]) | {"report": rep["primes"]})
    return out


def suite_tqft(p_list: Sequence[int], level_max: int) -> list[Check]:
    out = []
    for pp in _grid(p_list, level_max, 49):
        report = tqft_checks(build_fusion_ring(pp))
        for c in report.checks:
            out.append(check(c["name"], {"p": pp.p, "N": pp.N} | c["params"], True, c["pass"]))
    return out


def suite_characters(pairs: Sequence[tuple[int, int]], g_max: int = 4, r_max: int = 2) -> list[Check]:
    out = []
    for p, N in pairs:
        pp = PrimeLevel(p, N)
        ring = build_fusion_ring(pp)
        table = characters(ring)
        for g in range(g_max + 1):
            for r in range(r_max + 1):
                if 2 * g - 2 + r <= 0:
                    continue
                worst = 0.0
                for radii, exact in degree_table(pp, g, r).items():
                    worst = max(worst, abs(character_sum(ring, g, radii, table) - exact) / (1 + exact))
                out.append(check("character_formula", {"p": p, "N": N, "g": g, "r": r},
                                 "<= 1e-6", worst, worst <= 1e-6))
    return out


def suite_verlinde(p_list: Sequence[int], g_max: int = 4, r_max: int = 3) -> list[Check]:
    out = []
    for p in p_list:
        pp = PrimeLevel(p, 1)
        for g in range(g_max + 1):
            for r in range(r_max + 1):
                if 2 * g - 2 + r <= 0:
                    continue
                exact = count(standard_graph(g, r), pp).count
                approx = verlinde_N1(p, g, r)
                rel = abs(approx - exact) / max(1, exact)
                out.append(check("verlinde", {"p": p, "g": g, "r": r}, exact, approx, rel <= 1e-6))
    return out


def family_formulas_3_2(g: int, r: int) -> int:
    """Closed forms for (p,N) = (3,2), indexed by the type (g, r)."""
    if r == 0:
        return 2 ** (g - 1) + 3 ** (g - 1) + 6 ** (g - 1)
    if g == 0:
        return (1 + 2 * 4 ** (r - 1)) // 3
    return 3 ** (g - 1) + 6 ** (g - 1) * 4**r


def suite_families(g_max: int = 6, r_max: int = 6) -> list[Check]:
    pp = PrimeLevel(3, 2)
    out = []
    for g in range(g_max + 1):
        for r in range(r_max + 1):
            if 2 * g - 2 + r <= 0:
                continue
            out.append(check("family_3_2", {"g": g, "r": r}, family_formulas_3_2(g, r),
                             count(standard_graph(g, r), pp).count))
    return out


def suite_independence(pairs: Sequence[tuple[int, int]], types=((2, 0), (0, 4), (1, 2), (3, 0))) -> list[Check]:
    return [
        check("graph_independence", {"p": p, "N": N, "g": g, "r": r}, True, independence_check(g, r, PrimeLevel(p, N)))
        for p, N in pairs
        for g, r in types
    ]


def suite_catalog(cache_dir: Path | None) -> list[Check]:
    if cache_dir is None:
        return [check("catalog_present", {}, "cache directory", None, False)]
    entries, rebuilt = load_catalog(cache_dir)
    out = [check("catalog_intact", {"entries": len(entries)}, False, rebuilt, True)]
    for e in entries:
        out.append(check("catalog_entry", e["key"], e["value"]["count"], recompute(e["key"])))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "closedform": lambda p, n, d: suite_closedform(p, n),
    "daggerB": lambda p, n, d: suite_dagger_B(p, n),
    "hypergeom": lambda p, n, d: suite_hypergeom(p, n),
    "ehrhart": lambda p, n, d: suite_ehrhart(p, n),
    "tqft": lambda p, n, d: suite_tqft(p, n),
    "characters": lambda p, n, d: suite_characters([(x, N) for x in p for N in range(1, n + 1) if x**N <= 49]),
    "verlinde": lambda p, n, d: suite_verlinde(p),
    "families": lambda p, n, d: suite_families(),
    "independence": lambda p, n, d: suite_independence([(x, N) for x in p for N in range(1, n + 1) if x**N <= 49]),
    "catalog": lambda p, n, d: suite_catalog(d),
}


def run_suite(name: str, p_list: Sequence[int], level_max: int, cache_dir: Path | None = None) -> list[Check]:
    if name == "all":
        return [c for key in SUITES if key != "catalog" for c in SUITES[key](p_list, level_max, cache_dir)]
    return SUITES[name](p_list, level_max, cache_dir)
