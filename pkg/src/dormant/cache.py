"""On-disk caches: a binary table of dagger-C triples and a JSON-lines result catalog.

Both are optimisations only. A damaged file is detected and rebuilt.
"""
from __future__ import annotations

import hashlib
import json
import os
import struct
import tempfile
import time
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .arith import PrimeLevel

FORMAT_VERSION = 1
_MAGIC = b"DRMT"
_HEADER = struct.Struct("<4sBIIQ")
ENV_VAR = "DORMANT_CACHE_DIR"


def cache_dir_from_env() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def triples_path(cache_dir: Path, pp: PrimeLevel) -> Path:
    return cache_dir / f"dagger_C_p{pp.p}_N{pp.N}.v{FORMAT_VERSION}.bin"


def encode_triples(pp: PrimeLevel, triples: Sequence[Sequence[int]]) -> bytes:
    body = np.asarray(triples, dtype="<u4").reshape(-1, 3).tobytes()
    return _HEADER.pack(_MAGIC, FORMAT_VERSION, pp.p, pp.N, len(triples)) + body


def decode_triples(pp: PrimeLevel, data: bytes) -> list[tuple[int, int, int]] | None:
    """None when the header or length does not match."""
    if len(data) < _HEADER.size:
        return None
    magic, version, p, N, n = _HEADER.unpack_from(data)
    if magic != _MAGIC or version != FORMAT_VERSION or (p, N) != (pp.p, pp.N):
        return None
    body = data[_HEADER.size:]
    if len(body) != 12 * n:
        return None
    arr = np.frombuffer(body, dtype="<u4").reshape(n, 3)
    return [tuple(int(x) for x in row) for row in arr]  # type: ignore[misc]


def load_or_build_triples(pp: PrimeLevel, cache_dir: Path, build: Callable[[], list]) -> list:
    from .triples import ExponentTriple

    path = triples_path(cache_dir, pp)
    if path.exists():
        decoded = decode_triples(pp, path.read_bytes())
        if decoded is not None:
            return [ExponentTriple(*t) for t in decoded]
    triples = build()
    _atomic_write(path, encode_triples(pp, triples))
    return triples


def triples_to_json(triples: Sequence[Sequence[int]]) -> str:
    return json.dumps([list(t) for t in triples])


# catalog

def catalog_path(cache_dir: Path) -> Path:
    return cache_dir / "catalog.jsonl"


def _checksum(key: dict, value: dict) -> str:
    blob = json.dumps({"key": key, "value": value}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def make_key(p: int, N: int, g: int, r: int, radii: Sequence[int] | None) -> dict:
    return {"p": p, "N": N, "g": g, "r": r, "radii": None if radii is None else list(radii)}


def append_entry(cache_dir: Path, key: dict, count: int, method: str = "edgecount") -> dict:
    value = {"count": int(count), "method": method, "timestamp": round(time.time(), 3), "version": __version__}
    line = json.dumps({"key": key, "value": value, "checksum": _checksum(key, value)}, sort_keys=True)
    path = catalog_path(cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(line + "\n")
    return value


def _parse_line(line: str) -> tuple[dict | None, bool]:
    """(entry, intact). A line with a readable key but a bad checksum gives (entry, False)."""
    try:
        obj = json.loads(line)
        key, value, checksum = obj["key"], obj["value"], obj["checksum"]
    except (ValueError, KeyError, TypeError):
        return None, False
    return {"key": key, "value": value}, checksum == _checksum(key, value)


def recompute(key: dict) -> int:
    from .edgecount import count
    from .semigraph import standard_graph

    pp = PrimeLevel(int(key["p"]), int(key["N"]))
    return count(standard_graph(int(key["g"]), int(key["r"])), pp, radii=key["radii"]).count


def load_catalog(cache_dir: Path) -> tuple[list[dict], bool]:
    """Entries and whether the file had to be rebuilt."""
    path = catalog_path(cache_dir)
    if not path.exists():
        return [], False
    entries, damaged = [], False
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        entry, intact = _parse_line(line)
        damaged |= not intact
        if entry is not None and intact:
            entries.append(entry)
    if damaged:
        entries = rebuild_catalog(cache_dir)
        return entries, True
    return entries, False


def rebuild_catalog(cache_dir: Path) -> list[dict]:
    """Recompute every entry whose key can still be read and rewrite the file."""
    path = catalog_path(cache_dir)
    keys: list[dict] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        entry, _ = _parse_line(line)
        if entry is None:
            continue
        key = entry["key"]
        try:
            k = make_key(int(key["p"]), int(key["N"]), int(key["g"]), int(key["r"]), key["radii"])
        except (KeyError, TypeError, ValueError):
            continue
        if k not in keys:
            keys.append(k)
    _atomic_write(path, b"")
    out = []
    for k in keys:
        try:
            value = append_entry(cache_dir, k, recompute(k), "edgecount")
        except Exception:  # an unreadable key is dropped, not fatal
            continue
        out.append({"key": k, "value": value})
    return out
