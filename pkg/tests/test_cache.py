import json

from dormant.arith import PrimeLevel
from dormant.cache import (
    append_entry,
    catalog_path,
    decode_triples,
    encode_triples,
    load_catalog,
    make_key,
    triples_path,
)
from dormant.triples import enumerate_dagger_C

P32 = PrimeLevel(3, 2)


def test_encode_round_trip():
    triples = enumerate_dagger_C(P32)
    data = encode_triples(P32, triples)
    assert decode_triples(P32, data) == [tuple(t) for t in triples]
    assert decode_triples(PrimeLevel(5, 1), data) is None
    assert decode_triples(P32, data[:-4]) is None
    assert decode_triples(P32, b"XXXX" + data[4:]) is None


def test_enumeration_uses_and_repairs_cache(tmp_path):
    first = enumerate_dagger_C(P32, cache_dir=tmp_path)
    path = triples_path(tmp_path, P32)
    assert path.exists()
    assert enumerate_dagger_C(P32, cache_dir=tmp_path) == first
    path.write_bytes(b"garbage")
    assert enumerate_dagger_C(P32, cache_dir=tmp_path) == first
    assert decode_triples(P32, path.read_bytes()) is not None


def test_catalog_round_trip(tmp_path):
    key = make_key(3, 2, 2, 0, None)
    append_entry(tmp_path, key, 11)
    entries, rebuilt = load_catalog(tmp_path)
    assert not rebuilt and entries[0]["value"]["count"] == 11


def test_catalog_rebuilds_on_tamper(tmp_path):
    append_entry(tmp_path, make_key(3, 2, 2, 0, None), 11)
    append_entry(tmp_path, make_key(3, 2, 1, 1, [1]), 3)
    path = catalog_path(tmp_path)
    lines = path.read_text().splitlines()
    obj = json.loads(lines[0])
    obj["value"]["count"] = 12
    lines[0] = json.dumps(obj)
    path.write_text("\n".join(lines + ["{truncated"]) + "\n")
    entries, rebuilt = load_catalog(tmp_path)
    assert rebuilt
    assert sorted(e["value"]["count"] for e in entries) == [3, 11]
    assert load_catalog(tmp_path)[1] is False
