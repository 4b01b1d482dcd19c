import json

import pytest

from maxchain import cache
from maxchain.lattice import enumerate_subgroups
from maxchain.speclang import build


@pytest.fixture
def a5_entry(tmp_path):
    G = build("A(5)")
    L = enumerate_subgroups(G)
    path = cache.store(L, directory=tmp_path)
    return G, L, path


def test_roundtrip(a5_entry, tmp_path):
    G, L, _ = a5_entry
    back = cache.load(G, tmp_path)
    assert len(back) == 59
    assert [h.bits for h in back.nodes] == [h.bits for h in L.nodes]
    assert back.edges == L.edges and back.classes == L.classes


def test_miss_returns_none(tmp_path):
    assert cache.load(build("S(3)"), tmp_path) is None


def test_version_mismatch(a5_entry, tmp_path):
    G, _, path = a5_entry
    data = json.loads(path.read_text())
    data["format"] = 99
    path.write_text(json.dumps(data))
    with pytest.raises(cache.VersionMismatch):
        cache.load(G, tmp_path)


def test_hash_mismatch(a5_entry):
    G, L, _ = a5_entry
    with pytest.raises(cache.HashMismatch):
        cache.cache_roundtrip(cache.make_entry(L), build("S(5)"))


def test_flipped_byte_is_corruption(a5_entry, tmp_path):
    G, _, path = a5_entry
    data = json.loads(path.read_text())
    node = data["lattice"]["nodes"][20]
    flipped = node[:-1] + format(int(node[-1], 16) ^ 1, "x")
    data["lattice"]["nodes"][20] = flipped
    path.write_text(json.dumps(data))
    with pytest.raises(cache.CorruptCache):
        cache.load(G, tmp_path)


@pytest.mark.parametrize("mutate", [
    lambda d: d["lattice"].pop("edges"),
    lambda d: d["lattice"]["edges"].pop(),
    lambda d: d["lattice"]["nodes"].reverse(),
    lambda d: d["lattice"]["classes"].pop(),
    lambda d: d["lattice"]["gens"][5].clear(),
])
def test_structural_corruption(a5_entry, tmp_path, mutate):
    G, _, path = a5_entry
    data = json.loads(path.read_text())
    mutate(data)
    path.write_text(json.dumps(data))
    with pytest.raises(cache.CorruptCache):
        cache.load(G, tmp_path)


def test_truncated_file(a5_entry, tmp_path):
    G, _, path = a5_entry
    path.write_text(path.read_text()[:200])
    with pytest.raises(cache.CorruptCache):
        cache.load(G, tmp_path)


def test_deterministic_serialisation():
    a = cache.serialize(enumerate_subgroups(build("GL2(3)")))
    b = cache.serialize(enumerate_subgroups(build("GL2(3)")))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_lattice_for_writes_then_reads(tmp_path):
    G = build("S(4)")
    L1 = cache.lattice_for(G, directory=tmp_path)
    assert cache.entry_path(G, tmp_path).exists()
    L2 = cache.lattice_for(G, directory=tmp_path)
    assert L1.edges == L2.edges


def test_env_var(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "x"))
    assert cache.cache_dir() == tmp_path / "x"
