"""On-disk JSON cache of subgroup lattices, keyed by the group's element-table digest."""
from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

from .lattice import Lattice, SubgroupSet, check_closed, cover_relation, enumerate_subgroups
from .perm import PermGroup

FORMAT_VERSION = 1
ENV_VAR = "MAXCHAIN_CACHE_DIR"


class CacheError(RuntimeError):
    pass


class VersionMismatch(CacheError):
    pass


class HashMismatch(CacheError):
    pass


class CorruptCache(CacheError):
    pass


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    root = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(root) / "maxchain"


@dataclass
class CacheEntry:
    group_hash: str
    lattice: dict
    version: int = FORMAT_VERSION
    timing: float = 0.0

    def to_json(self) -> dict:
        return {"format": self.version, "group_hash": self.group_hash,
                "timing": self.timing, "lattice": self.lattice}

    @classmethod
    def from_json(cls, data: dict) -> "CacheEntry":
        try:
            return cls(data["group_hash"], data["lattice"], data["format"], data.get("timing", 0.0))
        except (KeyError, TypeError) as e:
            raise CorruptCache(f"cache entry missing field {e}") from None


def serialize(L: Lattice) -> dict:
    """Deterministic payload: node bitsets as hex, generator ordinals, cover edges."""
    return {
        "order": L.ambient.order,
        "nodes": [format(h.bits, "x") for h in L.nodes],
        "gens": [list(map(int, g)) for g in L.gens],
        "edges": [[i, j] for i, j in L.edges],
        "classes": L.classes,
    }


def make_entry(L: Lattice, timing: float = 0.0) -> CacheEntry:
    return CacheEntry(L.ambient.digest, serialize(L), FORMAT_VERSION, timing)


def cache_roundtrip(entry: CacheEntry, G: PermGroup) -> Lattice:
    """Rebuild and validate a lattice from ``entry`` for the group ``G``."""
    if entry.version != FORMAT_VERSION:
        raise VersionMismatch(f"cache format {entry.version}, expected {FORMAT_VERSION}")
    if entry.group_hash != G.digest:
        raise HashMismatch("cache entry belongs to a different group")
    data = entry.lattice
    n = G.order
    try:
        if data["order"] != n:
            raise CorruptCache("stored group order differs")
        nodes = []
        for text in data["nodes"]:
            bits = int(text, 16)
            if bits >> n:
                raise CorruptCache("node bitset has bits beyond the group order")
            nodes.append(SubgroupSet(bits, bits.bit_count()))
        gens = [[int(x) for x in g] for g in data["gens"]]
        edges = [(int(i), int(j)) for i, j in data["edges"]]
        classes = [[int(x) for x in c] for c in data["classes"]]
    except (KeyError, TypeError, ValueError) as e:
        raise CorruptCache(f"malformed lattice payload: {e}") from None
    if len(gens) != len(nodes) or not nodes:
        raise CorruptCache("node and generator lists disagree")
    if len({h.bits for h in nodes}) != len(nodes):
        raise CorruptCache("duplicate nodes")
    if nodes[0].order != 1 or nodes[-1].order != n:
        raise CorruptCache("lattice must run from the trivial subgroup to the whole group")
    for h, g in zip(nodes, gens):
        mem = h.members(n)
        if n % h.order or not check_closed(G, mem):
            raise CorruptCache("a stored node is not a subgroup")
        if len(G.closure(g)) != h.order or not all(h.bits >> x & 1 for x in g):
            raise CorruptCache("stored generators do not generate their node")
    keys = [(h.order, tuple(h.members(n).tolist())) for h in nodes]
    if keys != sorted(keys):
        raise CorruptCache("nodes are not in canonical order")
    hasse_up = cover_relation(nodes, n)
    if sorted(edges) != [(i, j) for i, ups in enumerate(hasse_up) for j in sorted(ups)]:
        raise CorruptCache("stored Hasse edges are not the cover relation")
    if sorted(x for c in classes for x in c) != list(range(len(nodes))):
        raise CorruptCache("conjugacy classes do not partition the nodes")
    return Lattice(G, nodes, gens, hasse_up, classes=classes)


def entry_path(G: PermGroup, directory: Path | None = None) -> Path:
    d = cache_dir() if directory is None else Path(directory)
    return d / f"{G.digest[:32]}-v{FORMAT_VERSION}.json"


def store(L: Lattice, timing: float = 0.0, directory: Path | None = None) -> Path:
    path = entry_path(L.ambient, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(make_entry(L, timing).to_json(), sort_keys=True))
    os.replace(tmp, path)
    return path


def load(G: PermGroup, directory: Path | None = None) -> Lattice | None:
    """Cached lattice for ``G``, or None on a miss.  Corruption raises."""
    path = entry_path(G, directory)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise CorruptCache(f"{path}: unreadable cache file ({e})") from None
    return cache_roundtrip(CacheEntry.from_json(data), G)


def lattice_for(G: PermGroup, use_cache: bool = True, directory: Path | None = None,
                progress=None) -> Lattice:
    if use_cache:
        hit = load(G, directory)
        if hit is not None:
            return hit
    t0 = time.perf_counter()
    L = enumerate_subgroups(G, progress=progress)
    if use_cache:
        store(L, time.perf_counter() - t0, directory)
    return L
