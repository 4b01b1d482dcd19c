"""Subgroup lattices of tabulated permutation groups.

Subgroups are bitsets over element ordinals (Python ints).  Enumeration
seeds all cyclic subgroups and then closes under joins with cyclic
subgroups, one representative per conjugacy class; each newly found subgroup
brings its whole conjugacy class with it.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .perm import CapExceeded, PermGroup

log = logging.getLogger(__name__)


class LatticeError(ValueError):
    pass


def bits_of(members: np.ndarray | Sequence[int], n: int) -> int:
    mask = np.zeros(n, dtype=bool)
    mask[np.asarray(members, dtype=np.int64)] = True
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def members_of(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.nonzero(np.unpackbits(raw, bitorder="little")[:n])[0]


@dataclass(frozen=True)
class SubgroupSet:
    bits: int
    order: int

    @classmethod
    def from_members(cls, members, n: int) -> "SubgroupSet":
        members = np.asarray(members, dtype=np.int64)
        return cls(bits_of(members, n), len(np.unique(members)))

    def members(self, n: int) -> np.ndarray:
        return members_of(self.bits, n)

    def __contains__(self, ordinal: int) -> bool:
        return bool(self.bits >> int(ordinal) & 1)

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.bits & other.bits == self.bits

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self.bits != other.bits and self <= other

    def __and__(self, other: "SubgroupSet") -> "SubgroupSet":
        b = self.bits & other.bits
        return SubgroupSet(b, b.bit_count())


def check_closed(G: PermGroup, members: np.ndarray) -> bool:
    """Every pairwise product and every inverse lands back in ``members``."""
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    if not mask[G.identity]:
        return False
    prods = G.mult[np.ix_(members, members)]
    return bool(mask[prods].all() and mask[G.inv[members]].all())


class Lattice:
    """All subgroups of ``ambient`` with their cover (Hasse) relation.

    ``nodes`` is sorted by (order, member ordinals); node 0 is the trivial
    subgroup and the last node the whole group.  ``hasse_up[i]`` lists the
    nodes covering node i, ``hasse_down[i]`` the nodes it covers.
    """

    def __init__(self, ambient: PermGroup, nodes: list[SubgroupSet], gens: list[list[int]],
                 hasse_up: list[list[int]], classes: list[list[int]] | None = None):
        self.ambient = ambient
        self.nodes = nodes
        self.gens = gens
        self.hasse_up = hasse_up
        self.hasse_down: list[list[int]] = [[] for _ in nodes]
        for i, ups in enumerate(hasse_up):
            for j in ups:
                self.hasse_down[j].append(i)
        self.index = {h.bits: i for i, h in enumerate(nodes)}
        self._classes = classes

    def __len__(self):
        return len(self.nodes)

    def __repr__(self):
        return f"Lattice({self.ambient.label or '?'}: {len(self.nodes)} subgroups)"

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def node(self, H: SubgroupSet | int) -> int:
        """Ordinal of a subgroup given as SubgroupSet, bitset or ordinal."""
        if isinstance(H, SubgroupSet):
            key = H.bits
        else:
            return self._check_ordinal(H)
        try:
            return self.index[key]
        except KeyError:
            raise LatticeError("not a subgroup node of this lattice") from None

    def _check_ordinal(self, i) -> int:
        i = int(i)
        if not 0 <= i < len(self.nodes):
            raise LatticeError(f"node ordinal {i} out of range")
        return i

    def members(self, i: int) -> np.ndarray:
        return self.nodes[i].members(self.ambient.order)

    def order(self, i: int) -> int:
        return self.nodes[i].order

    def contains(self, i: int, j: int) -> bool:
        """Is node i a subgroup of node j?"""
        return self.nodes[i] <= self.nodes[j]

    def by_order(self, k: int) -> list[int]:
        return [i for i, h in enumerate(self.nodes) if h.order == k]

    def lookup_members(self, members) -> int:
        return self.node(SubgroupSet.from_members(members, self.ambient.order))

    def smallest_containing(self, ordinals: Sequence[int]) -> int:
        return self.lookup_members(self.ambient.closure(ordinals))

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, ups in enumerate(self.hasse_up) for j in sorted(ups)]

    # -- conjugation ---------------------------------------------------

    def conjugate(self, i: int, g: int) -> int:
        """Node g^-1 H g."""
        G = self.ambient
        return self.lookup_members(G.conj(g)[self.members(i)])

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes of subgroups as sorted node lists."""
        if self._classes is not None:
            return sorted(sorted(c) for c in self._classes)
        seen = [False] * len(self.nodes)
        out = []
        gens = self.ambient.gen_ordinals
        for i in range(len(self.nodes)):
            if seen[i]:
                continue
            orbit = {i}
            frontier = [i]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = self.conjugate(x, g)
                        if y not in orbit:
                            orbit.add(y)
                            nxt.append(y)
                frontier = nxt
            for x in orbit:
                seen[x] = True
            out.append(sorted(orbit))
        return out

    @cached_property
    def class_of(self) -> list[int]:
        out = [0] * len(self.nodes)
        for k, cls in enumerate(self.classes):
            for i in cls:
                out[i] = k
        return out

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, h in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{i}: |{h.order}|"];')
        for i, j in self.edges:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- enumeration ---------------------------------------------------------

def _sort_key(members: np.ndarray):
    return (len(members), tuple(members.tolist()))


def cover_relation(nodes: Sequence[SubgroupSet], n: int) -> list[list[int]]:
    """Transitive reduction of containment between ``nodes`` (any order)."""
    N = len(nodes)
    if N == 0:
        return []
    B = np.zeros((N, n), dtype=np.float32)
    for i, h in enumerate(nodes):
        B[i, members_of(h.bits, n)] = 1.0
    orders = np.array([h.order for h in nodes], dtype=np.float32)
    overlap = B @ B.T
    below = overlap == orders[:, None]  # below[i, j]: node i inside node j
    np.fill_diagonal(below, False)
    S = below.astype(np.float32)
    between = S @ S
    cover = below & (between == 0)
    return [np.nonzero(cover[i])[0].tolist() for i in range(N)]


def enumerate_subgroups(G: PermGroup, progress: Callable[[str], None] | None = None,
                        node_cap: int = 200_000, use_classes: bool = True) -> Lattice:
    """Every subgroup of ``G`` exactly once, with the Hasse diagram.

    Every subgroup is a join of cyclic subgroups, so joining each found
    subgroup with each cyclic one reaches them all.  With ``use_classes``
    only one subgroup per conjugacy class is extended; conjugates come for
    free.  ``use_classes=False`` extends every subgroup (slower, used as a
    cross-check).
    """
    t0 = time.perf_counter()
    n = G.order
    say = progress or (lambda msg: log.debug(msg))
    ggens = G.gen_ordinals
    conj_maps = [G.conj(g) for g in ggens]

    # cyclic seeds
    cyclic: dict[int, int] = {}
    for x in range(n):
        mem = [G.identity]
        y = x
        while y != G.identity:
            mem.append(y)
            y = int(G.mult[y, x])
        b = bits_of(mem, n)
        if b not in cyclic:
            cyclic[b] = x
    cyc_items = sorted(cyclic.items(), key=lambda kv: kv[0].bit_count())
    say(f"{G.label}: {len(cyc_items)} cyclic subgroups")

    found: dict[int, tuple[np.ndarray, list[int]]] = {}
    class_list: list[list[int]] = []

    def add_class(members: np.ndarray, gens: list[int]) -> bool:
        b = bits_of(members, n)
        if b in found:
            return False
        orbit = [b]
        found[b] = (members, gens)
        if not use_classes:
            queue.append(b)
            if len(found) > node_cap:
                raise CapExceeded(f"more than {node_cap} subgroups", node_cap)
            return True
        frontier = [(members, gens)]
        while frontier:
            nxt = []
            for mem, gs in frontier:
                for c in conj_maps:
                    m2 = np.sort(c[mem])
                    b2 = bits_of(m2, n)
                    if b2 not in found:
                        g2 = [int(c[g]) for g in gs]
                        found[b2] = (m2, g2)
                        orbit.append(b2)
                        nxt.append((m2, g2))
            frontier = nxt
        class_list.append(orbit)
        queue.append(b)
        if len(found) > node_cap:
            raise CapExceeded(f"more than {node_cap} subgroups", node_cap)
        return True

    queue: list[int] = []
    add_class(np.array([G.identity]), [])
    for b, x in cyc_items:
        add_class(members_of(b, n), [x])

    head = 0
    while head < len(queue):
        hb = queue[head]
        head += 1
        hmem, hgens = found[hb]
        if len(hmem) == n:
            continue
        mask = np.zeros(n, dtype=bool)
        mask[hmem] = True
        for cb, c in cyc_items:
            if cb & hb == cb:
                continue
            gens = hgens + [c]
            add_class(G.closure(gens, start=mask), gens)
        if head % 50 == 0:
            say(f"{G.label}: processed {head}/{len(queue)} class representatives, "
                f"{len(found)} subgroups so far")

    items = sorted(found.items(), key=lambda kv: _sort_key(kv[1][0]))
    nodes = [SubgroupSet(b, len(m)) for b, (m, _) in items]
    gens = [g for _, (_, g) in items]
    pos = {b: i for i, (b, _) in enumerate(items)}
    classes = [[pos[b] for b in orbit] for orbit in class_list] if use_classes else None
    say(f"{G.label}: {len(nodes)} subgroups; computing covers")
    hasse_up = cover_relation(nodes, n)
    say(f"{G.label}: lattice done in {time.perf_counter() - t0:.2f}s")
    return Lattice(G, nodes, gens, hasse_up, classes=classes)


# -- queries -------------------------------------------------------------

@dataclass(frozen=True)
class LatticeLayers:
    minimal: list[int]
    maximal: list[int]
    second_maximal: list[int]
    second_maximal_universal: list[int]


def atoms_coatoms(L: Lattice) -> LatticeLayers:
    """Minimal subgroups, maximal subgroups and second-maximal subgroups.

    ``second_maximal`` holds the nodes maximal in at least one maximal
    subgroup; ``second_maximal_universal`` those that are maximal in every
    maximal subgroup containing them (and are not themselves maximal).
    """
    if len(L) == 1:
        return LatticeLayers([], [], [], [])
    minimal = sorted(L.hasse_up[L.bottom]) if L.top not in L.hasse_up[L.bottom] else []
    maximal = sorted(L.hasse_down[L.top])
    maxset = set(maximal)
    second = sorted({i for m in maximal for i in L.hasse_down[m]})
    universal = []
    for i in second:
        if i in maxset:
            continue
        containing = [m for m in maximal if L.contains(i, m)]
        if all(m in L.hasse_up[i] for m in containing):
            universal.append(i)
    return LatticeLayers(minimal, maximal, second, universal)


@dataclass(frozen=True)
class SubgroupInfo:
    normalizer: int
    centralizer: int
    is_normal: bool
    orbit: list[int]


def subgroup_query(L: Lattice, H: SubgroupSet | int) -> SubgroupInfo:
    G = L.ambient
    i = L.node(H)
    mem = L.members(i)
    mask = np.zeros(G.order, dtype=bool)
    mask[mem] = True
    hgens = L.gens[i] or [G.identity]
    # normalizer: g with g^-1 h g in H for the generators h of H
    hg = np.asarray(hgens)
    # conj_gens[g, k] = g^-1 h_k g
    conj_gens = G.mult[G.inv[:, None], G.mult[hg].T]
    norm = np.nonzero(mask[conj_gens].all(axis=1))[0]
    cent = np.nonzero((conj_gens == np.asarray(hgens)[None, :]).all(axis=1))[0]
    ni = L.lookup_members(norm)
    ci = L.lookup_members(cent)
    orbit = [c for c in L.classes[L.class_of[i]]]
    return SubgroupInfo(ni, ci, ni == L.top, sorted(orbit))


def bounds(L: Lattice, A: SubgroupSet | int, B: SubgroupSet | int) -> tuple[int, int]:
    """(meet, join) node ordinals."""
    a, b = L.node(A), L.node(B)
    meet = L.node(L.nodes[a] & L.nodes[b])
    join = L.smallest_containing(L.gens[a] + L.gens[b])
    return meet, join
