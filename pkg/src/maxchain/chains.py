"""Maximal-chain length sets over the subgroup lattice, and the delta count.

A maximal chain from H to K is a sequence of Hasse covers
H = H0 < H1 < ... < Hr = K; its length is r.  Length sets are held as
integer bitmasks (bit r set iff some chain has length r).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .lattice import Lattice, LatticeError, SubgroupSet
from .perm import CapExceeded

DEFAULT_CHAIN_CAP = 1_000_000


def _mask_to_set(mask: int) -> set[int]:
    out, r = set(), 0
    while mask:
        if mask & 1:
            out.add(r)
        mask >>= 1
        r += 1
    return out


@dataclass
class ChainReport:
    subject: int
    target: int
    lengths: set[int]
    witness_short: list[int]
    witness_long: list[int]

    @property
    def graded(self) -> bool:
        return len(self.lengths) == 1

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "target": self.target,
            "lengths": sorted(self.lengths),
            "graded": self.graded,
            "witness_short": self.witness_short,
            "witness_long": self.witness_long,
        }


@dataclass
class DeltaReport:
    value: int
    offenders: list[int] = field(default_factory=list)

    def to_json(self, L: Lattice | None = None) -> dict:
        out = {"value": self.value, "offenders": self.offenders}
        if L is not None:
            out["offender_orders"] = [L.order(i) for i in self.offenders]
        return out


class ChainTable:
    """Length masks from every node up to a fixed target node, by DP over covers."""

    def __init__(self, L: Lattice, target: int | None = None):
        self.L = L
        self.target = L.top if target is None else L.node(target)

    @cached_property
    def masks(self) -> dict[int, int]:
        """Node -> bitmask of chain lengths to the target, for every node below it."""
        L, t = self.L, self.target
        tb = L.nodes[t]
        inside = [i for i in range(len(L)) if L.nodes[i] <= tb]
        out: dict[int, int] = {}
        # larger subgroups first; every cover strictly increases the order
        for i in sorted(inside, key=lambda i: -L.nodes[i].order):
            if i == t:
                out[i] = 1
                continue
            m = 0
            for j in L.hasse_up[i]:
                mj = out.get(j)
                if mj is not None:
                    m |= mj
            out[i] = m << 1
        return out

    def mask(self, i: int) -> int:
        try:
            return self.masks[i]
        except KeyError:
            raise LatticeError(f"node {i} is not below node {self.target}") from None

    def lengths(self, i: int) -> set[int]:
        return _mask_to_set(self.mask(i))

    def graded(self, i: int) -> bool:
        m = self.mask(i)
        return m & (m - 1) == 0

    def witness(self, i: int, length: int) -> list[int]:
        """Chain of the given length, taking the least-ordinal admissible cover each step."""
        masks = self.masks
        if not masks[i] >> length & 1:
            raise ValueError(f"no chain of length {length} from node {i}")
        chain = [i]
        x, need = i, length
        while need:
            need -= 1
            x = min(j for j in self.L.hasse_up[x] if masks.get(j, 0) >> need & 1)
            chain.append(x)
        return chain

    def report(self, i: int) -> ChainReport:
        lengths = self.lengths(i)
        return ChainReport(i, self.target, lengths, self.witness(i, min(lengths)),
                           self.witness(i, max(lengths)))


def chain_length_set(L: Lattice, H: SubgroupSet | int, target: int | None = None) -> ChainReport:
    """Lengths of all maximal chains from ``H`` up to the whole group (or ``target``)."""
    i = L.node(H)
    return ChainTable(L, target).report(i)


def enumerate_chains(L: Lattice, H: SubgroupSet | int, cap: int = DEFAULT_CHAIN_CAP,
                     target: int | None = None) -> list[list[int]]:
    """Every maximal chain from ``H`` to the top (or ``target``), depth first.

    Uses only the cover lists and containment, no length bookkeeping.
    """
    start = L.node(H)
    t = L.top if target is None else L.node(target)
    if not L.contains(start, t):
        raise LatticeError(f"node {start} is not below node {t}")
    tb = L.nodes[t]
    chains: list[list[int]] = []
    stack = [[start]]
    while stack:
        path = stack.pop()
        x = path[-1]
        if x == t:
            chains.append(path)
            if len(chains) > cap:
                raise CapExceeded(f"more than {cap} maximal chains", cap)
            continue
        for y in sorted(L.hasse_up[x], reverse=True):
            if L.nodes[y] <= tb:
                stack.append(path + [y])
    return chains


def delta(L: Lattice) -> DeltaReport:
    """Number of subgroups whose maximal chains to the whole group differ in length."""
    table = ChainTable(L)
    offenders = [i for i in range(len(L)) if not table.graded(i)]
    return DeltaReport(len(offenders), offenders)
