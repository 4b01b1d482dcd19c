"""Group predicates, distinguished subgroups, isomorphism fingerprints and
checks of the minimal-subgroup chain theorems on concrete groups."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .chains import ChainTable
from .constructors import quotient_group
from .lattice import Lattice, SubgroupSet, atoms_coatoms
from .perm import PermGroup, generate


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime_power(n: int) -> tuple[int, int] | None:
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p = ps[0]
    return p, round(math.log(n, p))


# -- series on subgroups given by generators --------------------------------

def _gens(G: PermGroup, members: np.ndarray) -> list[int]:
    return G.small_generating_set(members) if len(members) > 1 else []


def derived_series(G: PermGroup, gens: Sequence[int] | None = None) -> list[np.ndarray]:
    """H, H', H'', ... down to the first repeated term."""
    gens = list(G.gen_ordinals if gens is None else gens)
    cur = G.closure(gens)
    series = [cur]
    while len(cur) > 1:
        nxt = G.derived_subgroup(gens)
        if len(nxt) == len(cur):
            break
        series.append(nxt)
        cur, gens = nxt, _gens(G, nxt)
    return series


def lower_central_series(G: PermGroup, gens: Sequence[int] | None = None) -> list[np.ndarray]:
    gens = list(G.gen_ordinals if gens is None else gens)
    cur = G.closure(gens)
    series = [cur]
    cur_gens = gens
    while len(cur) > 1:
        comms = [G.commutator(x, h) for x in cur_gens for h in gens]
        nxt = G.normal_closure(comms, gens)
        if len(nxt) == len(cur):
            break
        series.append(nxt)
        cur, cur_gens = nxt, _gens(G, nxt)
    return series


def is_abelian(G: PermGroup, gens: Sequence[int] | None = None) -> bool:
    gens = list(G.gen_ordinals if gens is None else gens)
    return all(G.mult[a, b] == G.mult[b, a] for a in gens for b in gens)


def is_solvable(G: PermGroup, gens: Sequence[int] | None = None) -> bool:
    return len(derived_series(G, gens)[-1]) == 1


def is_nilpotent(G: PermGroup, gens: Sequence[int] | None = None) -> bool:
    return len(lower_central_series(G, gens)[-1]) == 1


def normal_prime_subgroup(G: PermGroup) -> np.ndarray | None:
    """Some normal subgroup of prime order, or None."""
    orders = G.orders
    conj = [G.conj(g) for g in G.gen_ordinals]
    for x in range(G.order):
        k = int(orders[x])
        if k < 2 or len(prime_factors(k)) != 1 or prime_factors(k)[0] != k:
            continue
        cyc = G.closure([x])
        mask = np.zeros(G.order, dtype=bool)
        mask[cyc] = True
        if all(mask[c[x]] for c in conj):
            return cyc
    return None


def is_supersolvable(G: PermGroup) -> bool:
    """Trivial, or some normal subgroup N of prime order has G/N supersolvable.

    Quotients of supersolvable groups are supersolvable, so the first normal
    prime-order subgroup found decides the matter; no backtracking needed.
    """
    while G.order > 1:
        N = normal_prime_subgroup(G)
        if N is None:
            return False
        G = quotient_group(G, N)
    return True


def subgroup_as_group(G: PermGroup, gens: Sequence[int], label: str = "") -> PermGroup:
    return generate(G.degree, [G.elements[g] for g in gens], cap=max(G.order, 1), label=label)


@dataclass(frozen=True)
class Predicates:
    abelian: bool
    nilpotent: bool
    supersolvable: bool
    solvable: bool


def predicate_suite(G: PermGroup, L: Lattice | None = None) -> Predicates:
    return Predicates(
        abelian=is_abelian(G),
        nilpotent=is_nilpotent(G),
        supersolvable=is_supersolvable(G),
        solvable=is_solvable(G),
    )


def supersolvable_oracle(G: PermGroup, L: Lattice) -> tuple[bool, bool]:
    """(identity interval graded, every maximal subgroup has prime index)."""
    iwasawa = ChainTable(L).graded(L.bottom)
    layers = atoms_coatoms(L)
    prime_index = all(len(prime_factors(G.order // L.order(m))) == 1
                      and prime_factors(G.order // L.order(m))[0] == G.order // L.order(m)
                      for m in layers.maximal)
    return iwasawa, prime_index


# -- distinguished subgroups -------------------------------------------------

def is_normal(L: Lattice, i: int) -> bool:
    G = L.ambient
    mem = L.members(i)
    mask = np.zeros(G.order, dtype=bool)
    mask[mem] = True
    return all(mask[G.conj(g)[mem]].all() for g in G.gen_ordinals)


def normal_nodes(L: Lattice) -> list[int]:
    return [i for i in range(len(L)) if is_normal(L, i)]


def node_is_nilpotent(L: Lattice, i: int) -> bool:
    return is_nilpotent(L.ambient, L.gens[i]) if L.gens[i] else True


def center(L: Lattice) -> int:
    G = L.ambient
    return L.lookup_members(G.center_of(np.arange(G.order), G.gen_ordinals))


def derived(L: Lattice) -> int:
    G = L.ambient
    return L.lookup_members(G.derived_subgroup(G.gen_ordinals))


def frattini(L: Lattice) -> int:
    maximal = atoms_coatoms(L).maximal
    if not maximal:
        return L.top
    bits = L.nodes[maximal[0]].bits
    for m in maximal[1:]:
        bits &= L.nodes[m].bits
    return L.node(SubgroupSet(bits, bits.bit_count()))


def fitting(L: Lattice) -> int:
    """Largest normal nilpotent subgroup, read off the lattice."""
    cands = [i for i in normal_nodes(L) if node_is_nilpotent(L, i)]
    best = max(cands, key=lambda i: L.order(i))
    assert all(L.contains(i, best) for i in cands), "normal nilpotent nodes have no maximum"
    return best


def fitting_by_cores(L: Lattice) -> int:
    """Product of the p-cores O_p(G), each the intersection of the Sylow p-subgroups."""
    G = L.ambient
    gens: list[int] = []
    for p in prime_factors(G.order):
        sylows = L.by_order(p_part(G.order, p))
        bits = L.nodes[sylows[0]].bits
        for s in sylows[1:]:
            bits &= L.nodes[s].bits
        gens.extend(_gens(G, SubgroupSet(bits, bits.bit_count()).members(G.order)))
    return L.smallest_containing(gens)


def minimal_normals(L: Lattice) -> list[int]:
    normals = [i for i in normal_nodes(L) if i != L.bottom]
    return [i for i in normals
            if not any(j != i and L.contains(j, i) for j in normals)]


def sylow(L: Lattice) -> dict[int, int]:
    G = L.ambient
    out = {}
    for p in prime_factors(G.order):
        nodes = L.by_order(p_part(G.order, p))
        if not nodes:
            raise AssertionError(f"no Sylow {p}-subgroup in the lattice: enumeration bug")
        out[p] = nodes[0]
    return out


def centralizer_of(L: Lattice, i: int) -> int:
    G = L.ambient
    gens = L.gens[i]
    if not gens:
        return L.top
    m = G.mult
    g = np.asarray(gens)
    ok = (m[:, g] == m[g, :].T).all(axis=1)
    return L.lookup_members(np.nonzero(ok)[0])


@dataclass
class StructureReport:
    center: int
    derived: int
    frattini: int
    fitting: int
    minimal_normals: list[int]
    sylow: dict[int, int]
    predicates: Predicates

    def to_json(self, L: Lattice) -> dict:
        def node(i):
            return {"node": i, "order": L.order(i)}
        return {
            "center": node(self.center),
            "derived": node(self.derived),
            "frattini": node(self.frattini),
            "fitting": node(self.fitting),
            "minimal_normals": [node(i) for i in self.minimal_normals],
            "sylow": {str(p): node(i) for p, i in sorted(self.sylow.items())},
            "predicates": asdict(self.predicates),
        }


def structure_report(G: PermGroup, L: Lattice) -> StructureReport:
    return StructureReport(
        center=center(L),
        derived=derived(L),
        frattini=frattini(L),
        fitting=fitting(L),
        minimal_normals=minimal_normals(L),
        sylow=sylow(L),
        predicates=predicate_suite(G, L),
    )


# -- fingerprints --------------------------------------------------------

@dataclass(frozen=True)
class IsoFingerprint:
    order: int
    abelian: bool
    exponent: int
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    derived_length: int | None  # None: not solvable
    nilpotency_class: int | None  # None: not nilpotent

    def to_json(self) -> dict:
        d = asdict(self)
        d["order_histogram"] = {str(k): v for k, v in self.order_histogram}
        return d


def fingerprint_of(G: PermGroup, gens: Sequence[int]) -> IsoFingerprint:
    gens = list(gens)
    members = G.closure(gens)
    orders = G.orders[members]
    hist = tuple(sorted(Counter(int(x) for x in orders).items()))
    dser = derived_series(G, gens)
    lcs = lower_central_series(G, gens)
    return IsoFingerprint(
        order=len(members),
        abelian=is_abelian(G, gens),
        exponent=math.lcm(*(int(x) for x in orders)),
        order_histogram=hist,
        center_order=len(G.center_of(members, gens)),
        derived_order=len(G.derived_subgroup(gens)) if gens else 1,
        derived_length=len(dser) - 1 if len(dser[-1]) == 1 else None,
        nilpotency_class=len(lcs) - 1 if len(lcs[-1]) == 1 else None,
    )


def fingerprint(L: Lattice, H: SubgroupSet | int) -> IsoFingerprint:
    i = L.node(H)
    return fingerprint_of(L.ambient, L.gens[i])


def group_fingerprint(G: PermGroup) -> IsoFingerprint:
    return fingerprint_of(G, G.gen_ordinals)


# -- theorem verifier ----------------------------------------------------

@dataclass
class TheoremVerdict:
    group: str
    order: int
    solvable: bool
    supersolvable: bool
    hypothesis_23: bool
    hypothesis_all: bool
    clauses: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)
    vacuous: bool = False

    @property
    def ok(self) -> bool:
        return all(self.clauses.values())

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "solvable": self.solvable,
            "supersolvable": self.supersolvable,
            "hypothesis_23": self.hypothesis_23,
            "hypothesis_all": self.hypothesis_all,
            "vacuous": self.vacuous,
            "clauses": self.clauses,
            "witnesses": self.witnesses,
            "ok": self.ok,
        }


def complements(L: Lattice, f: int, maximal_only: bool = True) -> list[int]:
    """Nodes M with F meet M trivial and |F||M| = |G|."""
    G = L.ambient
    pool = atoms_coatoms(L).maximal if maximal_only else range(len(L))
    fb = L.nodes[f].bits
    return [m for m in pool
            if (L.nodes[m].bits & fb) == 1 << G.identity and L.order(m) * L.order(f) == G.order]


def verify_minimal_chain_theorems(G: PermGroup, L: Lattice) -> TheoremVerdict:
    """Evaluate the hypotheses on the atoms and check every implied clause.

    A ``False`` clause is a falsification of a proven statement and so points
    at a bug somewhere in this package.
    """
    table = ChainTable(L)
    atoms = atoms_coatoms(L).minimal
    hyp23 = all(table.graded(a) for a in atoms if L.order(a) in (2, 3))
    hyp_all = all(table.graded(a) for a in atoms)
    preds = predicate_suite(G, L)
    v = TheoremVerdict(G.label, G.order, preds.solvable, preds.supersolvable, hyp23, hyp_all)
    v.clauses["hypothesis_23_implies_solvable"] = (not hyp23) or preds.solvable

    F = fitting(L)
    v.witnesses["fitting"] = F
    v.witnesses["fitting_order"] = L.order(F)
    comps = complements(L, F)
    # exposed even when the theorem is vacuous, e.g. S4 = K4 x| S3
    v.witnesses["decomposition"] = {"fitting": F, "complements": comps}

    mins = minimal_normals(L)
    pp = is_prime_power(L.order(F)) if L.order(F) > 1 else None
    structure_holds = (
        L.order(frattini(L)) == 1 and L.order(center(L)) == 1
        and mins == [F] and pp is not None and pp[1] >= 2
        and any(centralizer_of(L, F) == F and is_supersolvable(subgroup_as_group(G, L.gens[m]))
                for m in comps)
    )
    if not hyp_all:
        v.vacuous = True
        return v
    v.clauses["structure_iff_non_supersolvable"] = structure_holds == (not preds.supersolvable)
    if preds.supersolvable:
        v.vacuous = True
        return v

    D = derived(L)
    v.clauses["frattini_trivial"] = L.order(frattini(L)) == 1
    v.clauses["center_trivial"] = L.order(center(L)) == 1
    v.clauses["fitting_unique_minimal_normal"] = mins == [F]
    v.clauses["fitting_order_p_n_n_ge_2"] = pp is not None and pp[1] >= 2
    if pp is not None:
        v.witnesses["p"], v.witnesses["n"] = pp
    v.clauses["maximal_complement_exists"] = bool(comps)
    sup = [m for m in comps if is_supersolvable(subgroup_as_group(G, L.gens[m]))]
    v.clauses["complement_supersolvable"] = bool(comps) and len(sup) == len(comps)
    if comps:
        v.witnesses["complement"] = comps[0]
        v.witnesses["complement_order"] = L.order(comps[0])
    v.clauses["faithful_action"] = centralizer_of(L, F) == F
    in_derived = L.contains(F, D)
    v.clauses["fitting_sylow_in_derived"] = (
        in_derived and pp is not None and L.order(F) == p_part(L.order(D), pp[0]))
    ZD = L.lookup_members(G.center_of(L.members(D), L.gens[D]))
    v.witnesses["derived_center_order"] = L.order(ZD)
    if L.order(ZD) > 1:
        v.clauses["derived_center_nontrivial_implies_fitting_is_derived"] = F == D
    return v
