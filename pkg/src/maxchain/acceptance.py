"""Exit criteria for the package, runnable from pytest and from ``maxchain corpus``.

Each check returns a :class:`CriterionResult`; nothing here raises on a
failed criterion.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .chains import ChainTable, delta, enumerate_chains
from .constructors import linear_group, named_group
from .corpus import corpus_entries
from .lattice import Lattice, atoms_coatoms, check_closed, enumerate_subgroups, subgroup_query
from .speclang import build
from .structure import (complements, fingerprint, group_fingerprint, is_supersolvable,
                        predicate_suite, supersolvable_oracle, verify_minimal_chain_theorems)

# delta values frozen after the first oracle-checked computation
FROZEN_DELTA = {"S(5)": 56, "prod(A(5), C(2))": 47, "prod(A(5), C(3))": 32,
                "prod(A(5), C(5))": 32, "prod(A(5), C(7))": 32}

GL23_CATALOG = {
    "1": "C(1)", "Z2": "C(2)", "Z4": "C(4)", "Z8": "C(8)", "Z2xZ2": "K4", "D8": "D(4)",
    "Q8": "Q(2)", "SD16": "SD(4)", "SL2(3)": "SL2(3)", "GL2(3)": "GL2(3)",
}


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title} ({self.seconds:.2f}s): {self.detail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@lru_cache(maxsize=None)
def lattice_of(spec: str) -> Lattice:
    return enumerate_subgroups(build(spec))


def node_by_gens(L: Lattice, *cycles: str) -> int:
    from .perm import parse_cycles

    G = L.ambient
    return L.smallest_containing([G.ordinal(parse_cycles(c, G.degree)) for c in cycles])


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failed criterion, reported not raised
        ok, detail = False, f"error: {type(e).__name__}: {e}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - t0)


# 1 ------------------------------------------------------------------------

def c1_delta_a5() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        L = enumerate_subgroups(named_group("alternating", 5))
        d = delta(L)
        secs = time.perf_counter() - t0
        orders = sorted(L.order(i) for i in d.offenders)
        ok = d.value == 16 and orders == [1] + [2] * 15 and len(L.by_order(2)) == 15 and secs < 5
        return ok, f"delta={d.value} offender orders={dict((k, orders.count(k)) for k in set(orders))} in {secs:.2f}s"
    return _timed(1, "delta(A5) = 16: identity + 15 involution subgroups, < 5 s", run)


# 2 ------------------------------------------------------------------------

def c2_iwasawa(include_slow: bool = True) -> CriterionResult:
    def run():
        entries = corpus_entries(include_slow=include_slow)
        bad, orders, secs = [], [], 0.0
        for e in entries:
            t0 = time.perf_counter()
            G = build(e.spec)
            L = enumerate_subgroups(G)
            orders.append(G.order)
            rec = is_supersolvable(G)
            iw, pi = supersolvable_oracle(G, L)
            if not iw == rec == pi:
                bad.append(f"{e.name}: graded={iw} recursive={rec} prime_index={pi}")
            if not e.slow:
                secs += time.perf_counter() - t0
        ok = not bad and len(entries) >= 25 and secs < 120
        return ok, (f"{len(entries)} groups, orders {min(orders)}..{max(orders)}, "
                    f"{len(bad)} disagreements{': ' + '; '.join(bad) if bad else ''}, "
                    f"{secs:.1f}s without the slow entries")
    return _timed(2, "identity graded <=> recursive supersolvable <=> prime-index maximals", run)


# 3 ------------------------------------------------------------------------

def c3_chain_fixtures() -> CriterionResult:
    def run():
        got = {}
        L = lattice_of("A(4)")
        t = ChainTable(L)
        got["A4/1"] = (t.lengths(L.bottom), {2, 3})
        got["A4/<(1 2 3)>"] = (t.lengths(node_by_gens(L, "(1 2 3)")), {1})
        L = lattice_of("S(4)")
        got["S4/<(1 2)>"] = (ChainTable(L).lengths(node_by_gens(L, "(1 2)")), {2, 3})
        L = lattice_of("SL2(5)")
        z = L.by_order(2)
        got["SL2(5)/Z"] = (ChainTable(L).lengths(z[0]) if len(z) == 1 else set(), {3, 4})
        L = lattice_of("A(5)")
        t = ChainTable(L)
        fours = L.by_order(4)
        got["A5/order 4"] = ({len(t.lengths(i)) for i in fours}, {1})
        bad = [k for k, (a, b) in got.items() if a != b]
        detail = "; ".join(f"{k}={sorted(a)}" for k, (a, _) in got.items())
        return not bad and len(fours) == 5, detail
    return _timed(3, "chain length fixtures", run)


# 4 ------------------------------------------------------------------------

def c4_oracle() -> CriterionResult:
    def run():
        specs = [e.spec for e in corpus_entries() if e.order <= 200] + ["A(5)", "S(5)"]
        mismatches, checked, chains = [], 0, 0
        for spec in dict.fromkeys(specs):
            L = lattice_of(spec)
            t = ChainTable(L)
            for i in range(len(L)):
                found = enumerate_chains(L, i)
                chains += len(found)
                support = {len(c) - 1 for c in found}
                checked += 1
                if support != t.lengths(i):
                    mismatches.append(f"{spec} node {i}")
        return not mismatches, (f"{checked} nodes, {chains} chains enumerated, "
                                f"{len(mismatches)} mismatches")
    return _timed(4, "DP length sets equal exhaustive chain enumeration", run)


# 5 ------------------------------------------------------------------------

def c5_theorem_23() -> CriterionResult:
    def run():
        bad = []
        for e in corpus_entries():
            L = lattice_of(e.spec)
            v = verify_minimal_chain_theorems(L.ambient, L)
            if v.hypothesis_23 and not v.solvable:
                bad.append(e.name)
        a5 = verify_minimal_chain_theorems(lattice_of("A(5)").ambient, lattice_of("A(5)"))
        sl = verify_minimal_chain_theorems(lattice_of("SL2(5)").ambient, lattice_of("SL2(5)"))
        exercised = (not a5.hypothesis_23 and not a5.solvable and not sl.hypothesis_23)
        return not bad and exercised, (f"violations: {bad or 'none'}; A5 hyp23={a5.hypothesis_23} "
                                       f"solvable={a5.solvable}; SL2(5) hyp23={sl.hypothesis_23}")
    return _timed(5, "graded atoms of order 2 and 3 => solvable", run)


# 6 ------------------------------------------------------------------------

def c6_structure_verifier() -> CriterionResult:
    def run():
        out, ok = [], True
        for spec, f_order in (("A(4)", 4), ("@order75", 25)):
            L = lattice_of(spec)
            v = verify_minimal_chain_theorems(L.ambient, L)
            good = (v.hypothesis_all and not v.supersolvable and not v.vacuous and v.ok
                    and v.witnesses["fitting_order"] == f_order
                    and v.clauses.get("derived_center_nontrivial_implies_fitting_is_derived", True))
            ok &= good
            failed = [k for k, c in v.clauses.items() if not c]
            out.append(f"{spec}: {len(v.clauses)} clauses, failed={failed or 'none'}, "
                       f"|F|={v.witnesses['fitting_order']}, |M|={v.witnesses.get('complement_order')}")
        L = lattice_of("S(4)")
        v = verify_minimal_chain_theorems(L.ambient, L)
        F = v.witnesses["decomposition"]["fitting"]
        comps = v.witnesses["decomposition"]["complements"]
        s4_ok = (not v.hypothesis_all and v.vacuous and v.ok and L.order(F) == 4
                 and any(L.order(m) == 6 and not fingerprint(L, m).abelian for m in comps))
        ok &= s4_ok
        out.append(f"S(4): hypothesis_all={v.hypothesis_all}, vacuous={v.vacuous}, "
                   f"K4 x| S3 complements={len(comps)}")
        return ok, "; ".join(out)
    return _timed(6, "structure of non-supersolvable groups with graded atoms", run)


# 7 ------------------------------------------------------------------------

def c7_delta_bounds() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        vals = {}
        for spec in FROZEN_DELTA:
            vals[spec] = delta(enumerate_subgroups(build(spec))).value
        secs = time.perf_counter() - t0
        ok = all(v > 16 and v == FROZEN_DELTA[s] for s, v in vals.items()) and secs < 120
        return ok, ", ".join(f"{s}: {v}" for s, v in vals.items()) + f" in {secs:.1f}s"
    return _timed(7, "delta > 16 for S5 and A5 x Zp", run)


# 8 ------------------------------------------------------------------------

def c8_psl27() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        G = linear_group("PSL2", 7)
        L = enumerate_subgroups(G)
        invs = L.by_order(2)
        info = subgroup_query(L, invs[0])
        index = G.order // L.order(info.normalizer)
        one_orbit = sorted(info.orbit) == sorted(invs)
        d = delta(L).value
        secs = time.perf_counter() - t0
        ok = len(invs) == 21 and one_orbit and index == 21 and d >= 21 and secs < 60
        return ok, (f"{len(invs)} involution subgroups, single orbit={one_orbit}, "
                    f"|G:N_G(H)|={index}, delta={d}, {secs:.1f}s")
    return _timed(8, "PSL2(7): 21 conjugate involution subgroups, delta >= 21", run)


# 9 ------------------------------------------------------------------------

def gl23_inventory() -> tuple[set, dict]:
    L = lattice_of("GL2(3)")
    inventory = {fingerprint(L, i) for i in range(len(L))}
    catalog = {name: group_fingerprint(build(spec)) for name, spec in GL23_CATALOG.items()}
    return inventory, catalog


def c9_gl23() -> CriterionResult:
    def run():
        L = lattice_of("GL2(3)")
        inventory, catalog = gl23_inventory()
        cat = set(catalog.values())
        distinct = len(cat) == len(catalog)
        extra = sorted((f.order, dict(f.order_histogram).get(2, 0)) for f in inventory - cat)
        inv_ok = inventory == cat
        layers = atoms_coatoms(L)
        t = ChainTable(L)
        # second maximal = maximal in some maximal subgroup
        ungraded = [i for i in layers.second_maximal if not t.graded(i)]
        universal_ok = all(t.graded(i) for i in layers.second_maximal_universal)
        second_ok = not ungraded
        nss = not is_supersolvable(L.ambient)
        witness = t.report(ungraded[0]).witness_short if ungraded else []
        detail = (f"catalog pairwise distinct={distinct}; inventory == catalog: {inv_ok} "
                  f"({len(inventory)} types, {len(inventory - cat)} outside the catalog: "
                  f"(order, involutions)={extra}); second-maximal graded={second_ok} "
                  f"({len(ungraded)} of {len(layers.second_maximal)} ungraded, orders "
                  f"{sorted({L.order(i) for i in ungraded})}, short chain orders "
                  f"{[L.order(i) for i in witness]}; all {len(layers.second_maximal_universal)} "
                  f"maximal-in-every-maximal ones graded={universal_ok}); non-supersolvable={nss}")
        return distinct and inv_ok and second_ok and nss, detail
    return _timed(9, "GL2(3): ten-type subgroup catalog, graded second-maximals", run)


# 10 -----------------------------------------------------------------------

def c10_psl217() -> CriterionResult:
    def run():
        t0 = time.perf_counter()
        L = enumerate_subgroups(linear_group("PSL2", 17))
        t = ChainTable(L)
        layers = atoms_coatoms(L)
        ok_ex = all(t.graded(i) for i in layers.second_maximal)
        ok_un = all(t.graded(i) for i in layers.second_maximal_universal)
        secs = time.perf_counter() - t0
        return ok_ex and ok_un and secs < 900, (
            f"{len(L)} subgroups, {len(layers.second_maximal)} second-maximal, all graded="
            f"{ok_ex and ok_un}, {secs:.1f}s")
    return _timed(10, "PSL2(17): every second-maximal subgroup graded", run)


# 11 -----------------------------------------------------------------------

def lattice_violations(L: Lattice) -> list[str]:
    """Structural checks independent of how the lattice was built."""
    G = L.ambient
    n = G.order
    out = []
    bits = [h.bits for h in L.nodes]
    for i, h in enumerate(L.nodes):
        mem = L.members(i)
        if n % h.order or len(mem) != h.order:
            out.append(f"Lagrange fails at node {i}")
        if not check_closed(G, mem):
            out.append(f"node {i} not closed")
    N = len(L)
    for i in range(N):
        ups = set(L.hasse_up[i])
        for j in range(N):
            if i == j or bits[i] & bits[j] != bits[i]:
                continue
            between = any(k not in (i, j) and bits[i] & bits[k] == bits[i]
                          and bits[k] & bits[j] == bits[k] for k in range(N))
            if (j in ups) == between:
                out.append(f"cover relation wrong for {i} < {j}")
    for g in G.gen_ordinals:
        image = sorted(L.conjugate(i, g) for i in range(N))
        if image != list(range(N)):
            out.append(f"conjugation by generator {g} does not permute the nodes")
    if sum(len(c) for c in L.classes) != N:
        out.append("class sizes do not sum to the node count")
    for c in L.classes:
        info = subgroup_query(L, c[0])
        if len(c) != n // L.order(info.normalizer):
            out.append(f"orbit of node {c[0]} has size {len(c)} != |G:N_G(H)|")
    return out


def prop11_violations(L: Lattice) -> list[str]:
    """Graded H in G forces graded H in K and graded K in G for all H < K < G."""
    out = []
    top = ChainTable(L)
    for k in range(len(L)):
        if k == L.top:
            continue
        sub = ChainTable(L, k)
        for h in range(len(L)):
            if h == k or not L.contains(h, k) or not top.graded(h):
                continue
            if not sub.graded(h):
                out.append(f"H={h} graded in G but not in K={k}")
            if not top.graded(k):
                out.append(f"H={h} graded in G but K={k} not graded in G")
    return out


def c11_properties() -> CriterionResult:
    def run():
        bad, groups = [], 0
        for e in corpus_entries(max_order=120):
            L = lattice_of(e.spec)
            groups += 1
            bad += [f"{e.name}: {v}" for v in lattice_violations(L)]
            bad += [f"{e.name}: {v}" for v in prop11_violations(L)]
            p = predicate_suite(L.ambient, L)
            if not ((not p.abelian or p.nilpotent) and (not p.nilpotent or p.supersolvable)
                    and (not p.supersolvable or p.solvable)):
                bad.append(f"{e.name}: predicate chain broken")
        return not bad, f"{groups} groups, {len(bad)} violations{': ' + bad[0] if bad else ''}"
    return _timed(11, "lattice, predicate and chain-inheritance property suites", run)


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: c1_delta_a5, 2: c2_iwasawa, 3: c3_chain_fixtures, 4: c4_oracle, 5: c5_theorem_23,
    6: c6_structure_verifier, 7: c7_delta_bounds, 8: c8_psl27, 9: c9_gl23, 10: c10_psl217,
    11: c11_properties,
}


def run_all(slow: bool = True, report: Callable[[CriterionResult], None] | None = None
            ) -> list[CriterionResult]:
    results = []
    for k, fn in CRITERIA.items():
        if k == 10 and not slow:
            continue
        r = fn()
        results.append(r)
        if report:
            report(r)
    return results
