from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxchain.acceptance import lattice_violations
from maxchain.corpus import corpus_entries
from maxchain.lattice import (LatticeError, SubgroupSet, atoms_coatoms, bits_of, bounds,
                              check_closed, enumerate_subgroups, members_of, subgroup_query)
from maxchain.perm import parse_cycles
from maxchain.speclang import build


def brute_force_subgroups(G):
    """Every subset containing the identity and closed under products."""
    n = G.order
    found = set()
    others = range(1, n)
    for mask in range(1 << (n - 1)):
        mem = np.array([0] + [x for k, x in enumerate(others) if mask >> k & 1])
        if check_closed(G, mem):
            found.add(bits_of(mem, n))
    return found


@pytest.mark.parametrize("spec,count", [("A(4)", 10), ("D(4)", 10), ("S(3)", 6), ("C(6)", 4)])
def test_matches_brute_force(lat, spec, count):
    L = lat(spec)
    assert {h.bits for h in L.nodes} == brute_force_subgroups(L.ambient)
    assert len(L) == count


@pytest.mark.parametrize("spec,count", [
    ("S(4)", 30), ("A(5)", 59), ("S(5)", 156), ("GL2(3)", 55), ("SL2(5)", 76), ("PSL2(7)", 179),
    ("Q(2)", 6), ("SD(4)", 15), ("prod(C(2), prod(C(2), C(2)))", 16),
])
def test_known_counts(lat, spec, count):
    assert len(lat(spec)) == count


@pytest.mark.parametrize("spec", ["A(4)", "S(4)", "Q(2)", "GL2(3)", "@order75"])
def test_structural_invariants(lat, spec):
    assert lattice_violations(lat(spec)) == []


def test_canonical_order_and_ends(lat):
    L = lat("S(4)")
    assert L.order(L.bottom) == 1 and L.order(L.top) == 24
    orders = [h.order for h in L.nodes]
    assert orders == sorted(orders)


def test_enumeration_is_deterministic():
    a = enumerate_subgroups(build("GL2(3)"))
    b = enumerate_subgroups(build("GL2(3)"))
    assert [h.bits for h in a.nodes] == [h.bits for h in b.nodes]
    assert a.edges == b.edges


def test_subgroup_query_s4(lat):
    L = lat("S(4)")
    G = L.ambient
    t = L.smallest_containing([G.ordinal(parse_cycles("(1 2)", 4))])
    info = subgroup_query(L, t)
    assert L.order(info.normalizer) == 4
    assert L.order(info.centralizer) == 4
    assert len(info.orbit) == 6 and not info.is_normal
    assert subgroup_query(L, L.top).is_normal


def test_layers_a5(lat):
    L = lat("A(5)")
    layers = atoms_coatoms(L)
    assert len(layers.minimal) == 15 + 10 + 6
    assert sorted(L.order(i) for i in layers.maximal) == [6] * 10 + [10] * 6 + [12] * 5
    assert set(layers.second_maximal_universal) <= set(layers.second_maximal)


@given(st.integers(0, 29), st.integers(0, 29))
def test_meet_and_join(i, j):
    from maxchain.acceptance import lattice_of

    L = lattice_of("S(4)")
    meet, join = bounds(L, i, j)
    assert L.nodes[meet].bits == L.nodes[i].bits & L.nodes[j].bits
    assert L.contains(i, join) and L.contains(j, join)
    assert all(not (L.contains(i, k) and L.contains(j, k)) or L.contains(join, k)
               for k in range(len(L)))


def test_subgroupset_ops():
    a = SubgroupSet(0b0111, 3)
    b = SubgroupSet(0b1111, 4)
    assert a <= b and a < b and not b <= a
    assert (a & b) == a
    assert 2 in a and 3 not in a
    assert list(members_of(0b1011, 4)) == [0, 1, 3]


def test_unknown_subgroup(lat):
    L = lat("S(3)")
    with pytest.raises(LatticeError):
        L.node(SubgroupSet(0b110, 2))  # misses the identity
    with pytest.raises(LatticeError):
        L.node(99)


def test_covers_exclude_long_jumps(lat):
    L = lat("A(4)")
    for i, j in L.edges:
        assert L.contains(i, j)
        assert not any(L.contains(i, k) and L.contains(k, j) for k in range(len(L))
                       if k not in (i, j))
    # trivial < A4 is never a cover
    assert L.top not in L.hasse_up[L.bottom]


def test_dot_export(lat):
    L = lat("S(3)")
    dot = L.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == len(L.edges)


def test_two_generated_subgroups_are_nodes():
    from maxchain.acceptance import lattice_of

    L = lattice_of("D(4)")
    G = L.ambient
    for x, y in combinations(range(G.order), 2):
        L.smallest_containing([x, y])


@pytest.mark.parametrize("spec", sorted({e.spec for e in corpus_entries(max_order=200)}))
def test_class_shortcut_matches_plain_enumeration(spec):
    G = build(spec)
    fast = enumerate_subgroups(G)
    plain = enumerate_subgroups(G, use_classes=False)
    assert [h.bits for h in fast.nodes] == [h.bits for h in plain.nodes]
    assert fast.edges == plain.edges
    assert fast.classes == plain.classes
