import pytest
from hypothesis import given, strategies as st

from maxchain.chains import ChainTable
from maxchain.corpus import corpus_entries
from maxchain.lattice import atoms_coatoms
from maxchain.speclang import build
from maxchain.structure import (center, derived, fingerprint, fitting, fitting_by_cores, frattini,
                                group_fingerprint, is_nilpotent, is_prime_power, is_solvable,
                                is_supersolvable, minimal_normals, p_part, predicate_suite,
                                prime_factors, structure_report, sylow,
                                verify_minimal_chain_theorems)


@given(st.integers(1, 5000))
def test_factorisation(n):
    ps = prime_factors(n)
    prod = 1
    for p in ps:
        prod *= p_part(n, p)
    assert prod == n
    pp = is_prime_power(n)
    assert (pp is not None) == (len(ps) == 1)


def test_q8_and_d8_differ():
    q8, d8 = group_fingerprint(build("Q(2)")), group_fingerprint(build("D(4)"))
    assert dict(q8.order_histogram)[2] == 1
    assert dict(d8.order_histogram)[2] == 5
    assert q8 != d8
    assert q8.center_order == d8.center_order == 2
    assert q8.nilpotency_class == d8.nilpotency_class == 2


@pytest.mark.parametrize("spec,abelian,nilpotent,super_,solvable", [
    ("C(12)", True, True, True, True),
    ("Q(2)", False, True, True, True),
    ("D(5)", False, False, True, True),
    ("A(4)", False, False, False, True),
    ("S(4)", False, False, False, True),
    ("SL2(3)", False, False, False, True),
    ("@order75", False, False, False, True),
    ("A(5)", False, False, False, False),
])
def test_predicates(spec, abelian, nilpotent, super_, solvable):
    p = predicate_suite(build(spec))
    assert (p.abelian, p.nilpotent, p.supersolvable, p.solvable) == (abelian, nilpotent, super_,
                                                                      solvable)


@pytest.mark.parametrize("spec,z,d,phi,f", [
    ("S(4)", 1, 12, 1, 4), ("A(4)", 1, 4, 1, 4), ("Q(2)", 2, 2, 2, 8),
    ("GL2(3)", 2, 24, 2, 8), ("SL2(5)", 2, 120, 2, 2), ("@order75", 1, 25, 1, 25),
])
def test_distinguished_subgroups(lat, spec, z, d, phi, f):
    L = lat(spec)
    assert [L.order(x) for x in (center(L), derived(L), frattini(L), fitting(L))] == [z, d, phi, f]


@pytest.mark.parametrize("spec", [e.spec for e in corpus_entries(max_order=200)])
def test_fitting_two_ways(lat, spec):
    L = lat(spec)
    assert fitting(L) == fitting_by_cores(L)


def test_sylow_and_minimal_normals(lat):
    L = lat("S(4)")
    assert {p: L.order(i) for p, i in sylow(L).items()} == {2: 8, 3: 3}
    assert [L.order(i) for i in minimal_normals(L)] == [4]
    rep = structure_report(L.ambient, L).to_json(L)
    assert rep["fitting"]["order"] == 4


def test_recursive_predicates_agree_with_series():
    for e in corpus_entries(max_order=200):
        G = build(e.spec)
        if is_supersolvable(G):
            assert is_solvable(G)
        if is_nilpotent(G):
            assert is_supersolvable(G)


def test_fingerprint_of_subgroup(lat):
    L = lat("S(4)")
    fps = {fingerprint(L, i) for i in range(len(L))}
    # 1, C2, C3, C4, K4, S3, D8, A4, S4
    assert len(fps) == 9


def test_verdict_a4(lat):
    L = lat("A(4)")
    v = verify_minimal_chain_theorems(L.ambient, L)
    assert v.hypothesis_all and v.ok and not v.vacuous
    assert v.witnesses["fitting_order"] == 4


def test_verdict_s4_vacuous(lat):
    L = lat("S(4)")
    v = verify_minimal_chain_theorems(L.ambient, L)
    assert not v.hypothesis_all and v.vacuous and v.ok
    assert v.to_json()["witnesses"]["decomposition"]["complements"]


def test_verdict_sl25_fails_hypothesis(lat):
    L = lat("SL2(5)")
    v = verify_minimal_chain_theorems(L.ambient, L)
    assert not v.hypothesis_23 and not v.solvable


def test_gl23_second_maximal_readings(lat):
    L = lat("GL2(3)")
    layers = atoms_coatoms(L)
    t = ChainTable(L)
    ungraded = [i for i in layers.second_maximal if not t.graded(i)]
    # Klein four-groups sit inside both D12 and D8 < SD16
    assert len(ungraded) == 6 and {L.order(i) for i in ungraded} == {4}
    assert all(t.lengths(i) == {2, 3} for i in ungraded)
    assert all(t.graded(i) for i in layers.second_maximal_universal)
