import pytest
from hypothesis import given, strategies as st

from maxchain.chains import ChainTable, chain_length_set, delta, enumerate_chains
from maxchain.lattice import LatticeError
from maxchain.perm import CapExceeded


def test_cyclic_six_has_two_chains(lat):
    L = lat("C(6)")
    chains = enumerate_chains(L, L.bottom)
    assert len(chains) == 2
    assert chain_length_set(L, L.bottom).lengths == {2}


@pytest.mark.parametrize("spec,lengths", [("A(4)", {2, 3}), ("S(4)", {3, 4}), ("A(5)", {3, 4})])
def test_identity_length_sets(lat, spec, lengths):
    L = lat(spec)
    assert ChainTable(L).lengths(L.bottom) == lengths


@pytest.mark.parametrize("spec", ["A(4)", "D(6)", "Q(3)", "@order75", "S(4)"])
def test_dp_matches_enumeration(lat, spec):
    L = lat(spec)
    t = ChainTable(L)
    for i in range(len(L)):
        assert {len(c) - 1 for c in enumerate_chains(L, i)} == t.lengths(i)


@pytest.mark.parametrize("spec,value", [
    ("A(4)", 1), ("S(4)", 7), ("A(5)", 16), ("GL2(3)", 20), ("SL2(5)", 17), ("D(6)", 0),
    ("@order75", None),
])
def test_delta_values(lat, spec, value):
    d = delta(lat(spec))
    if value is None:
        assert d.value > 0
    else:
        assert d.value == value


def test_witness_chains_are_cover_chains(lat):
    L = lat("S(4)")
    t = ChainTable(L)
    for i in range(len(L)):
        r = t.report(i)
        for w, length in ((r.witness_short, min(r.lengths)), (r.witness_long, max(r.lengths))):
            assert len(w) == length + 1 and w[0] == i and w[-1] == L.top
            assert all(b in L.hasse_up[a] for a, b in zip(w, w[1:]))


@given(st.integers(0, 58), st.integers(0, 58))
def test_interval_dp_matches_enumeration(i, j):
    from maxchain.acceptance import lattice_of

    L = lattice_of("A(5)")
    if not L.contains(i, j):
        with pytest.raises(LatticeError):
            enumerate_chains(L, i, target=j)
        return
    got = {len(c) - 1 for c in enumerate_chains(L, i, target=j)}
    assert got == ChainTable(L, j).lengths(i)


def test_chain_cap(lat):
    L = lat("S(4)")
    with pytest.raises(CapExceeded):
        enumerate_chains(L, L.bottom, cap=3)


def test_report_json(lat):
    L = lat("A(4)")
    js = chain_length_set(L, L.bottom).to_json()
    assert js["lengths"] == [2, 3] and js["graded"] is False
    assert delta(L).to_json(L)["offender_orders"] == [1]
