import numpy as np
import pytest
from hypothesis import given, strategies as st

from maxchain.perm import (CapExceeded, Permutation, PermError, compose, element_order,
                           generate, inverse, parse_cycles, to_cycle_string)


def perms(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(range(n)).map(lambda xs: Permutation(tuple(xs))))


def same_degree_pair(max_degree=8):
    return st.integers(1, max_degree).flatmap(lambda n: st.tuples(
        *[st.permutations(range(n)).map(lambda xs: Permutation(tuple(xs)))] * 3))


def test_composition_applies_left_first():
    a = parse_cycles("(1 2)", 3)
    b = parse_cycles("(2 3)", 3)
    assert to_cycle_string(compose(a, b)) == "(1 3 2)"
    assert to_cycle_string(a * b) == "(1 3 2)"


@pytest.mark.parametrize("text,expected", [
    ("()", "()"), ("id", "()"), ("(1,2)(3,4)", "(1 2)(3 4)"),
    ("(3 1 2)", "(1 2 3)"), ("  (2 4)  (1 5 3) ", "(1 5 3)(2 4)"),
])
def test_canonical_text(text, expected):
    assert to_cycle_string(parse_cycles(text, 5)) == expected


@pytest.mark.parametrize("bad", ["(1 2", "(1 1)", "(1 2)(2 3)", "(0 1)", "(1 9)", "(1)", "x"])
def test_rejects_malformed(bad):
    with pytest.raises(PermError):
        parse_cycles(bad, 5)


@given(perms())
def test_text_roundtrip(p):
    assert parse_cycles(to_cycle_string(p), p.degree) == p


@given(perms())
def test_inverse_and_order(p):
    e = Permutation.identity(p.degree)
    assert compose(p, inverse(p)) == e
    k = element_order(p)
    q = e
    for _ in range(k):
        q = compose(q, p)
    assert q == e
    # no smaller positive power is trivial
    q = p
    for _ in range(1, k):
        assert q != e
        q = compose(q, p)


@given(same_degree_pair())
def test_associativity(t):
    a, b, c = t
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_generate_s4_table():
    G = generate(4, [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)])
    assert G.order == 24
    assert G.elements[0].is_identity()
    assert G.elements == sorted(G.elements)
    n = G.order
    for i in range(n):
        for j in range(0, n, 5):
            assert G.elements[G.mult[i, j]] == compose(G.elements[i], G.elements[j])
    assert np.all(G.mult[np.arange(n), G.inv] == 0)


def test_cap_exceeded():
    with pytest.raises(CapExceeded) as info:
        generate(6, [parse_cycles("(1 2)", 6), parse_cycles("(1 2 3 4 5 6)", 6)], cap=100)
    assert info.value.cap == 100


def test_closure_and_conjugation():
    G = generate(4, [parse_cycles("(1 2)", 4), parse_cycles("(1 2 3 4)", 4)])
    x = G.ordinal(parse_cycles("(1 2 3)", 4))
    assert len(G.closure([x])) == 3
    g = G.ordinal(parse_cycles("(1 4)", 4))
    conj = G.conj(g)
    expect = compose(compose(inverse(G.elements[g]), G.elements[x]), G.elements[g])
    assert G.elements[conj[x]] == expect
    assert len(G.derived_subgroup(G.gen_ordinals)) == 12
