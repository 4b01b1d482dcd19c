import pytest
from hypothesis import given, strategies as st

from maxchain.speclang import (CorpusRef, Gens, Linear, Named, Prod, Quot, Sdp, Selector,
                               SpecError, build, parse_selector, parse_spec)

cycles = st.lists(st.integers(1, 9), min_size=2, max_size=5, unique=True).map(tuple)
perm_cycles = st.lists(cycles, max_size=2).filter(
    lambda cs: len({x for c in cs for x in c}) == sum(len(c) for c in cs)).map(tuple)

leaf = st.one_of(
    st.builds(Named, st.sampled_from(["symmetric", "alternating", "cyclic", "dihedral",
                                      "quaternion", "semidihedral"]), st.integers(1, 40)),
    st.just(Named("klein_four", 0)),
    st.builds(Linear, st.sampled_from(["GL2", "SL2", "PSL2"]), st.sampled_from([2, 3, 5, 7, 11])),
    st.builds(Gens, st.just(9), st.lists(perm_cycles, min_size=1, max_size=3).map(tuple)),
    st.builds(CorpusRef, st.sampled_from(["A5", "order75", "R17-order75", "SL2_3"])),
)
selectors = st.one_of(
    st.sampled_from([Selector("trivial"), Selector("center"), Selector("derived")]),
    st.builds(Selector, st.just("gens"), st.lists(perm_cycles, min_size=1, max_size=2).map(tuple)),
    st.builds(Selector, st.just("order"), st.just(()), st.integers(1, 99), st.integers(0, 9)),
)
specs = st.recursive(leaf, lambda inner: st.one_of(
    st.builds(Prod, inner, inner),
    st.builds(Sdp, inner, inner, st.one_of(
        st.just(()), st.lists(st.lists(perm_cycles, min_size=1, max_size=2).map(tuple),
                              min_size=1, max_size=2).map(tuple))),
    st.builds(Quot, inner, selectors),
), max_leaves=6)


@given(specs)
def test_roundtrip(spec):
    assert parse_spec(str(spec)) == spec


@given(specs)
def test_print_is_fixed_point(spec):
    text = str(spec)
    assert str(parse_spec(text)) == text


@pytest.mark.parametrize("text,order", [
    ("A(4)", 12), ("prod(A(5), C(2))", 120), ("@R17-order75", 75), ("@order75", 75),
    ("gens[4: (1 2 3 4), (1 3)]", 8), ("quot(SL2(5); center)", 60), ("quot(S(4); order:4:3)", 6),
    ("sdp(C(7), C(3); [(1 3 5 7 2 4 6)])", 21), ("K4", 4), ("SD(4)", 16),
])
def test_build_orders(text, order):
    assert build(text).order == order


@pytest.mark.parametrize("text,col", [
    ("A(5", 4), ("B(3)", 1), ("prod(A(4) C(2))", 11), ("gens[3: (1 4)]", 9), ("SL2(6)", 5),
    ("quot(A(4); nothing)", 12), ("A(4) junk", 6), ("gens[4: (1 1)]", 14),
])
def test_error_positions(text, col):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.line == 1
    assert info.value.column == col


def test_multiline_error_position():
    with pytest.raises(SpecError) as info:
        parse_spec("prod(A(4),\n  Z(3))")
    assert (info.value.line, info.value.column) == (2, 3)


def test_unknown_corpus_name():
    with pytest.raises(SpecError):
        parse_spec("@nope", corpus_names={"A5"})
    with pytest.raises(SpecError):
        build("@nope")


def test_invalid_action_reports_spec_error():
    with pytest.raises(SpecError):
        build("sdp(C(5), C(3); [(1 2 3 4 5)(1 2)])")
    with pytest.raises(SpecError):
        build("sdp(C(5), C(3); [(1 3 5 2 4)])")


def test_quot_by_non_normal():
    with pytest.raises(SpecError):
        build("quot(S(3); gens: (1 2))")


def test_selector_parsing():
    assert parse_selector("order:4:2") == Selector("order", k=4, i=2)
    assert str(parse_selector("gens: (1 2),(3 4)")) == "gens: (1 2), (3 4)"
    with pytest.raises(SpecError):
        parse_selector("center extra")


def test_label_is_canonical():
    assert build("prod( A(4) ,C(2))").label == "prod(A(4), C(2))"
