import math

import pytest

from maxchain.constructors import (ActionSpec, ConstructionError, direct_product, linear_group,
                                   named_group, order75_parts, power, quotient_group,
                                   semidirect_product, word)
from maxchain.perm import CapExceeded
from maxchain.structure import group_fingerprint


@pytest.mark.parametrize("kind,n,order", [
    ("symmetric", 1, 1), ("symmetric", 4, 24), ("symmetric", 5, 120),
    ("alternating", 3, 3), ("alternating", 5, 60), ("cyclic", 1, 1), ("cyclic", 12, 12),
    ("dihedral", 1, 2), ("dihedral", 2, 4), ("dihedral", 6, 12),
    ("klein_four", 0, 4), ("quaternion", 2, 8), ("quaternion", 3, 12), ("semidihedral", 4, 16),
])
def test_named_orders(kind, n, order):
    assert named_group(kind, n).order == order


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_linear_orders(p):
    gl = (p * p - 1) * (p * p - p)
    assert linear_group("GL2", p).order == gl
    assert linear_group("SL2", p).order == gl // (p - 1)
    assert linear_group("PSL2", p).order == gl // (p - 1) // math.gcd(2, p - 1)


def test_linear_requires_prime():
    with pytest.raises(ConstructionError):
        linear_group("SL2", 6)


def test_cap_on_constructors():
    with pytest.raises(CapExceeded):
        named_group("symmetric", 8, cap=1000)


def test_quaternion_and_semidihedral_fingerprints():
    q8 = group_fingerprint(named_group("quaternion", 2))
    assert dict(q8.order_histogram) == {1: 1, 2: 1, 4: 6}
    sd = group_fingerprint(named_group("semidihedral", 4))
    assert dict(sd.order_histogram) == {1: 1, 2: 5, 4: 6, 8: 4}


def test_order75_relators():
    G, N, H, a, b, c = order75_parts()
    assert G.order == 75
    e = G.identity
    assert power(G, a, 5) == power(G, b, 5) == power(G, c, 3) == e
    assert word(G, a, b) == word(G, b, a)
    ci = int(G.inv[c])
    assert word(G, ci, a, c) == int(G.inv[word(G, a, b)])
    assert word(G, ci, b, c) == a


@pytest.mark.parametrize("p", [3, 5])
def test_psl_is_sl_mod_center(p):
    SL = linear_group("SL2", p)
    Q = quotient_group(SL, SL.center_of(list(range(SL.order)), SL.gen_ordinals))
    assert group_fingerprint(Q) == group_fingerprint(linear_group("PSL2", p))


def test_trivial_action_is_direct_product():
    N, H = named_group("cyclic", 3), named_group("symmetric", 3)
    a = group_fingerprint(semidirect_product(N, H, ActionSpec.trivial()))
    assert a == group_fingerprint(direct_product(N, H))


def test_bad_action_rejected():
    N, H = named_group("cyclic", 5), named_group("cyclic", 3)
    # x -> x^2 has order 4 in Aut(C5), so it cannot come from C3
    with pytest.raises(ConstructionError):
        semidirect_product(N, H, ActionSpec([["(1 3 5 2 4)"]]))


def test_quotient_needs_normal():
    S3 = named_group("symmetric", 3)
    with pytest.raises(ConstructionError):
        quotient_group(S3, S3.closure([S3.ordinal(S3.generators[0])]))
