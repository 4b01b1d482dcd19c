"""Concrete permutation groups: named families, linear groups, products and quotients."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .perm import (DEFAULT_CAP, CapExceeded, PermError, Permutation, PermGroup, generate,
                   parse_cycles)

NAMED_KINDS = ("symmetric", "alternating", "cyclic", "dihedral", "klein_four",
               "quaternion", "semidihedral")
LINEAR_KINDS = ("GL2", "SL2", "PSL2")


class ConstructionError(ValueError):
    pass


def _perm(images) -> Permutation:
    return Permutation(tuple(int(x) for x in images))


def _cycle(points: Sequence[int], degree: int) -> Permutation:
    img = list(range(degree))
    for a, b in zip(points, list(points[1:]) + [points[0]]):
        img[a] = b
    return _perm(img)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _primitive_root(p: int) -> int:
    for w in range(2, p):
        if all(pow(w, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)):
            return w
    return 1


def regular_representation(elements: Sequence[Hashable], mul: Callable, gens: Sequence[Hashable],
                           cap: int = DEFAULT_CAP, label: str = "") -> PermGroup:
    """Right regular action of an abstract group given by its element list and product."""
    if len(elements) > cap:
        raise CapExceeded(f"group order {len(elements)} exceeds cap {cap}", cap)
    pos = {e: i for i, e in enumerate(elements)}
    perms = [_perm([pos[mul(x, g)] for x in elements]) for g in gens]
    return generate(len(elements), perms, cap=cap, label=label)


def named_group(kind: str, n: int = 0, cap: int = DEFAULT_CAP) -> PermGroup:
    """Standard small groups.

    ``quaternion`` with parameter n is the dicyclic group of order 4n (Q8 for
    n = 2); ``semidihedral`` with parameter n has order 2**n (SD16 for n = 4).
    """
    if kind == "klein_four":
        gens = [parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4)]
        return generate(4, gens, cap=cap, label="K4")
    if n < 1:
        raise ConstructionError(f"{kind} needs a positive parameter, got {n}")
    if kind == "symmetric":
        if n > 7 and cap < 5040:
            raise CapExceeded(f"S({n}) exceeds cap {cap}", cap)
        gens = [_cycle([0, 1], n), _cycle(list(range(n)), n)] if n > 1 else []
        return generate(n, gens, cap=cap, label=f"S({n})")
    if kind == "alternating":
        if n > 7 and cap < 20160:
            raise CapExceeded(f"A({n}) exceeds cap {cap}", cap)
        gens = [_cycle([0, 1, k], n) for k in range(2, n)]
        return generate(n, gens, cap=cap, label=f"A({n})")
    if kind == "cyclic":
        if n > cap:
            raise CapExceeded(f"C({n}) exceeds cap {cap}", cap)
        gens = [_cycle(list(range(n)), n)] if n > 1 else []
        return generate(n, gens, cap=cap, label=f"C({n})")
    if kind == "dihedral":
        if 2 * n > cap:
            raise CapExceeded(f"D({n}) exceeds cap {cap}", cap)
        if n == 1:
            return generate(2, [_cycle([0, 1], 2)], cap=cap, label="D(1)")
        if n == 2:
            g = named_group("klein_four", cap=cap)
            g.label = "D(2)"
            return g
        rot = _cycle(list(range(n)), n)
        refl = _perm([(-i) % n for i in range(n)])
        return generate(n, [rot, refl], cap=cap, label=f"D({n})")
    if kind == "quaternion":
        # a^(2n) = 1, x^2 = a^n, x^-1 a x = a^-1; elements (i, j) ~ a^i x^j
        m = 2 * n
        elems = [(i, j) for j in range(2) for i in range(m)]

        def mul(u, v):
            (i1, j1), (i2, j2) = u, v
            if j1 == 0:
                return ((i1 + i2) % m, j2)
            # x a^i2 = a^-i2 x
            i = (i1 - i2) % m
            if j2 == 0:
                return (i, 1)
            return ((i + n) % m, 0)

        return regular_representation(elems, mul, [(1, 0), (0, 1)], cap=cap, label=f"Q({n})")
    if kind == "semidihedral":
        if n < 4:
            raise ConstructionError("semidihedral groups need n >= 4 (order 16 and up)")
        m = 2 ** (n - 1)
        r = m // 2 - 1
        elems = [(i, j) for j in range(2) for i in range(m)]

        def mul(u, v):
            (i1, j1), (i2, j2) = u, v
            if j1 == 0:
                return ((i1 + i2) % m, j2)
            # b a^i2 = a^(r*i2) b
            return ((i1 + r * i2) % m, (1 + j2) % 2)

        return regular_representation(elems, mul, [(1, 0), (0, 1)], cap=cap, label=f"SD({n})")
    raise ConstructionError(f"unknown group kind {kind!r}")


def linear_group(kind: str, p: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """GL2(p), SL2(p) on the nonzero row vectors, PSL2(p) on the projective line."""
    if not _is_prime(p):
        raise ConstructionError(f"{p} is not prime")
    if kind not in LINEAR_KINDS:
        raise ConstructionError(f"unknown linear group {kind!r}")
    sizes = {"GL2": (p * p - 1) * (p * p - p), "SL2": p * (p * p - 1),
             "PSL2": p * (p * p - 1) // (2 if p > 2 else 1)}
    if sizes[kind] > cap:
        raise CapExceeded(f"{kind}({p}) has order {sizes[kind]} > cap {cap}", cap)
    label = f"{kind}({p})"
    if kind == "PSL2":
        inf = p

        def mobius(a, b, c, d):
            # z -> (a z + c) / (b z + d), i.e. the row vector (z, 1) times [[a, b], [c, d]]
            img = []
            for z in range(p + 1):
                if z == inf:
                    num, den = a % p, b % p
                else:
                    num, den = (a * z + c) % p, (b * z + d) % p
                img.append(inf if den == 0 else num * pow(den, -1, p) % p)
            return _perm(img)

        gens = [mobius(1, 0, 1, 1), mobius(0, p - 1, 1, 0)]
        return generate(p + 1, gens, cap=cap, label=label)

    vecs = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(mat):
        (a, b), (c, d) = mat
        return _perm([pos[((x * a + y * c) % p, (x * b + y * d) % p)] for x, y in vecs])

    mats = [((1, 1), (0, 1)), ((1, 0), (1, 1))]
    if kind == "GL2":
        mats.append(((_primitive_root(p), 0), (0, 1)))
    return generate(len(vecs), [act(m) for m in mats], cap=cap, label=label)


def direct_product(G: PermGroup, H: PermGroup, cap: int = DEFAULT_CAP) -> PermGroup:
    """G x H acting on the disjoint union of the two point sets."""
    if G.order * H.order > cap:
        raise CapExceeded(f"|G|*|H| = {G.order * H.order} exceeds cap {cap}", cap)
    dg, dh = G.degree, H.degree
    gens = [_perm(list(g.images) + [dg + x for x in range(dh)]) for g in G.generators]
    gens += [_perm(list(range(dg)) + [dg + x for x in h.images]) for h in H.generators]
    return generate(dg + dh, gens, cap=cap, label=f"prod({G.label},{H.label})")


@dataclass
class ActionSpec:
    """How H acts on N: ``images[k][j]`` is the image of N's j-th generator under
    conjugation by H's k-th generator, i.e. ``h^-1 n h``, given as cycle text in
    N's degree.  ``None`` (or an empty list) means the trivial action."""

    images: list[list[str]] | None = field(default=None)

    @classmethod
    def trivial(cls) -> "ActionSpec":
        return cls(None)


def _extend_map(G: PermGroup, gen_images: Sequence[int]) -> np.ndarray:
    """Extend generator images to a homomorphism G -> G; validate it is an automorphism."""
    n = G.order
    phi = np.full(n, -1, dtype=np.int64)
    phi[G.identity] = G.identity
    gens = G.gen_ordinals
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, gen_images):
                y = int(G.mult[x, g])
                val = int(G.mult[phi[x], im])
                if phi[y] < 0:
                    phi[y] = val
                    nxt.append(y)
                elif phi[y] != val:
                    raise ConstructionError("generator images do not define a homomorphism")
        frontier = nxt
    if len(np.unique(phi)) != n:
        raise ConstructionError("action is not bijective on N")
    # full table check of the homomorphism property
    lhs = phi[G.mult.astype(np.int64)]
    rhs = G.mult[np.ix_(phi, phi)]
    if not np.array_equal(lhs, rhs):
        raise ConstructionError("action is not a homomorphism of N")
    return phi


def _action_tables(N: PermGroup, H: PermGroup, action: ActionSpec) -> np.ndarray:
    """``tab[h]`` is the automorphism n -> h^-1 n h of N, as an ordinal map, for every h in H."""
    nN, nH = N.order, H.order
    ident = np.arange(nN)
    if not action.images:
        return np.tile(ident, (nH, 1))
    if len(action.images) != len(H.generators):
        raise ConstructionError(
            f"action lists {len(action.images)} maps but H has {len(H.generators)} generators")
    gen_auts = []
    for row in action.images:
        if len(row) != len(N.generators):
            raise ConstructionError(
                f"each map needs {len(N.generators)} images, got {len(row)}")
        ims = [N.ordinal(parse_cycles(t, N.degree)) for t in row]
        gen_auts.append(_extend_map(N, ims))
    # h -> aut is a homomorphism into Aut(N) with "apply first, then second" order
    tab = np.full((nH, nN), -1, dtype=np.int64)
    tab[H.identity] = ident
    done = np.zeros(nH, dtype=bool)
    done[H.identity] = True
    frontier = [H.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, aut in zip(H.gen_ordinals, gen_auts):
                y = int(H.mult[x, g])
                val = aut[tab[x]]
                if not done[y]:
                    tab[y] = val
                    done[y] = True
                    nxt.append(y)
                elif not np.array_equal(tab[y], val):
                    raise ConstructionError("action does not respect the relations of H")
        frontier = nxt
    Hm = H.mult.astype(np.int64)
    for a in range(nH):
        for b in range(nH):
            if not np.array_equal(tab[Hm[a, b]], tab[b][tab[a]]):
                raise ConstructionError("action does not respect the relations of H")
    return tab


def semidirect_product(N: PermGroup, H: PermGroup, action: ActionSpec,
                       cap: int = DEFAULT_CAP) -> PermGroup:
    """N x| H in its right regular representation on |N|*|H| points.

    Elements are pairs (n, h) standing for n*h; then
    (n1 h1)(n2 h2) = n1 * (h1 n2 h1^-1) * h1 h2.
    """
    nN, nH = N.order, H.order
    if nN * nH > cap:
        raise CapExceeded(f"|N|*|H| = {nN * nH} exceeds cap {cap}", cap)
    tab = _action_tables(N, H, action)
    Nm, Hm, Hinv = N.mult, H.mult, H.inv

    def point(n, h):
        return n * nH + h

    def right_mult(gn, gh):
        img = np.empty(nN * nH, dtype=np.int64)
        tw = tab[Hinv]  # tw[h1] = n -> h1 n h1^-1
        for n1 in range(nN):
            for h1 in range(nH):
                n = Nm[n1, tw[h1][gn]]
                img[point(n1, h1)] = point(n, Hm[h1, gh])
        return _perm(img)

    gens = [right_mult(g, H.identity) for g in N.gen_ordinals]
    gens += [right_mult(N.identity, g) for g in H.gen_ordinals]
    return generate(nN * nH, gens, cap=cap, label=f"sdp({N.label},{H.label})")


def sdp_element(N: PermGroup, H: PermGroup, n: Permutation | None, h: Permutation | None,
                G: PermGroup) -> int:
    """Ordinal in ``G = semidirect_product(N, H, .)`` of the pair n*h."""
    ni = N.identity if n is None else N.ordinal(n)
    hi = H.identity if h is None else H.ordinal(h)
    nH = H.order
    # the element n*h sends the identity point (0) to point(n, h); regular action is free
    target = ni * nH + hi
    col = G.table[:, 0]
    hits = np.nonzero(col == target)[0]
    return int(hits[0])


def quotient_group(G: PermGroup, N: np.ndarray | int, cap: int = DEFAULT_CAP,
                   label: str | None = None) -> PermGroup:
    """G/N acting on the cosets of N by right multiplication.

    ``N`` is either an array of element ordinals or an integer bitset.  Cosets
    are numbered by increasing minimal ordinal.
    """
    members = _members(N, G.order)
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    if not mask[G.identity] or len(G.closure(members.tolist())) != len(members):
        raise ConstructionError("N is not a subgroup of G")
    for g in G.gen_ordinals:
        if not mask[G.conj(g)[members]].all():
            raise ConstructionError("N is not normal in G")
    # coset of x is N x = {n x}
    coset_of = np.full(G.order, -1, dtype=np.int64)
    k = 0
    for x in range(G.order):
        if coset_of[x] < 0:
            coset_of[G.mult[members, x]] = k
            k += 1
    reps = np.array([int(np.nonzero(coset_of == c)[0][0]) for c in range(k)])
    gens = [_perm(coset_of[G.mult[reps, g]]) for g in G.gen_ordinals]
    out = generate(k, gens, cap=cap, label=label or f"quot({G.label})")
    return out


def _members(N, n: int) -> np.ndarray:
    if isinstance(N, (int, np.integer)) and not isinstance(N, bool):
        bits = int(N)
        return np.array([i for i in range(n) if bits >> i & 1], dtype=np.int64)
    return np.asarray(N, dtype=np.int64)


# Non-supersolvable group of order 75: <a, b, c | a^5 = b^5 = c^3 = 1, [a, b] = 1,
#   c^-1 a c = (ab)^-1, c^-1 b c = a>, realised as (Z5 x Z5) x| Z3.
ORDER75_PRESENTATION = ("a^5 = b^5 = c^3 = 1, [a,b] = 1, "
                        "c^-1 a c = (ab)^-1, c^-1 b c = a")


def order75_parts(cap: int = DEFAULT_CAP):
    """Return (G, N, H, a, b, c) with a, b, c as ordinals of G."""
    N = direct_product(named_group("cyclic", 5), named_group("cyclic", 5))
    N.label = "C5xC5"
    H = named_group("cyclic", 3)
    a, b = N.generators
    ab_inv = N.elements[int(N.inv[N.mult[N.ordinal(a), N.ordinal(b)]])]
    action = ActionSpec([[str(ab_inv), str(a)]])
    G = semidirect_product(N, H, action, cap=cap)
    G.label = "@R17-order75"
    ea = sdp_element(N, H, a, None, G)
    eb = sdp_element(N, H, b, None, G)
    ec = sdp_element(N, H, None, H.generators[0], G)
    return G, N, H, ea, eb, ec


def order75_group(cap: int = DEFAULT_CAP) -> PermGroup:
    return order75_parts(cap)[0]


def power(G: PermGroup, x: int, k: int) -> int:
    r = G.identity
    for _ in range(k % int(G.orders[x]) if k >= 0 else (-k) % int(G.orders[x])):
        r = int(G.mult[r, x])
    return r if k >= 0 else int(G.inv[r])


def word(G: PermGroup, *letters: int) -> int:
    r = G.identity
    for x in letters:
        r = int(G.mult[r, x])
    return r
