"""Permutations on points 0..n-1 and exhaustively tabulated permutation groups.

Points are 0-based internally and 1-based in every piece of text.  The
product ``compose(a, b)`` means "apply ``a``, then ``b``", so
``compose(a, b).images[i] == b.images[a.images[i]]``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CAP = 5000


class PermError(ValueError):
    """Malformed permutation input or incompatible degrees."""


class CapExceeded(RuntimeError):
    """A group (or chain enumeration) outgrew the configured budget."""

    def __init__(self, message: str, cap: int):
        super().__init__(message)
        self.cap = cap


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise PermError(f"not a bijection on 0..{len(self.images) - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return to_cycle_string(self)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse ``"(1 2 3)(4 5)"`` style text (1-based labels) into a permutation.

    Cycles must be disjoint.  ``"id"`` and ``"()"`` denote the identity.
    Separators inside a cycle may be spaces or commas.
    """
    if degree < 1:
        raise PermError("degree must be positive")
    s = text.strip()
    if s in ("id", "()", ""):
        if s == "":
            raise PermError("empty permutation text")
        return Permutation.identity(degree)
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if not m:
            raise PermError(f"malformed cycle syntax at column {pos + 1} in {text!r}")
        body = m.group(1).replace(",", " ").split()
        if len(body) < 2:
            raise PermError(f"cycle needs at least two points: {m.group(0)!r}")
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise PermError(f"non-integer point in {m.group(0)!r}") from None
        for p in pts:
            if p < 1 or p > degree:
                raise PermError(f"point {p} outside 1..{degree}")
            if p in used:
                raise PermError(f"point {p} repeated in {text!r}")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
        pos = m.end()
    return Permutation(tuple(images))


def to_cycle_string(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    if a.degree != b.degree:
        raise PermError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[x] for x in a.images))


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, x in enumerate(a.images):
        out[x] = i
    return Permutation(tuple(out))


def element_order(g: Permutation) -> int:
    return math.lcm(1, *(len(c) for c in g.cycles()))


class PermGroup:
    """A permutation group together with its full element table.

    ``table`` holds the image arrays of all elements, sorted lexicographically;
    element ordinals everywhere downstream refer to rows of this table.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], table: np.ndarray,
                 label: str = ""):
        self.degree = degree
        self.generators = tuple(generators)
        self.table = table
        self.table.setflags(write=False)
        self.label = label

    def __repr__(self):
        return f"PermGroup({self.label or '?'}, degree={self.degree}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def elements(self) -> list[Permutation]:
        return [Permutation(tuple(int(x) for x in row)) for row in self.table]

    @cached_property
    def index(self) -> dict[Permutation, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @cached_property
    def identity(self) -> int:
        return 0  # the identity is the lexicographically least image array

    def ordinal(self, p: Permutation) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise PermError(f"{p} is not an element of {self.label or 'the group'}") from None

    @cached_property
    def gen_ordinals(self) -> list[int]:
        return [self.ordinal(g) for g in self.generators]

    # -- element lookup -------------------------------------------------

    @cached_property
    def _base(self) -> list[int]:
        """Points whose images determine an element uniquely."""
        n = self.order
        base: list[int] = []
        if n == 1:
            return base
        keys = np.zeros(n, dtype=np.int64)
        distinct = 1
        for pt in range(self.degree):
            trial = keys * self.degree + self.table[:, pt]
            k = len(np.unique(trial))
            if k > distinct:
                base.append(pt)
                keys, distinct = trial, k
                if distinct == n:
                    break
        return base

    @cached_property
    def _key_lookup(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        base = np.array(self._base, dtype=np.int64)
        if len(base) and self.degree ** len(base) >= 2 ** 62:
            raise CapExceeded("element keys overflow 64 bits", 0)
        radix = self.degree ** np.arange(len(base), dtype=np.int64)
        keys = self.table[:, base].astype(np.int64) @ radix if len(base) else np.zeros(1, np.int64)
        order = np.argsort(keys)
        return base, radix, (keys[order], order)

    def lookup(self, base_images: np.ndarray) -> np.ndarray:
        """Ordinals of elements given the images of the base points (rows)."""
        base, radix, (sorted_keys, perm) = self._key_lookup
        keys = base_images.astype(np.int64) @ radix
        pos = np.searchsorted(sorted_keys, keys)
        return perm[pos]

    @cached_property
    def mult(self) -> np.ndarray:
        """``mult[i, j]`` is the ordinal of "element i, then element j"."""
        n = self.order
        dtype = np.int16 if n < 2 ** 15 else np.int32
        out = np.empty((n, n), dtype=dtype)
        base = self._key_lookup[0]
        for i in range(n):
            # row j: images of the base points under e_i followed by e_j
            imgs = self.table[:, self.table[i, base]]
            out[i] = self.lookup(imgs)
        out.setflags(write=False)
        return out

    @cached_property
    def inv(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mult == self.identity)
        inv[rows] = cols
        return inv

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, indexed by ordinal."""
        n = self.order
        out = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        while (out == 0).any():
            done = (cur == self.identity) & (out == 0)
            out[done] = k
            cur = self.mult[cur, np.arange(n)]
            k += 1
        return out

    def conj(self, g: int) -> np.ndarray:
        """Ordinal map x -> g^-1 x g."""
        return self.mult[self.inv[g], self.mult[:, g]].astype(np.int64)

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b."""
        m, inv = self.mult, self.inv
        return int(m[m[m[inv[a], inv[b]], a], b])

    # -- subgroup arithmetic on ordinals --------------------------------

    def closure(self, gens: Iterable[int], start: np.ndarray | None = None) -> np.ndarray:
        """Sorted ordinals of the subgroup generated by ``gens``.

        ``start`` may be a boolean mask of a subgroup already known to lie in
        the result, provided ``gens`` also generates it; it only saves work.
        """
        gens = np.unique(np.fromiter(gens, dtype=np.int64))
        n = self.order
        seen = np.zeros(n, dtype=bool) if start is None else start.copy()
        seen[self.identity] = True
        frontier = np.nonzero(seen)[0]
        if len(gens) == 0:
            return frontier
        count = len(frontier)
        half = n // 2
        while len(frontier):
            nxt = self.mult[np.ix_(frontier, gens)].ravel()
            nxt = np.unique(nxt)
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            count += len(nxt)
            if count > half:
                return np.arange(n)  # Lagrange
            frontier = nxt
        return np.nonzero(seen)[0]

    def normal_closure(self, gens: Iterable[int], ambient_gens: Sequence[int]) -> np.ndarray:
        """Smallest subgroup containing ``gens`` and normalised by ``ambient_gens``."""
        gens = list(gens)
        members = self.closure(gens)
        while True:
            mask = np.zeros(self.order, dtype=bool)
            mask[members] = True
            extra = []
            for g in ambient_gens:
                c = self.conj(g)
                for x in gens:
                    y = int(c[x])
                    if not mask[y]:
                        extra.append(y)
            if not extra:
                return members
            gens = gens + extra
            members = self.closure(gens, start=mask)

    def derived_subgroup(self, gens: Sequence[int]) -> np.ndarray:
        comms = [self.commutator(a, b) for a in gens for b in gens]
        return self.normal_closure(comms, gens)

    def centralizes(self, x: int, gens: Sequence[int]) -> bool:
        return all(self.mult[x, g] == self.mult[g, x] for g in gens)

    def center_of(self, members: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        m = self.mult
        members = np.asarray(members, dtype=np.int64)
        g = np.asarray(gens, dtype=np.int64)
        if len(g) == 0:
            return members
        ok = (m[np.ix_(members, g)] == m[np.ix_(g, members)].T).all(axis=1)
        return members[ok]

    def small_generating_set(self, members: np.ndarray) -> list[int]:
        """Greedy generating set for the subgroup with the given ordinals."""
        target = len(members)
        gens: list[int] = []
        mask = np.zeros(self.order, dtype=bool)
        mask[self.identity] = True
        # large element orders first: fewer generators
        for x in sorted(members.tolist(), key=lambda v: (-int(self.orders[v]), v)):
            if mask[x]:
                continue
            gens.append(x)
            sub = self.closure(gens, start=mask)
            mask[:] = False
            mask[sub] = True
            if len(sub) == target:
                break
        return gens

    # ------------------------------------------------------------------

    def permutation(self, i: int) -> Permutation:
        return self.elements[i]

    def cycle_string(self, i: int) -> str:
        return to_cycle_string(self.elements[i])

    @cached_property
    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(f"{self.degree}:{self.order}:".encode())
        h.update(np.ascontiguousarray(self.table, dtype=np.int32).tobytes())
        return h.hexdigest()


def generate(degree: int, gens: Sequence[Permutation], cap: int = DEFAULT_CAP,
             label: str = "") -> PermGroup:
    """Enumerate ``<gens>`` breadth-first and return the tabulated group."""
    if degree < 1:
        raise PermError("degree must be positive")
    for g in gens:
        if g.degree != degree:
            raise PermError(f"generator {g} has degree {g.degree}, expected {degree}")
    gen_arrs = [np.array(g.images, dtype=np.int32) for g in gens if not g.is_identity()]
    ident = np.arange(degree, dtype=np.int32)
    seen = {ident.tobytes()}
    rows = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        block = np.stack(frontier)
        for g in gen_arrs:
            prod = g[block]  # row x, then g
            for r in prod:
                key = r.tobytes()
                if key not in seen:
                    seen.add(key)
                    rows.append(r)
                    nxt.append(r)
                    if len(rows) > cap:
                        raise CapExceeded(
                            f"group order exceeds cap {cap} (too large for desk-scale analysis)", cap)
        frontier = nxt
    table = np.stack(rows)
    order = np.lexsort(table.T[::-1])
    return PermGroup(degree, list(gens), np.ascontiguousarray(table[order]), label=label)
