"""A small language for naming groups, e.g. ``prod(A(5), C(2))`` or
``gens[4: (1 2), (1 3), (1 4)]``.

Grammar::

    spec     := NAME "(" INT ")"            NAME in S A C D Q SD
              | "K4"
              | ("GL2" | "SL2" | "PSL2") "(" INT ")"
              | "prod(" spec "," spec ")"
              | "sdp(" spec "," spec ";" action ")"
              | "gens[" INT ":" perm ("," perm)* "]"
              | "quot(" spec ";" selector ")"
              | "@" corpus-name
    action   := "trivial" | map ("|" map)*
    map      := "[" perm ("," perm)* "]"
    selector := "trivial" | "center" | "derived" | "gens:" perm ("," perm)*
              | "order:" INT ":" INT
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

NAMED = {"S": "symmetric", "A": "alternating", "C": "cyclic", "D": "dihedral",
         "Q": "quaternion", "SD": "semidihedral"}
NAMED_SHORT = {v: k for k, v in NAMED.items()}
LINEAR = ("GL2", "SL2", "PSL2")

Cycles = tuple[tuple[int, ...], ...]


class SpecError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0, expected: str = ""):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.expected = line, col, expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"line {line}, column {col}: {message}{detail}")


def perm_text(cycles: Cycles) -> str:
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


@dataclass(frozen=True)
class Named:
    kind: str
    n: int

    def __str__(self):
        return "K4" if self.kind == "klein_four" else f"{NAMED_SHORT[self.kind]}({self.n})"


@dataclass(frozen=True)
class Linear:
    kind: str
    p: int

    def __str__(self):
        return f"{self.kind}({self.p})"


@dataclass(frozen=True)
class Prod:
    left: "GroupSpec"
    right: "GroupSpec"

    def __str__(self):
        return f"prod({self.left}, {self.right})"


@dataclass(frozen=True)
class Sdp:
    normal: "GroupSpec"
    acting: "GroupSpec"
    action: tuple[tuple[Cycles, ...], ...]  # empty: trivial action

    def __str__(self):
        if not self.action:
            act = "trivial"
        else:
            act = " | ".join("[" + ", ".join(perm_text(c) for c in m) + "]" for m in self.action)
        return f"sdp({self.normal}, {self.acting}; {act})"


@dataclass(frozen=True)
class Gens:
    degree: int
    perms: tuple[Cycles, ...]

    def __str__(self):
        return f"gens[{self.degree}: " + ", ".join(perm_text(c) for c in self.perms) + "]"


@dataclass(frozen=True)
class Selector:
    kind: str  # trivial | center | derived | gens | order
    perms: tuple[Cycles, ...] = ()
    k: int = 0
    i: int = 0

    def __str__(self):
        if self.kind == "gens":
            return "gens: " + ", ".join(perm_text(c) for c in self.perms)
        if self.kind == "order":
            return f"order:{self.k}:{self.i}"
        return self.kind


@dataclass(frozen=True)
class Quot:
    spec: "GroupSpec"
    selector: Selector

    def __str__(self):
        return f"quot({self.spec}; {self.selector})"


@dataclass(frozen=True)
class CorpusRef:
    name: str

    def __str__(self):
        return f"@{self.name}"


GroupSpec = Union[Named, Linear, Prod, Sdp, Gens, Quot, CorpusRef]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")
_CORPUS = re.compile(r"[A-Za-z0-9_.\-]+")


class _Parser:
    def __init__(self, text: str, corpus_names=None):
        self.text = text
        self.pos = 0
        self.corpus_names = corpus_names

    def error(self, msg, expected=""):
        raise SpecError(msg, self.text, self.pos, expected)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        self.ws()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos:self.pos + 10] or "end of input"
            self.error(f"unexpected {found!r}", repr(s))
        self.pos += len(s)

    def integer(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("missing integer", "an integer")
        self.pos = m.end()
        return int(m.group())

    def perm(self) -> Cycles:
        self.ws()
        if self.text.startswith("id", self.pos) and not self.text[self.pos + 2:self.pos + 3].isalnum():
            self.pos += 2
            return ()
        cycles = []
        if not self.peek("("):
            self.error("expected a permutation", "'(' or 'id'")
        while self.peek("("):
            start = self.pos
            self.pos += 1
            pts = []
            while True:
                self.ws()
                if self.peek(")"):
                    self.pos += 1
                    break
                if pts and self.peek(","):
                    self.pos += 1
                pts.append(self.integer())
            if len(pts) == 1:
                self.pos = start
                self.error("a cycle needs at least two points")
            if pts:
                cycles.append(tuple(pts))
        seen: set[int] = set()
        for c in cycles:
            for x in c:
                if x in seen or x < 1:
                    self.error(f"point {x} repeated or invalid in permutation")
                seen.add(x)
        return tuple(cycles)

    def perm_list(self) -> tuple[Cycles, ...]:
        out = [self.perm()]
        while self.peek(","):
            self.pos += 1
            out.append(self.perm())
        return tuple(out)

    def selector(self) -> Selector:
        self.ws()
        for kw in ("trivial", "center", "derived"):
            if self.peek(kw):
                self.pos += len(kw)
                return Selector(kw)
        if self.peek("gens"):
            self.pos += 4
            self.expect(":")
            return Selector("gens", perms=self.perm_list())
        if self.peek("order"):
            self.pos += 5
            self.expect(":")
            k = self.integer()
            self.expect(":")
            return Selector("order", k=k, i=self.integer())
        self.error("unknown subgroup selector", "trivial, center, derived, gens: or order:k:i")

    def action(self):
        if self.peek("trivial"):
            self.pos += len("trivial")
            return ()
        maps = []
        while True:
            self.expect("[")
            maps.append(self.perm_list())
            self.expect("]")
            if not self.peek("|"):
                break
            self.pos += 1
        return tuple(maps)

    def spec(self) -> GroupSpec:
        self.ws()
        if self.peek("@"):
            self.pos += 1
            m = _CORPUS.match(self.text, self.pos)
            if not m:
                self.error("missing corpus name", "a corpus name")
            name = m.group()
            if self.corpus_names is not None and name not in self.corpus_names:
                self.error(f"unknown corpus name {name!r}")
            self.pos = m.end()
            return CorpusRef(name)
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a group", "a group name, prod, sdp, gens, quot or @name")
        word = m.group()
        start = self.pos
        self.pos = m.end()
        if word == "K4":
            return Named("klein_four", 0)
        if word == "prod":
            self.expect("(")
            left = self.spec()
            self.expect(",")
            right = self.spec()
            self.expect(")")
            return Prod(left, right)
        if word == "sdp":
            self.expect("(")
            normal = self.spec()
            self.expect(",")
            acting = self.spec()
            self.expect(";")
            act = self.action()
            self.expect(")")
            return Sdp(normal, acting, act)
        if word == "quot":
            self.expect("(")
            inner = self.spec()
            self.expect(";")
            sel = self.selector()
            self.expect(")")
            return Quot(inner, sel)
        if word == "gens":
            self.expect("[")
            deg = self.integer()
            if deg < 1:
                self.error("degree must be positive")
            self.expect(":")
            perms = []
            while True:
                self.ws()
                at = self.pos
                c = self.perm()
                top = max((max(cyc) for cyc in c), default=0)
                if top > deg:
                    self.pos = at
                    self.error(f"point {top} exceeds degree {deg}")
                perms.append(c)
                if not self.peek(","):
                    break
                self.pos += 1
            perms = tuple(perms)
            self.expect("]")
            return Gens(deg, perms)
        if word in LINEAR:
            self.expect("(")
            at = self.pos
            p = self.integer()
            self.expect(")")
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                self.pos = at
                self.error(f"{word} needs a prime, got {p}")
            return Linear(word, p)
        if word in NAMED:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            if n < 1:
                self.error("parameter must be positive")
            return Named(NAMED[word], n)
        self.pos = start
        self.error(f"unknown group name {word!r}")

    def parse(self) -> GroupSpec:
        out = self.spec()
        self.ws()
        if self.pos != len(self.text):
            self.error("trailing input", "end of input")
        return out


def parse_spec(text: str, corpus_names=None) -> GroupSpec:
    """Parse group-spec text into an AST; ``corpus_names`` restricts ``@name`` refs."""
    return _Parser(text, corpus_names).parse()


def parse_selector(text: str) -> Selector:
    p = _Parser(text)
    sel = p.selector()
    p.ws()
    if p.pos != len(text):
        p.error("trailing input", "end of input")
    return sel


# -- building --------------------------------------------------------------

def _perm_from(cycles: Cycles, degree: int):
    from .perm import Permutation

    img = list(range(degree))
    for c in cycles:
        if max(c) > degree:
            raise SpecError(f"point {max(c)} exceeds degree {degree}")
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return Permutation(tuple(img))


def resolve_selector(G, sel: Selector, lattice=None):
    """Element ordinals of the subgroup picked out by ``sel``.

    ``order:k:i`` needs the subgroup lattice; it is built on demand when
    ``lattice`` is not supplied.
    """
    import numpy as np

    if sel.kind == "trivial":
        return np.array([G.identity])
    if sel.kind == "center":
        return G.center_of(np.arange(G.order), G.gen_ordinals)
    if sel.kind == "derived":
        return G.derived_subgroup(G.gen_ordinals)
    if sel.kind == "gens":
        return G.closure([G.ordinal(_perm_from(c, G.degree)) for c in sel.perms])
    if sel.kind == "order":
        from .lattice import enumerate_subgroups

        L = lattice if lattice is not None else enumerate_subgroups(G)
        nodes = L.by_order(sel.k)
        if not 0 <= sel.i < len(nodes):
            raise SpecError(f"no subgroup number {sel.i} of order {sel.k} "
                            f"(there are {len(nodes)})")
        return L.members(nodes[sel.i])
    raise SpecError(f"unknown selector {sel.kind!r}")


def build(spec: GroupSpec | str, cap: int | None = None, _depth: int = 0):
    """Construct the PermGroup described by ``spec`` and label it canonically."""
    from . import constructors as K
    from .corpus import load_manifest
    from .perm import DEFAULT_CAP, generate

    cap = DEFAULT_CAP if cap is None else cap
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if _depth > 20:
        raise SpecError("corpus references nest too deeply")
    if isinstance(spec, Named):
        G = K.named_group(spec.kind, spec.n, cap=cap)
    elif isinstance(spec, Linear):
        G = K.linear_group(spec.kind, spec.p, cap=cap)
    elif isinstance(spec, Prod):
        G = K.direct_product(build(spec.left, cap, _depth + 1), build(spec.right, cap, _depth + 1),
                             cap=cap)
    elif isinstance(spec, Sdp):
        N = build(spec.normal, cap, _depth + 1)
        H = build(spec.acting, cap, _depth + 1)
        action = K.ActionSpec([[perm_text(c) for c in m] for m in spec.action] or None)
        try:
            G = K.semidirect_product(N, H, action, cap=cap)
        except K.ConstructionError as e:
            raise SpecError(f"invalid action in {spec}: {e}") from None
    elif isinstance(spec, Gens):
        G = generate(spec.degree, [_perm_from(c, spec.degree) for c in spec.perms], cap=cap)
    elif isinstance(spec, Quot):
        inner = build(spec.spec, cap, _depth + 1)
        members = resolve_selector(inner, spec.selector)
        try:
            G = K.quotient_group(inner, members, cap=cap)
        except K.ConstructionError as e:
            raise SpecError(f"cannot form {spec}: {e}") from None
    elif isinstance(spec, CorpusRef):
        manifest = load_manifest()
        if spec.name not in manifest:
            raise SpecError(f"unknown corpus name {spec.name!r}")
        G = build(manifest[spec.name].spec, cap, _depth + 1)
    else:
        raise TypeError(f"not a group spec: {spec!r}")
    G.label = str(spec)
    return G
