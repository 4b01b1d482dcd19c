"""The corpus manifest and the per-group claims checked against it."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .chains import delta
from .lattice import Lattice, enumerate_subgroups
from .structure import predicate_suite, supersolvable_oracle, verify_minimal_chain_theorems


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: str
    expected: dict[str, str]
    note: str

    @property
    def slow(self) -> bool:
        return self.expected.get("slow") == "yes"

    @property
    def order(self) -> int:
        return int(self.expected["order"])


def parse_manifest(text: str) -> dict[str, CorpusEntry]:
    out: dict[str, CorpusEntry] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"manifest line {lineno}: expected 4 '|'-separated fields")
        name, spec, exp, note = parts
        expected = dict(kv.split("=", 1) for kv in exp.split())
        if name in out:
            raise ValueError(f"manifest line {lineno}: duplicate name {name!r}")
        out[name] = CorpusEntry(name, spec, expected, note)
    return out


@lru_cache(maxsize=1)
def load_manifest() -> dict[str, CorpusEntry]:
    text = resources.files("maxchain").joinpath("data/corpus.txt").read_text()
    return parse_manifest(text)


def corpus_entries(include_slow: bool = False, max_order: int | None = None) -> list[CorpusEntry]:
    return [e for e in load_manifest().values()
            if (include_slow or not e.slow) and (max_order is None or e.order <= max_order)]


@dataclass
class Claim:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class EntryResult:
    entry: CorpusEntry
    claims: list[Claim] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_json(self) -> dict:
        return {
            "name": self.entry.name,
            "spec": self.entry.spec,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "claims": [{"claim": c.name, "passed": c.passed, "detail": c.detail}
                       for c in self.claims],
        }


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def check_entry(entry: CorpusEntry, lattice: Lattice | None = None, cap: int | None = None
                ) -> EntryResult:
    from .speclang import build

    t0 = time.perf_counter()
    res = EntryResult(entry)
    G = build(entry.spec, cap=cap)
    L = lattice if lattice is not None else enumerate_subgroups(G)
    exp = entry.expected
    add = res.claims.append

    add(Claim("order", str(G.order) == exp["order"], f"{G.order}"))
    if "subgroups" in exp:
        add(Claim("subgroup count", str(len(L)) == exp["subgroups"], f"{len(L)}"))
    preds = predicate_suite(G, L)
    iwasawa, prime_index = supersolvable_oracle(G, L)
    add(Claim("identity graded <=> supersolvable <=> prime-index maximals",
              iwasawa == preds.supersolvable == prime_index,
              f"graded={iwasawa} recursive={preds.supersolvable} prime_index={prime_index}"))
    for key in ("supersolvable", "solvable"):
        if key in exp:
            got = _yn(getattr(preds, key))
            add(Claim(key, got == exp[key], got))
    add(Claim("abelian => nilpotent => supersolvable => solvable",
              (not preds.abelian or preds.nilpotent)
              and (not preds.nilpotent or preds.supersolvable)
              and (not preds.supersolvable or preds.solvable), ""))
    if "delta" in exp:
        d = delta(L).value
        add(Claim("delta", str(d) == exp["delta"], f"{d}"))
    verdict = verify_minimal_chain_theorems(G, L)
    failed = [k for k, ok in verdict.clauses.items() if not ok]
    add(Claim("minimal-subgroup chain theorems", not failed,
              "falsified: " + ", ".join(failed) if failed else
              f"hyp23={verdict.hypothesis_23} hyp_all={verdict.hypothesis_all}"))
    res.seconds = time.perf_counter() - t0
    return res
