"""Command line front end: ``maxchain {info,lattice,chains,delta,verify,corpus}``.

Reports are JSON (top-level ``format`` field) unless ``--human`` is given.
Exit codes: 0 pass, 1 claim falsified, 2 usage or parse error,
3 order or chain cap exceeded, 4 corrupt cache entry.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import cache
from .chains import ChainTable, delta
from .constructors import ConstructionError
from .lattice import atoms_coatoms
from .perm import DEFAULT_CAP, CapExceeded, PermError
from .speclang import SpecError, build, parse_selector, resolve_selector
from .structure import (group_fingerprint, is_supersolvable, structure_report,
                        supersolvable_oracle, verify_minimal_chain_theorems)

FORMAT = 1
EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_CAP, EXIT_CACHE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, human: str) -> None:
    if args.human:
        print(human)
    else:
        print(json.dumps({"format": FORMAT, **payload}, indent=2, sort_keys=True))


def _table(rows: list[tuple], header: tuple) -> str:
    rows = [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(str(h)), *(len(r[k]) for r in rows)) if rows else len(str(h))
              for k, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join([fmt.format(*header), fmt.format(*("-" * w for w in widths))]
                     + [fmt.format(*r) for r in rows])


def _group_and_lattice(args):
    G = build(args.group, cap=args.cap)
    L = cache.lattice_for(G, use_cache=not args.no_cache)
    return G, L


def _node_from_selector(G, L, text: str) -> int:
    sel = parse_selector(text)
    return L.lookup_members(resolve_selector(G, sel, lattice=L))


# -- commands ----------------------------------------------------------------

def cmd_info(args) -> int:
    G, L = _group_and_lattice(args)
    rep = structure_report(G, L)
    fp = group_fingerprint(G)
    payload = {"group": G.label, "order": G.order, "degree": G.degree, "digest": G.digest,
               "subgroups": len(L), "structure": rep.to_json(L), "fingerprint": fp.to_json()}
    p = rep.predicates
    human = _table([
        ("group", G.label), ("order", G.order), ("degree", G.degree), ("subgroups", len(L)),
        ("abelian / nilpotent", f"{p.abelian} / {p.nilpotent}"),
        ("supersolvable / solvable", f"{p.supersolvable} / {p.solvable}"),
        ("|Z| |G'| |Phi| |F|", " ".join(str(L.order(i)) for i in
                                       (rep.center, rep.derived, rep.frattini, rep.fitting))),
        ("minimal normal orders", [L.order(i) for i in rep.minimal_normals]),
    ], ("field", "value"))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_lattice(args) -> int:
    G, L = _group_and_lattice(args)
    layers = atoms_coatoms(L)
    if args.dot:
        text = L.to_dot()
        if args.dot == "-":
            sys.stdout.write(text)
            return EXIT_OK
        with open(args.dot, "w") as fh:
            fh.write(text)
    by_order: dict[int, int] = {}
    for h in L.nodes:
        by_order[h.order] = by_order.get(h.order, 0) + 1
    payload = {"group": G.label, "order": G.order, "nodes": len(L), "edges": len(L.edges),
               "classes": len(L.classes), "by_order": {str(k): v for k, v in sorted(by_order.items())},
               "minimal": len(layers.minimal), "maximal": len(layers.maximal),
               "second_maximal": len(layers.second_maximal),
               "second_maximal_universal": len(layers.second_maximal_universal)}
    human = _table([(k, v) for k, v in payload.items() if k != "by_order"]
                   + [(f"order {k}", v) for k, v in sorted(by_order.items())], ("field", "value"))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_chains(args) -> int:
    G, L = _group_and_lattice(args)
    i = _node_from_selector(G, L, args.subgroup)
    target = _node_from_selector(G, L, args.target) if args.target else None
    rep = ChainTable(L, target).report(i)
    payload = {"group": G.label, "subgroup_order": L.order(i), **rep.to_json(),
               "witness_short_orders": [L.order(x) for x in rep.witness_short],
               "witness_long_orders": [L.order(x) for x in rep.witness_long]}
    human = _table([
        ("subgroup", f"node {i}, order {L.order(i)}"),
        ("target", f"node {rep.target}, order {L.order(rep.target)}"),
        ("lengths", sorted(rep.lengths)), ("graded", rep.graded),
        ("shortest chain (orders)", payload["witness_short_orders"]),
        ("longest chain (orders)", payload["witness_long_orders"]),
    ], ("field", "value"))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_delta(args) -> int:
    G, L = _group_and_lattice(args)
    d = delta(L)
    payload = {"group": G.label, "order": G.order, "delta": d.to_json(L)}
    counts: dict[int, int] = {}
    for i in d.offenders:
        counts[L.order(i)] = counts.get(L.order(i), 0) + 1
    human = f"delta({G.label}) = {d.value}\n" + _table(sorted(counts.items()),
                                                      ("offender order", "count"))
    _emit(args, payload, human)
    return EXIT_OK


def cmd_verify(args) -> int:
    G, L = _group_and_lattice(args)
    v = verify_minimal_chain_theorems(G, L)
    recursive = is_supersolvable(G)
    graded, prime_index = supersolvable_oracle(G, L)
    cross = {"identity_graded": graded, "recursive": recursive, "prime_index_maximals": prime_index,
             "agree": graded == recursive == prime_index}
    ok = v.ok and cross["agree"]
    payload = {**v.to_json(), "supersolvable_checks": cross, "passed": ok}
    rows = [(k, "holds" if c else "FALSIFIED") for k, c in v.clauses.items()]
    rows += [(f"supersolvable: {k}", val) for k, val in cross.items()]
    human = (f"{G.label}: hypothesis_23={v.hypothesis_23} hypothesis_all={v.hypothesis_all}"
             f" vacuous={v.vacuous}\n" + _table(rows, ("clause", "verdict")))
    _emit(args, payload, human)
    return EXIT_OK if ok else EXIT_FALSIFIED


def _check_one(name: str, cap: int, use_cache: bool) -> dict:
    from .corpus import check_entry, load_manifest
    from .speclang import build as _build

    entry = load_manifest()[name]
    G = _build(entry.spec, cap=cap)
    return check_entry(entry, cache.lattice_for(G, use_cache=use_cache), cap=cap).to_json()


def cmd_corpus(args) -> int:
    from . import acceptance
    from .corpus import corpus_entries

    t0 = time.perf_counter()
    names = [e.name for e in corpus_entries(include_slow=args.slow)]
    use_cache = not args.no_cache
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            entries = list(ex.map(_check_one, names, [args.cap] * len(names),
                                  [use_cache] * len(names)))
    else:
        entries = [_check_one(n, args.cap, use_cache) for n in names]
    criteria = acceptance.run_all(slow=args.slow)
    ok = all(c.passed for c in criteria) and all(e["passed"] for e in entries)
    payload = {"entries": entries, "criteria": [c.to_json() for c in criteria], "passed": ok,
               "seconds": round(time.perf_counter() - t0, 3)}
    human = (_table([(e["name"], "PASS" if e["passed"] else "FAIL", e["seconds"],
                      ", ".join(c["claim"] for c in e["claims"] if not c["passed"]) or "-")
                     for e in entries], ("entry", "result", "seconds", "failed claims"))
             + "\n\n" + "\n".join(c.line() for c in criteria))
    _emit(args, payload, human)
    return EXIT_OK if ok else EXIT_FALSIFIED


# -- entry point -------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help=f"largest group order to build (default {DEFAULT_CAP})")
    common.add_argument("--human", action="store_true", help="print tables instead of JSON")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the lattice cache")

    parser = _Parser(prog="maxchain", description="Subgroup lattices and maximal chains.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_cmd(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--group", "-g", required=True, help='group spec, e.g. "prod(A(5), C(2))"')
        p.set_defaults(fn=fn)
        return p

    group_cmd("info", cmd_info, "order, predicates and distinguished subgroups")
    p = group_cmd("lattice", cmd_lattice, "subgroup lattice summary")
    p.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as DOT ('-' for stdout)")
    p = group_cmd("chains", cmd_chains, "maximal chain lengths from a subgroup")
    p.add_argument("--subgroup", "-s", default="trivial",
                   help="selector: trivial | center | derived | gens: <cycles> | order:<k>:<i>")
    p.add_argument("--target", "-t", help="selector for the top of the interval (default: whole group)")
    group_cmd("delta", cmd_delta, "count subgroups with maximal chains of unequal length")
    group_cmd("verify", cmd_verify, "check the minimal-subgroup chain theorems on a group")
    p = sub.add_parser("corpus", parents=[common], help="run the manifest and the acceptance criteria")
    p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes for manifest entries")
    p.add_argument("--slow", action="store_true", help="include the slow entries and criteria")
    p.set_defaults(fn=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, PermError, ConstructionError) as e:
        print(f"maxchain: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as e:
        print(f"maxchain: cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except cache.CacheError as e:
        print(f"maxchain: cache: {e}", file=sys.stderr)
        return EXIT_CACHE
    except ValueError as e:  # e.g. a selector naming a non-subgroup
        print(f"maxchain: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
