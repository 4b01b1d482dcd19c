"""Tabulate |G|, subgroup count, delta and the identity's chain lengths over the manifest."""
import argparse
import time

from maxchain.chains import ChainTable, delta
from maxchain.corpus import corpus_entries
from maxchain.lattice import enumerate_subgroups
from maxchain.speclang import build
from maxchain.structure import is_supersolvable

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--slow", action="store_true")
ap.add_argument("--max-order", type=int, default=None)
args = ap.parse_args()

print(f"{'name':<14} {'order':>6} {'subgroups':>9} {'delta':>6} {'lengths(1)':<12} {'ss':<3} {'sec':>6}")
for e in corpus_entries(include_slow=args.slow, max_order=args.max_order):
    t0 = time.perf_counter()
    G = build(e.spec)
    L = enumerate_subgroups(G)
    d = delta(L).value
    lengths = sorted(ChainTable(L).lengths(L.bottom))
    ss = "y" if is_supersolvable(G) else "n"
    print(f"{e.name:<14} {G.order:>6} {len(L):>9} {d:>6} {str(lengths):<12} {ss:<3} "
          f"{time.perf_counter() - t0:>6.2f}")
