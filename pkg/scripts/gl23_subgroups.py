"""List GL2(3)'s subgroup types and the second-maximal subgroups under both readings."""
from collections import Counter

from maxchain.chains import ChainTable
from maxchain.lattice import atoms_coatoms, enumerate_subgroups
from maxchain.speclang import build
from maxchain.structure import fingerprint

L = enumerate_subgroups(build("GL2(3)"))
types = Counter(fingerprint(L, i) for i in range(len(L)))
print(f"{len(L)} subgroups, {len(types)} isomorphism fingerprints")
for fp, k in sorted(types.items(), key=lambda t: (t[0].order, t[0].order_histogram)):
    hist = " ".join(f"{o}:{c}" for o, c in fp.order_histogram)
    print(f"  order {fp.order:>2}  x{k:<3} abelian={fp.abelian!s:<5}  element orders {hist}")

t = ChainTable(L)
layers = atoms_coatoms(L)
for name, nodes in (("maximal in some maximal", layers.second_maximal),
                    ("maximal in every maximal above", layers.second_maximal_universal)):
    bad = [i for i in nodes if not t.graded(i)]
    print(f"\n{name}: {len(nodes)} subgroups, {len(bad)} with chains of unequal length")
    for i in bad:
        r = t.report(i)
        print(f"  node {i} (order {L.order(i)}): lengths {sorted(r.lengths)}, "
              f"{[L.order(x) for x in r.witness_short]} vs {[L.order(x) for x in r.witness_long]}")
