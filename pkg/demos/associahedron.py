"""EX(gamma) versus the generalised associahedron.

For A2 both complexes are the pentagon.  The same comparison runs for any
type; non-crystallographic ones need ``extension=True``.
"""

from coxlattice.absorder import group
from coxlattice.cluster import ClusterData, build_GA, isomorphism_check
from coxlattice.complexes import build_EX, sphere_check

G = group("A2")
cd = ClusterData(G)
print("almost-positive roots of A2:", cd.roots)
print("\ncompatibility degrees:")
print(cd.table_csv())

ex, ga = build_EX(G), build_GA(G, data=cd)
print("EX edges:", ex.edges())
print("GA edges:", ga.edges())
print("identical:", isomorphism_check(ex, ga)["passed"])

for symbol in ("B3", "H3", "D4"):
    G = group(symbol)
    ex = build_EX(G)
    rep = isomorphism_check(ex, build_GA(G, extension=True))
    print(f"{symbol}: {len(ex.facets())} facets, sphere {sphere_check(ex, G.n).passed}, EX = GA {rep['passed']}")
