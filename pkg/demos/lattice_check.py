"""Meets, joins and an exhaustive lattice check on [I, gamma].

The meet is read off a maximum clique of X(gamma) inside the common
reflections; the join comes from the meet through the Kreweras complement.
"""

import sys

from coxlattice.absorder import group, interval, kreweras
from coxlattice.lattice import MeetJoin, verify_lattice

symbol = sys.argv[1] if len(sys.argv) > 1 else "B3"
G = group(symbol)
P = interval(G)
print(f"{symbol}: |[I, gamma]| = {len(P)}, rank sizes {P.rank_sizes()}")

mj = MeetJoin(G)
a, b = G.reflections[0], G.reflections[-1]
m = mj.meet(a, b)
j = mj.join(a, b)
print(f"R(rho_1) ^ R(rho_N) has length {G.length(m.element)}")
print(f"R(rho_1) v R(rho_N) has length {G.length(j)}")
# the complement reverses the order, so it swaps meets and joins
print(f"K(a v b) == K(a) ^ K(b): {kreweras(j) == mj.meet(kreweras(a), kreweras(b)).element}")

report = verify_lattice(P, mj.X, timing=True)
print(f"checked {report.pairs_checked} pairs against brute-force glb/lub: "
      f"{'all agree' if report.passed else report.failures[:3]} ({report.wall_time_ms} ms)")
