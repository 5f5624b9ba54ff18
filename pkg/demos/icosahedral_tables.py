"""Walk through the Steinberg ordering of the icosahedral group H3.

Run with ``python demos/icosahedral_tables.py``.  Everything printed is exact;
``t`` stands for the golden ratio 2cos(pi/5).
"""

from coxlattice.rootsystem import build, dot_table

sd = build("H3")
print(f"H3: rank {sd.n}, Coxeter number {sd.h}, {sd.N} positive roots")
print(f"first {sd.s} simple roots are mutually orthogonal, so are the remaining {sd.n - sd.s}\n")

# The positive roots come out in the order produced by alternately applying
# the two halves of the bipartite Coxeter element.
print("positive roots in simple-root coordinates:")
for i in range(1, sd.N + 1):
    coords = ", ".join(c.poly_string() for c in sd.root(i))
    print(f"  rho_{i:<2} = ({coords})")

# Each rho_i has a partner mu_i with gamma mu_i = mu_i - 2 rho_i.
g = sd.apply_gamma
for i in (1, 7, 15):
    lhs = g(sd.mu(i))
    rhs = tuple(m - 2 * r for m, r in zip(sd.mu(i), sd.root(i)))
    print(f"gamma mu_{i} == mu_{i} - 2 rho_{i}: {lhs == rhs}")

table = dot_table(sd)
print("\nmu_i . rho_j, upper-left 6x6 block:")
for row in table[:6]:
    print("  " + "  ".join(f"{x.poly_string():>6}" for x in row[:6]))
below = all(table[i + k][i] == 0 for i in range(sd.N) for k in range(1, sd.n) if i + k < sd.N)
print(f"\nthe n-1 entries just below each diagonal 1 vanish: {below}")
