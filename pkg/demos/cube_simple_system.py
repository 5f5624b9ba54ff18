"""A length-three element of the hyperoctahedral group B4 and its simple system.

sigma is the signed cycle (x, y, z, w) -> (-z, x, y, w).  Below gamma it moves
a 3-dimensional space; the roots it "sees" form a flag complex whose first
facet is spelled out by the theta word.
"""

from coxlattice.absorder import group, reflection_set
from coxlattice.complexes import build_X, build_X_sigma, first_facet, simple_system

G = group("B4")
sigma = G.word([1, 3, 6])  # R(rho_6) R(rho_3) R(rho_1)
print(f"l(sigma) = {G.length(sigma)}, sigma <= gamma: {G.leq(sigma, G.gamma)}")

P = reflection_set(sigma)
print(f"reflections below sigma: {list(P)}")

ssd = simple_system(G, sigma)
print(f"simple system Delta: {ssd.delta}")
print(f"epsilon word: {ssd.epsilon}  (tau positions {[ssd.tau_position(e) for e in ssd.epsilon]})")
print(f"theta word (sorted epsilon): {ssd.theta}")

X = build_X(G)
Xs = build_X_sigma(G, sigma, X)
print(f"\nX(sigma): {len(Xs.vertices)} vertices, {len(Xs.edges())} edges, {len(Xs.facets())} facets")
print(f"first facet {first_facet(G, sigma, X)} agrees with the lexicographically first top simplex")

# alpha_3 and alpha_4 both show up at the end of the ordering
for i in (15, 16):
    print(f"rho_{i} = {tuple(c.poly_string() for c in G.sd.root(i))}")
