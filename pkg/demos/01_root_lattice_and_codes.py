"""Walk through sqrt2 A_2: its dual, the code labels on N°/N, and which labels glue to even lattices."""
from itertools import product

from orbilat import codes as cd
from orbilat import lattice as lc

p = 3
N = lc.build_N(p)
print("Gram of N:", N.gram)

dual = lc.dual_lattice(N)
disc = lc.index(dual, N)
print("N°/N =", disc, "of order", disc.order)

# every coset of N in N° carries a label (u, a) with u in Z_2^{p-1}, a in Z_p
print("\nlabel      min norm in coset   q(u)")
for u, a in product(product((0, 1), repeat=p - 1), range(p)):
    w = cd.weight(p, u, (a,))
    print(f"u={u} a={a}   {str(w):>8}          {cd.qform(p, u)}")

# the code pair decides parity
for gens in ([], [(1, 1)], [(1, 0)]):
    c = cd.CodeC.span(p, 1, gens)
    lat = cd.to_lattice(c, cd.CodeD.zero(p, 1))
    print(f"\nC = span{gens}:", lc.parity_report(lat), "index over N:", lc.index(lat, N).order)

print("\ndual pairs at p=3, d=1:")
for c, dc in cd.all_subgroups_E(p, 1):
    lat = cd.to_lattice(c, dc)
    same = lc.dual_lattice(lat) == cd.to_lattice(c.dual(), dc.dual())
    print(f"  C dim {c.dim}, D dim {dc.dim}:  dual matches code dual -> {same}")
