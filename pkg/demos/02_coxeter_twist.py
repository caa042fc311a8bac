"""The Coxeter element as a lattice isometry, its spectral data, and the twisted character."""
from orbilat import orbifold as ob
from orbilat import qseries as qs
from orbilat import sigma as sg

for p in (3, 5, 7):
    iso = sg.coxeter_sigma(p)
    spec = sg.spectral(iso)
    print(f"p={p}: char poly {list(spec.char_poly)}, m_d {spec.m}, r_i {list(spec.r)}, "
          f"lowest weight {ob.rho_twisted(spec, p)}")

print("\nsigma on the code k (p=3):")
act = sg.code_action(sg.coxeter_sigma(3), 3, 1)
for u in ((1, 0), (0, 1), (1, 1)):
    print(" ", u, "->", act(u))

iso = sg.coxeter_sigma(3)
spec = sg.spectral(iso)
ch = qs.twisted_char(spec, 3, 2, 3)
print("\ntwisted Heisenberg character, p=3:")
for e, c in list(ch.items())[:8]:
    print(f"  q^{e}: {c}")

# The character ratio approaches the quantum dimension only as y -> 0.
exact = float(ob.qdim_exact(iso.lattice, spec, 1))
print(f"\nexact qdim = {exact}")
print("   y      ratio          |ratio - exact|")
for y in (1.0, 0.5, 0.25, 0.1, 0.05, 0.025):
    r = qs.character_ratio(iso.lattice, spec, 1, y, 3)
    print(f"  {y:<6} {r:.12f}  {abs(r - exact):.3e}")
