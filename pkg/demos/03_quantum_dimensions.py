"""Sweep admissible code pairs and tabulate twisted-sector data."""
from orbilat import checks
from orbilat import codes as cd
from orbilat import orbifold as ob
from orbilat import sigma as sg

print(" p d  dim C  dim D  s   dim T  #twisted  qdim^2  |L°/L|")
for p, d in ((3, 1), (3, 2), (5, 1), (5, 2)):
    full = sg.coxeter_sigma(p, d)
    for c, dc in checks.admissible_pairs(p, d):
        lat = cd.to_lattice(c, dc)
        sig = full.restrict(lat)
        for s in range(1, p):
            sec = ob.twisted_sector(lat, sig.power(s))
            q = ob.qdim_CD(c, dc, s)
            print(f" {p} {d}  {c.dim:>5}  {dc.dim:>5}  {s}  {sec.dim_T:>6}  {sec.num_twisted:>8}  "
                  f"{str(q.square):>6}  {abs(lat.det)}")

# qdim = 1 exactly for self-dual C
for c in cd.enumerate_codes(3, 2, "C", sigma_invariant=True, even=True, self_dual=True):
    print("\nself-dual C", c.basis, "group-like:", ob.group_like_fusion(c, cd.CodeD.zero(3, 2)))
