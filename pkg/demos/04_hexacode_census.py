"""At p = 3 the code k is F_4 with sigma acting as multiplication by omega.

Reading the hexacode over F_4 as a binary code of length 12 gives a
sigma-invariant even self-dual C at d = 6; its census has 3^(6+2) modules.
"""
import time

from orbilat import codes as cd
from orbilat import orbifold as ob

F4 = {0: (0, 0), 1: (1, 0), "w": (0, 1), "w2": (1, 1)}  # omega = sigma(1)
HEXACODE = [
    [1, 0, 0, 1, "w", "w"],
    [0, 1, 0, "w", 1, "w"],
    [0, 0, 1, "w", "w", 1],
]

act = cd.sigma_k_action(3, 6)
gens = []
for row in HEXACODE:
    v = tuple(x for sym in row for x in F4[sym])
    gens += [v, act(v)]  # F_4-span = span of v and omega v
C = cd.CodeC.span(3, 6, gens)
print("dim C =", C.dim, " sigma-invariant:", C.is_sigma_invariant(),
      " even:", cd.is_q_isotropic(C), " self-dual:", C == C.dual())

for D in (cd.CodeD.zero(3, 6), cd.CodeD.span(3, 6, [(1, 1, 1, 0, 0, 0)])):
    t = time.time()
    cen = ob.irr_census(C, D)
    print(f"\nD dim {D.dim}: |Irr| = {cen['order']} (expected {cen['expected_order']})")
    print("  untwisted", cen["untwisted_modules"], " twisted per sector", cen["twisted_per_sector"])
    print("  twisted lowest weight", cen["rho_twisted"], " weights mod Z",
          [str(w) for w in cen["weights_mod_Z"]], f" ({time.time() - t:.1f}s)")
