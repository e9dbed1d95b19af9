"""Tour 2: idempotent frames and the Peirce decomposition.

A nontrivial idempotent e (with e.g1.e = e) splits M into four blocks
M = M11 + M12 + M21 + M22.  The complementary idempotent is never an actual
ring element here: it lives as a pair of operator tables (left_f, right_f)
realizing "complement . beta . a" and "a . beta . complement", which keeps
rings without a unity in scope.
"""

import numpy as np

from gammaring import (build_matrix_ring, canonical_frame, check_condition_ii,
                       check_condition_iii, check_condition_iv, check_martindale_family,
                       check_peirce_relations, make_group, peirce_decompose,
                       trivial_ring)

ring = build_matrix_ring(2, 2, 2)
gm = ring.m_group
E11 = gm.index_of((1, 0, 0, 0))
I = gm.index_of((1, 0, 0, 1))

frame = canonical_frame(ring, e=E11, gamma1=I, unity=I)
print("frame: e = E11, gamma1 = I, complement derived from the unity")
E21 = gm.index_of((0, 0, 1, 0))
print(f"left_f(I, E21) = index {frame.left_f[I, E21]}  (E21 minus E11.I.E21 = E21)")
print(f"left_f(I, e)   = index {frame.left_f[I, E11]}  (the complement kills e)")

pc = peirce_decompose(frame)
print("\nblock sizes:", {f"M{i}{j}": len(c) for (i, j), c in pc.components.items()})
print("product of sizes:", int(np.prod([len(c) for c in pc.components.values()])),
      "= |M| =", ring.m_order)

print("\nblock members as matrices:")
for (i, j), comp in sorted(pc.components.items()):
    mats = [ring.element_matrix(x, "m") for x in comp]
    print(f"  M{i}{j}: {mats}")

rel = check_peirce_relations(pc)
print(f"\nblock product relations hold? {rel.holds}")
print("  (Mij . Gamma . Mkl lands in Mil; Mij . gamma1 . Mkl = 0 whenever j != k)")

print("\n=== structural conditions behind the additivity machinery ===")
print(f"(ii)  no nonzero left annihilator:      {check_condition_ii(ring).holds}")
print(f"(iii) corner products reach everything: {check_condition_iii(ring, [frame]).holds}")
print(f"(iv)  corner annihilation forces zero:  {check_condition_iv(frame).holds}")
print(f"family verdict: {check_martindale_family(ring, [frame]).overall}")

trivial = trivial_ring(make_group([4]), make_group([2]))
rep = check_condition_ii(trivial)
print(f"\nall-zero-product ring fails (ii) with witness x = {rep.witness['x']}"
      f" (x.Gamma.M = 0 but x != 0)")
