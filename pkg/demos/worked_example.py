# The 3x3 system A = diag(1, 2, -4), B = (1, 1, 1)^T, Q = 0 with base
# solution K0 = 0, so Ric(X) = -A^T X - X A + X B B^T X. Walks through the
# solution family, the extremal pair, and the eigenvalue flip.

import numpy as np

import ariset as ar

np.set_printoptions(precision=4, suppress=True)

problem = ar.RiccatiProblem(A=np.diag([1.0, 2.0, -4.0]), B=[[1.0], [1.0], [1.0]])
form = ar.solve_base_are(problem, kind="given", k0=np.zeros((3, 3)))
split = ar.spectral_split(form.A0, problem.B)

print("spectral split of A0^T:")
for i, blk in enumerate(split.blocks):
    print(f"  block {i + 1}: {blk.half_plane}  eigenvalues {blk.eigenvalues}"
          f"  controllable={blk.controllable}")

print("\nevery equation solution, one per subset of blocks:")
for sol in ar.schur_family(form, split):
    print(f"\nblocks {tuple(i + 1 for i in sol.block_set)}  rank {sol.rank}  "
          f"|Ric(X)|_max = {np.abs(sol.residual).max():.2e}")
    print(sol.X)

pair = ar.extremal_solutions(form, split)
print("\nmaximum solution (support on the right-half-plane blocks):")
print(pair.Lr.X)
print("minimum solution (support on the left-half-plane blocks):")
print(pair.Ll.X)

# an inequality solution strictly between the extremes
lhat = np.array([[9.216, -12.0, -0.576], [-12.0, 18.0, 0.0], [-0.576, 0.0, -2.464]])
cert = ar.verify(form, lhat)
print(f"\nverify(Lhat): passed={cert.passed}, "
      f"max residual eigenvalue {cert.residual_max_eig:.2e}")
print("Lr - Lhat eigenvalues:", np.linalg.eigvalsh(pair.Lr.X - lhat))
print("Lhat - Ll eigenvalues:", np.linalg.eigvalsh(lhat - pair.Ll.X))

# closing the loop with the maximum solution negates its supporting modes
a1, flip = ar.feedback_flip(form, pair.Lr)
print("\neig(A0)         :", np.sort(np.linalg.eigvals(form.A0).real).round(6))
print("eig(A0 - BB^T X):", np.sort(np.linalg.eigvals(a1).real).round(6))
print("flip verified:", flip.matched)
