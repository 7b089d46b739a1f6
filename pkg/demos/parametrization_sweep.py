# Reduced inequality solutions over right-half-plane blocks are in exact
# correspondence with positive (semi)definite parameters P: the equation
# solution sits at P = 0 and growing P shrinks the solution toward zero.

import numpy as np

import ariset as ar

np.set_printoptions(precision=5, suppress=True)

# scalar case first: a0 = 1, b = 1, feasible x in [0, 2], and the map
# p -> 2/(1 + p) covers the open-to-closed interval (0, 2]
problem = ar.RiccatiProblem(A=[[1.0]], B=[[1.0]])
form = ar.solve_base_are(problem, kind="given", k0=[[0.0]])
split = ar.spectral_split(form.A0, problem.B)
eqn = ar.reduce(form, split, [0])
print("scalar sweep, x(p) = 2 / (1 + p):")
for p in (0.0, 0.5, 1.0, 4.0, 19.0):
    sol = ar.parametrize(eqn, [[p]])
    print(f"  p = {p:5.1f} -> x = {sol.Lcoord[0, 0]:.6f}"
          f"  (strict={sol.certificate.strict})")

# 2x2: the right-half-plane selection of the worked 3x3 example
problem = ar.RiccatiProblem(A=np.diag([1.0, 2.0, -4.0]), B=[[1.0], [1.0], [1.0]])
form = ar.solve_base_are(problem, kind="given", k0=np.zeros((3, 3)))
split = ar.spectral_split(form.A0, problem.B)
eqn = ar.reduce(form, split, [0, 1])

print("\nP = 0 returns the maximum reduced solution:")
print(ar.parametrize(eqn, np.zeros((2, 2))).Lcoord)

print("\nP = I gives a strictly feasible solution below it:")
sol = ar.parametrize(eqn, np.eye(2))
print(sol.Lcoord)
print("sandwich eigenvalues (Lstar_k - Lhat):",
      np.linalg.eigvalsh(ar.parametrize(eqn, np.zeros((2, 2))).Lcoord - sol.Lcoord))

print("\nround trip recovers the parameter exactly:")
rng = np.random.default_rng(0)
for _ in range(3):
    g = rng.standard_normal((2, 2))
    p = g @ g.T + 0.2 * np.eye(2)
    back = ar.recover_parameter(eqn, ar.parametrize(eqn, p).Lcoord).P
    print(f"  |P - recover(parametrize(P))|_max = {np.abs(p - back).max():.2e}")
