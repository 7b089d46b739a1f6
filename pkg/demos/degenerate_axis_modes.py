# Zero and purely imaginary eigenvalues of A0 are the degenerate cases:
# controllable axis modes admit no nonzero solutions at all, while
# uncontrollable ones generate exact solution rays (so the set is unbounded).

import numpy as np

import ariset as ar

np.set_printoptions(precision=4, suppress=True)


def classify(title, a0, b):
    problem = ar.RiccatiProblem(A=a0, B=b)
    n = problem.n
    form = ar.solve_base_are(problem, kind="given", k0=np.zeros((n, n)))
    split = ar.spectral_split(form.A0, problem.B)
    print(f"\n{title}")
    for blk, out in ar.degenerate_classify(form, split):
        print(f"  axis block at offset {blk.offset} "
              f"(eigenvalues {blk.eigenvalues}): {out.kind}")
        if out.generator is not None:
            print("  generator (unit Frobenius norm):")
            print("  " + str(out.generator).replace("\n", "\n  "))
            resid = ar.ric_residual(form, 1000.0 * out.generator)
            print(f"  |Ric(1000 * generator)|_max = {np.abs(resid).max():.2e}")
    return form, split


classify("controllable zero eigenvalue: only the trivial solution",
         np.diag([0.0, -1.0]), [[1.0], [1.0]])

classify("uncontrollable zero eigenvalue: a free line of solutions",
         np.diag([0.0, -1.0]), [[0.0], [1.0]])

rot = np.zeros((3, 3))
rot[0, 1] = 2.0
rot[1, 0] = -2.0
rot[2, 2] = -1.0

form, split = classify("controllable imaginary pair: only the trivial solution",
                       rot, [[1.0], [0.0], [1.0]])

# scan rank-one directions inside the controllable axis plane: the residual
# never becomes negative semidefinite, so nothing there is feasible
eqn = ar.reduce(form, split, split.indices(half_plane="AXIS"))
worst = np.inf
for theta in np.linspace(0.0, np.pi, 37):
    v = np.cos(theta) * eqn.Lk[:, 0] + np.sin(theta) * eqn.Lk[:, 1]
    for alpha in (0.5, -0.5, 2.0, -2.0):
        resid = ar.ric_residual(form, alpha * np.outer(v, v))
        worst = min(worst, np.linalg.eigvalsh(resid)[-1])
print(f"\nsmallest max-eigenvalue over the rank-one scan: {worst:.4f} "
      "(never <= 0: infeasible)")

classify("uncontrollable imaginary pair: a free plane of solutions",
         rot, [[0.0], [0.0], [1.0]])
