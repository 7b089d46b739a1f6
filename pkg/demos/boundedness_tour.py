# Boundedness of the inequality's solution set is exactly controllability.
# Plants uncontrollable modes in each half plane and on the axis, and shows
# the witness rays along which the set escapes to infinity.

import numpy as np

import ariset as ar

np.set_printoptions(precision=4, suppress=True)


def show(title, a0, b):
    problem = ar.RiccatiProblem(A=a0, B=b)
    n = problem.n
    form = ar.solve_base_are(problem, kind="given", k0=np.zeros((n, n)))
    split = ar.spectral_split(form.A0, problem.B)
    report = ar.boundedness(form, split)
    print(f"\n{title}: {report.verdict}")
    for w in report.witnesses:
        print(f"  ray on block {w.block + 1} (feasible sign {w.sign}):")
        print("  " + str(w.direction).replace("\n", "\n  "))
        for alpha in (1.0, 10.0, 100.0, 1000.0):
            s = -1.0 if w.sign == "-" else 1.0
            resid = ar.ric_residual(form, s * alpha * w.direction)
            print(f"    alpha = {s * alpha:7.1f}: "
                  f"max eig Ric = {np.linalg.eigvalsh(resid)[-1]: .2e}")


show("controllable (bounded)", np.diag([1.0, 2.0, -4.0]), np.ones((3, 1)))

show("uncontrollable stable mode", np.diag([1.0, -1.0]), [[1.0], [0.0]])

show("no input at all", np.diag([1.0, -1.0]), [[0.0], [0.0]])

rot = np.zeros((3, 3))
rot[0, 1] = 2.0
rot[1, 0] = -2.0
rot[2, 2] = -1.0
show("uncontrollable imaginary pair", rot, [[0.0], [0.0], [1.0]])
