"""Independent reference computations used only by the tests.

These go through sympy / brute force / floating point so that they share no
code path with the package routines they check.
"""

import itertools

import numpy as np
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def brute_force_vectors(gram, target, bound):
    g = np.array(gram, dtype=np.int64)
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=len(gram)):
        x = np.array(v, dtype=np.int64)
        if int(x @ g @ x) == target:
            out.append(tuple(v))
    return sorted(out)


def float_signature(gram):
    ev = np.linalg.eigvalsh(np.array(gram, dtype=float))
    return int((ev > 1e-9).sum()), int((ev < -1e-9).sum()), int((abs(ev) <= 1e-9).sum())


def sympy_det(m):
    return int(sympy.Matrix(m).det())


def elementary_divisors(m):
    s = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    return sorted(abs(int(s[i, i])) for i in range(min(s.shape)))


def zassenhaus_spinor(gram, m):
    """Spinor norm sign from the Zassenhaus form on im(g - 1).

    For y in im(g - 1) pick w with (g - 1) w = y and put beta(x, y) = (x, w);
    the sign of det(beta) is the spinor norm with the -(v, v)/2 normalization
    on reflections.
    """
    G = sympy.Matrix(gram)
    A = sympy.Matrix(m) - sympy.eye(len(gram))
    cols = A.columnspace()
    if not cols:
        return 1
    ws = []
    for y in cols:
        sol, params = A.gauss_jordan_solve(y)
        ws.append(sol.subs({p: 0 for p in params}))
    beta = sympy.Matrix(len(cols), len(cols), lambda i, j: (cols[i].T * G * ws[j])[0, 0])
    d = beta.det()
    assert d != 0
    return 1 if d > 0 else -1


def nullity(m):
    return len((sympy.Matrix(m) - sympy.eye(len(m))).nullspace())
