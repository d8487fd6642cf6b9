"""
Driving a vector back to the generator
======================================

In the Weyl-level model every nonzero combination of the vectors w D_J can
be pushed to a nonzero multiple of D_J by the tau operators.  The reduction
records each step and the descent measure (top length, number of terms there).
"""

import numpy as np

from flagmod.coxeter import build_system, word
from flagmod.fields import GF, QQ
from flagmod.walgebra import EModel, reduce_to_generator

W = build_system("B2")
m = EModel(W, {1}, QQ)
print("Y_J =", [word(w) for w in m.Y])

top = max(m.Y, key=lambda w: w.length)
A = m.basis_vector(top, 3) - m.d_vector(1)
cert = reduce_to_generator(A)
print("input ", A)
for j, case, psi in zip(cert.steps, cert.cases, cert.trace[1:]):
    print(f"  tau_{j:<2} case {case:<5} psi {tuple(psi)}")
print("result", cert.replay(A), " valid:", cert.validate(A))

# a quick random sweep over GF(5)
rng = np.random.default_rng(0)
m5 = EModel(build_system("A3"), {0, 2}, GF(5))
lengths = [len(reduce_to_generator(m5.random_vector(rng)).steps) for _ in range(500)]
print("A3, J=[0,2]: 500 reductions, steps min/mean/max",
      min(lengths), round(float(np.mean(lengths)), 2), max(lengths))
