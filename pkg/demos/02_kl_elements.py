"""
Kazhdan-Lusztig polynomials and the elements C_w
================================================

The first singular Schubert variety lives in type A3; the polynomials there
are the first ones different from 1.  For the longest element of a parabolic
subgroup, C_w is the signed alternating sum over that subgroup.
"""

from flagmod.coxeter import build_system, format_subset, word
from flagmod.fields import QQ
from flagmod.klpoly import c_element, eta_element, kl_table

W = build_system("A3")
for y, w, p in kl_table(W, nontrivial_only=True):
    print(f"P({word(y)}, {word(w)}) = {p}")

# C_{w_J} = (-1)^{l(w_J)} eta_J
for J in W.subsets():
    wJ = W.longest_element(J)
    same = c_element(wJ, QQ) == eta_element(W, J, QQ).scale((-1) ** wJ.length)
    print(format_subset(J), word(wJ), same)

# a C_w with non-unit coefficients
print(c_element(W.from_word([1, 0, 2, 1]), QQ))
