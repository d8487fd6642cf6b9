"""
Flag permutation modules of SL_n(F_q)
=====================================

k[G/B] splits along the submodules generated by the alternating sums eta_J.
Over a field whose characteristic does not divide |G| the quotients E_J are
the composition factors as long as the Weyl group has exactly 2^f
involutions; from SL_4 on there are more factors than quotients.
"""

from flagmod.chevalley import SLn
from flagmod.coxeter import format_subset
from flagmod.fields import GF
from flagmod.permod import (
    Lattice, PermutationModule, d_submodule, dimension_formula, meataxe_length, semisimple_prime,
)

for n, q, r in [(2, 2, 5), (3, 2, 5), (2, 2, 3), (3, 3, 5)]:
    G = SLn(n, q)
    M = PermutationModule(G, frozenset(), GF(r))
    L = Lattice(M)
    E = {format_subset(J): L.e_quotient(J).dims[2] for J in G.W.subsets()}
    comp = meataxe_length(M)
    print(f"{G} over GF({r}): dim {M.dim}, E_J dims {E}, composition factors {comp.factor_dims}")

# the submodule generated by D_J has dimension sum_{w in Y_J} q^{l(w_J w^-1)}
G = SLn(3, 3)
for J in G.W.subsets():
    print(format_subset(J), d_submodule(G, J, GF(5))[1].dim, dimension_formula(G, J))

# SL_4(F_2), semisimple coefficients: ten factors, not eight
G = SLn(4, 2)
M = PermutationModule(G, frozenset(), GF(semisimple_prime(G)))
print(G, meataxe_length(M).factor_dims)
