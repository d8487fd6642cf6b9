"""
Weyl groups as signed permutations of roots
===========================================

Build a few finite Weyl groups, look at reduced words and Bruhat order,
and split each group by right descent sets.
"""

from flagmod.coxeter import build_system, bruhat_leq, right_descents, word

W = build_system("A2")
print(W, "order", W.order)

# every element with its ShortLex reduced word and right descents
for w in W.elements:
    print(f"  {word(w):<10} length {w.length}  descents {sorted(right_descents(w))}")

# Bruhat order: pairs y <= w
pairs = [(word(y), word(w)) for w in W.elements for y in W.elements if bruhat_leq(y, w)]
print(len(pairs), "comparable pairs")

# x w_J over x in Y_J runs through the elements with right descent set exactly J
for label in ["A3", "B3", "G2", "D4"]:
    V = build_system(label)
    sizes = {tuple(sorted(J)): len(V.y_set(J)) for J in V.subsets()}
    print(label, V.order, "=", sum(sizes.values()), sizes)
