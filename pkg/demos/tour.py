"""A walk from rings to verdicts for SL2 over F5.

    python demos/tour.py
"""
from chevdeform import ring as rg
from chevdeform.classifier import cross_validate, parse_descriptor
from chevdeform.cohom import congruence_extension, find_complement, h1_dim, h2_trivial_dim, is_coboundary
from chevdeform.liemod import adjoint_module, analyze_module, build_lie
from chevdeform.matgroup import GroupSpec, enumerate_group, reduction_hom

F5 = rg.field_of_order(5)

# the group and its Witt-vector thickening
G = enumerate_group(GroupSpec("SL", 2, rg.field_ring(F5)))
G2 = enumerate_group(GroupSpec("SL", 2, rg.make_witt2(F5)))
red = reduction_hom(G2, 1)
print(f"|SL2(F5)| = {G.order}, |SL2(Z/25)| = {G2.order}, kernel of reduction = {red.kernel().order}")

# the adjoint module
g = build_lie("sl", 2, F5)
M = adjoint_module(G, g)
A = analyze_module(M)
print(f"sl2(F5): dim {g.dim}, irreducible {A.irreducible}, End dim {A.endRingDimOverFp}")

# cohomology
print(f"dim H^1(SL2(F5), sl2) = {h1_dim(G, M)}")
print(f"dim H^2(SL2(F5), F5)  = {h2_trivial_dim(G, 5)}")

# the congruence extension, decided two ways
e = congruence_extension("SL", 2, F5)
print(f"SL2(Z/25) -> SL2(F5) splits: cocycle test {is_coboundary(e)}, "
      f"complement search {find_complement(e) is not None}")

# table verdicts next to the brute force
rep = cross_validate(parse_descriptor("A1:q=5:sc"))
for c, v in rep.conditions.items():
    print(f"  {c:12} {v.verdict:8} {v.source:6} {v.cite}")
