"""Places where brute force and the literal exception tables part ways.

Each block computes one value directly, then shows the literal table verdict
next to the guarded default.

    python demos/small_fields.py
"""
from chevdeform import ring as rg
from chevdeform.classifier import classify, cross_validate, parse_descriptor
from chevdeform.cohom import congruence_extension, find_complement, h2_trivial_dim, is_coboundary
from chevdeform.liemod import adjoint_module, build_lie
from chevdeform.matgroup import GroupSpec, enumerate_group


def group(fam, q):
    return enumerate_group(GroupSpec(fam, 2, rg.field_ring(rg.field_of_order(q))))


def show(desc, cond):
    d = parse_descriptor(desc)
    lit = classify(d, literal=True).conditions[cond]
    dflt = classify(d).conditions[cond]
    orc = cross_validate(d).conditions[cond].oracle
    print(f"  {desc} {cond}: literal {lit.verdict} ({lit.cite}), default {dflt.verdict} ({dflt.cite}), "
          f"brute force {orc}")


print("H^2(SL2(F3), F3): the abelianization Z/3 contributes Ext(Z/3, F3)")
print(f"  dim = {h2_trivial_dim(group('SL', 3), 3)}")
show("A1:q=3:sc", "sch")

print("SL2(Z/4) -> SL2(F2)")
e = congruence_extension("SL", 2, rg.field_of_order(2))
print(f"  split: {is_coboundary(e)}, complement: {find_complement(e)}")
show("A1:q=2:sc", "n-s")

print("pgl2(F2) has trivial centre but a PGL2(F2)-fixed line")
G = group("PGL", 2)
print(f"  fixed space dim = {adjoint_module(G, build_lie('pgl', 2, rg.field_of_order(2))).fixed_space().shape[0]}")
show("A1:q=2:ad", "ct")

print("GL3 over F2 inherits the split W2 extension of SL3")
show("GL3:q=2", "n-s")
