"""Residually full subgroups of SL2(F[eps]) up to conjugacy.

For F7 there are just the two obvious ones.  For F2 the adjoint module is
reducible and has cohomology, and more classes appear.

    python demos/residually_full.py
"""
from chevdeform import ring as rg
from chevdeform.experiments import classify_residually_full
from chevdeform.matgroup import GroupSpec

for q in (7, 5, 3, 2):
    spec = GroupSpec("SL", 2, rg.dual_numbers(rg.field_of_order(q)))
    C = classify_residually_full(spec)
    print(f"{spec}: {C.count} classes, submodule dims {C.lattice_dims}")
    for order, kdim in C.signature():
        print(f"  order {order:6}  meets the kernel in dimension {kdim}")
