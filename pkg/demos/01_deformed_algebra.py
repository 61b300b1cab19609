"""The deformed Heisenberg-Weyl algebra and why the scale factor matters.

Walks through the defining commutators of the noncommutative plane, their
realization in ordinary phase-space variables, the contrast with a charged
particle in a magnetic field, and the inconsistency that appears if the
scale factor is dropped.
"""

from ncweyl.algebra import Expr, commutator, substitute
from ncweyl.operators import (
    DEFORMED,
    UNDEFORMED,
    bopp_map,
    bopp_map_unit_xi,
    mechanical_momentum,
)
from ncweyl.parser import render

print("Defining commutators of the deformed algebra")
print("---------------------------------------------")
for a, b in (("xh1", "xh2"), ("ph1", "ph2"), ("xh1", "ph1"), ("xh1", "ph2")):
    value = commutator(Expr.generator(DEFORMED, a), Expr.generator(DEFORMED, b))
    print(f"  [{a}, {b}] = {render(value)}")

print()
print("Realization in undeformed variables (the shift to ordinary phase space)")
print("------------------------------------------------------------------------")
m = bopp_map()
for g in ("xh1", "ph1"):
    print(f"  {g} -> {render(m.image[g])}")
img_x = substitute(Expr.generator(DEFORMED, "xh1"), m)
img_p = substitute(Expr.generator(DEFORMED, "ph1"), m)
print(f"  [image(xh1), image(ph1)] = {render(commutator(img_x, img_p))}")
print("  (equals i*hbar once xi^2 is reduced by its defining relation)")

print()
print("Without the scale factor the canonical commutator breaks:")
mu = bopp_map_unit_xi()
broken = commutator(
    substitute(Expr.generator(DEFORMED, "xh1"), mu),
    substitute(Expr.generator(DEFORMED, "ph1"), mu),
)
print(f"  [x, p] at xi = 1: {render(broken)}")

print()
print("Contrast: mechanical momenta in a magnetic field (symmetric gauge)")
print("-------------------------------------------------------------------")
pm = commutator(mechanical_momentum(1), mechanical_momentum(2))
print(f"  [p_mech_1, p_mech_2] = {render(pm)}")
print("  set by the external field strength, unlike the intrinsic eta")
