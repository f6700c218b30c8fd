"""
Ineffective kernels
===================

Z4 acts on the hexagon through Z4 -> Z2, the generator turning it halfway.
The subgroup {0, 2} fixes everything, so the effective quotient is the
antipodal Z2 action, and the kernel appears in the fundamental group.
"""

from morita.catalog import z4_on_c6
from morita.homotopy import NonUniformIneffectivity, check_eff_sequence, eff_translation
from morita.groups import cyclic
from morita.simplicial import ComplexAction, SimplicialComplex

A = z4_on_c6()
eff = eff_translation(A)
print("kernel elements:", eff.kernel_elements, " quotient order:", eff.quotient.order)
rep = check_eff_sequence(A)
print(rep.format_text())

# %% when the kernel depends on the point there is no uniform quotient
star = SimplicialComplex(5, [(0, k) for k in range(1, 5)])
B = ComplexAction.from_function(cyclic(2), star, lambda g, v: [0, 1, 2, 4, 3][v] if g else v)
try:
    eff_translation(B)
except NonUniformIneffectivity as exc:
    print("\nrefused:", exc)
