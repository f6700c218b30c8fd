"""
Fundamental groups of translation groupoids
===========================================

For a finite group G acting on a connected complex X, the fundamental group
of the translation groupoid sits in a short exact sequence

    1 -> pi1(X) -> pi1(G x| X) -> G -> 1.

We compute it from a Borel model and check the sequence.
"""

from morita.catalog import antipodal_c6, mobius_action, reflection_c6
from morita.fpgroup import abelianization, probably_isomorphic, simplify
from morita.groups import cyclic
from morita.homotopy import BorelModel, check_example4_sequence
from morita.simplicial import ComplexAction, SimplicialComplex

# %% the Mobius band: Z2 reflecting an interval
A = mobius_action()
P = simplify(BorelModel(A).presentation).presentation
print("Z2 reflecting P8: pi1 =", abelianization(P), "|", probably_isomorphic(P, cyclic(2)).verdict)

# %% free and non-free actions on the hexagon
for name, A in (("antipodal", antipodal_c6()), ("reflection", reflection_c6())):
    rep = check_example4_sequence(A)
    print("\n%s on C6" % name)
    print(rep.format_text())

# %% a figure eight with its two loops swapped
X = SimplicialComplex(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
swap = ComplexAction.from_function(cyclic(2), X, lambda g, v: [0, 3, 4, 1, 2][v] if g else v)
rep = check_example4_sequence(swap)
print("\nfigure eight, loops swapped:", rep.status)
print("pi1(X)_ab = %s, pi1_ab = %s" % (rep.data["pi1(X)"], rep.data["pi1"]))
# Z^2 cannot inject into Z + Z/2, yet the sequence is exact: pi1(X) is free and
# the kernel check runs on the nonabelian kernel, not on abelianizations
