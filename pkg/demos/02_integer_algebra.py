"""
Smith normal form, abelianizations and homomorphism counts
==========================================================

Presented groups are compared through two cheap invariants: the
abelianization (from the Smith form of the relator exponent matrix) and the
number of homomorphisms into a fixed list of small groups.
"""

import numpy as np

from morita.fpgroup import (GroupPresentation, abelianization, hom_signature, probably_isomorphic,
                            smith_normal_form, snf_diagonal, matmul)

# %% a Smith form with its unimodular transforms
A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
U, D, V = smith_normal_form(A)
print("A =", A)
print("D =", D)
print("U D V == A:", matmul(matmul(U, D), V) == A)

# %% hide diag(2, 6, 0) behind random row and column operations, then recover it
rng = np.random.default_rng(0)


def scramble(M, steps=12):
    M = np.array(M)
    for _ in range(steps):
        i, j = rng.choice(len(M), 2, replace=False)
        M[i] += int(rng.integers(-2, 3)) * M[j]
        k, l = rng.choice(M.shape[1], 2, replace=False)
        M[:, k] += int(rng.integers(-2, 3)) * M[:, l]
    return M.tolist()


for _ in range(4):
    M = scramble([[2, 0, 0, 0], [0, 6, 0, 0], [0, 0, 0, 0]])
    print(M, "->", snf_diagonal(M))

# %% two groups with the same abelianization
klein_bottle = GroupPresentation(2, [(1, 2, 1, -2)], names="ab")
z_plus_z2 = GroupPresentation(2, [(1, 2, -1, -2), (1, 1)], names="ab")
print("\nabelianizations:", abelianization(klein_bottle), "|", abelianization(z_plus_z2))
print("hom signatures into Z2, Z3, Z4, S3, D4, A4, S4:")
print("  <a,b | abab^-1>  ", hom_signature(klein_bottle))
print("  <a,b | [a,b], a^2>", hom_signature(z_plus_z2))
v = probably_isomorphic(klein_bottle, z_plus_z2)
print("verdict:", v.verdict, "(%s)" % v.reason)
