"""
Finite groupoids and Morita equivalence
=======================================

A pair groupoid on k points has one arrow between any two points, so it
should be indistinguishable from a single point up to Morita equivalence.
We check this and look at the witness bibundle.
"""

from morita import (morita_equivalent, pair_groupoid, point_groupoid, is_biprincipal,
                    orbits, isotropy, tensor, unit_bundle, bibundle_iso_search)
from morita.groupoid import SetAction, translation_groupoid
from morita.groups import symmetric

# %% the pair groupoid collapses to a point
for k in range(1, 7):
    P = pair_groupoid(range(k))
    res = morita_equivalent(P, point_groupoid())
    print("Pair(%d): %2d arrows, equivalent to a point: %s, witness has %d points, biprincipal: %s"
          % (k, P.n_arrows, res.equivalent, res.witness.n_total, is_biprincipal(res.witness)))

# %% translation groupoids: S3 acting on three letters
S3 = symmetric(3)
A = SetAction.from_function(S3, 3, lambda g, x: S3.labels[g][x])
T = translation_groupoid(A)
print("\nS3 on 3 letters:", T)
print("orbits:", orbits(T))
print("isotropy at 0 has order", isotropy(T, 0).order)

# the stabilizer of a point is a copy of Z2, so T is equivalent to (Z2 => *)
from morita import group_as_groupoid, cyclic
print("T ~ (Z2 => *):", morita_equivalent(T, group_as_groupoid(cyclic(2))).equivalent)
print("T ~ (Z3 => *):", morita_equivalent(T, group_as_groupoid(cyclic(3))).equivalent)

# %% witnesses compose: going there and back is the identity up to isomorphism
there = morita_equivalent(T, group_as_groupoid(cyclic(2))).witness
back = morita_equivalent(group_as_groupoid(cyclic(2)), T).witness
loop = tensor(there, back)
print("\nthere (x) back has %d points; isomorphic to the unit bundle: %s"
      % (loop.n_total, bibundle_iso_search(loop, unit_bundle(T)) is not None))
