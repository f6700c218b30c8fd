"""
Lifting cocycles along a functor
================================

A cocycle on the N x N grid cover assigns an object to every cell and an
arrow to every pair of touching cells.  When a functor is onto on objects
and arrows lift from every object, cocycles lift cell by cell.
"""

import numpy as np

from morita.cocycle import GridCover, coboundary, lift_cocycle, pushforward
from morita.generators import random_cocycle, random_lifting_functor
from morita.groupoid import GroupoidFunctor, group_as_groupoid
from morita.groups import cyclic

# %% lifting along Z4 -> Z2
phi = GroupoidFunctor(group_as_groupoid(cyclic(4)), group_as_groupoid(cyclic(2)), [0],
                      [g % 2 for g in range(4)])
cov = GridCover(2, 2)
c = coboundary(cov, phi.target, {mu: mu[1] - 1 for mu in cov.cells})
lift = lift_cocycle(phi, c)
for (mu, nu), a in sorted(c.g.items()):
    if mu < nu:
        print("g%s%s = %d in Z2, lifted to %d in Z4" % (mu, nu, a, lift.g[(mu, nu)]))
print("pushforward of the lift equals the input:", pushforward(phi, lift) == c)

# %% many random functors and cocycles
rng = np.random.default_rng(1)
ok = 0
for _ in range(100):
    f = random_lifting_functor(rng)
    k = random_cocycle(rng, f.target, 2, int(rng.integers(1, 5)))
    ok += pushforward(f, lift_cocycle(f, k)) == k
print("random round trips: %d / 100" % ok)
