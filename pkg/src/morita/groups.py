"""Finite groups given by multiplication tables.

Elements are the integers ``0 .. n-1``.  ``mul(a, b)`` is the product ``ab``;
for groups built from permutations this is composition ``a after b``, so a
permutation group acts on the left: ``act(g, act(h, x)) == act(gh, x)``.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations as _perms

import numpy as np


class FiniteGroup:
    """A finite group stored as a dense multiplication table."""

    def __init__(self, table, labels=None, name=None):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise ValueError("multiplication table has entries out of range")
        table.flags.writeable = False
        self.table = table
        self._rows = table.tolist()
        ident = [a for a in range(n) if self._rows[a] == list(range(n))]
        if len(ident) != 1:
            raise ValueError("no unique left identity in table")
        self.identity = ident[0]
        problems = self.validate()
        if problems:
            raise ValueError("not a group: %s" % (problems[0],))
        inverse = [0] * n
        for a in range(n):
            inverse[a] = self._rows[a].index(self.identity)
        self.inverse = tuple(inverse)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name

    def validate(self):
        """Return a list of violated group axioms (empty when the table is a group)."""
        T = self.table
        n = len(T)
        e = self.identity
        out = []
        idx = np.arange(n)
        if not (T[e] == idx).all() or not (T[:, e] == idx).all():
            out.append(("identity", e))
        lhs = T[T[:, :, None], idx[None, None, :]]
        rhs = T[idx[:, None, None], T[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            out.append(("associativity", tuple(int(v) for v in bad[0])))
        for a in range(n):
            if (T[a] == e).sum() != 1 or (T[:, a] == e).sum() != 1:
                out.append(("inverse", a))
                break
        return out

    # -- basic arithmetic -------------------------------------------------

    @property
    def order(self):
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    def elements(self):
        return range(len(self._rows))

    def mul(self, a, b):
        return self._rows[a][b]

    def inv(self, a):
        return self.inverse[a]

    def product(self, seq):
        x = self.identity
        for a in seq:
            x = self._rows[x][a]
        return x

    def power(self, a, k):
        if k < 0:
            a, k = self.inverse[a], -k
        x = self.identity
        for _ in range(k):
            x = self._rows[x][a]
        return x

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self._rows[x][a]
            k += 1
        return k

    def order_profile(self):
        """Sorted tuple of element orders; an isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in self.elements()))

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def __repr__(self):
        if self.name:
            return "FiniteGroup(%s)" % self.name
        return "FiniteGroup(order=%d)" % self.order

    # -- subgroups and quotients -------------------------------------------

    def closure(self, gens):
        """Sorted list of elements of the subgroup generated by ``gens``."""
        seen = {self.identity}
        queue = deque([self.identity])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self._rows[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def generators(self):
        """A small generating set, chosen greedily by decreasing element order."""
        cand = sorted(self.elements(), key=lambda a: (-self.element_order(a), a))
        gens, sub = [], {self.identity}
        for a in cand:
            if a not in sub:
                gens.append(a)
                sub = set(self.closure(gens))
                if len(sub) == self.order:
                    break
        return gens

    def is_subgroup(self, elems):
        s = set(elems)
        if self.identity not in s:
            return False
        return all(self._rows[a][self.inverse[b]] in s for a in s for b in s)

    def is_normal(self, elems):
        s = set(elems)
        if not self.is_subgroup(s):
            return False
        return all(self._rows[self._rows[g][k]][self.inverse[g]] in s
                   for g in self.elements() for k in s)

    def subgroup(self, elems):
        """The subgroup on ``elems`` as a group of its own; labels are the ambient ids."""
        elems = sorted(set(elems))
        if not self.is_subgroup(elems):
            raise ValueError("elements do not form a subgroup")
        pos = {a: i for i, a in enumerate(elems)}
        table = [[pos[self._rows[a][b]] for b in elems] for a in elems]
        return FiniteGroup(table, labels=elems)

    def quotient(self, normal):
        """Quotient by a normal subgroup; returns ``(G/N, class_map)``."""
        normal = sorted(set(normal))
        if not self.is_normal(normal):
            raise ValueError("subgroup is not normal")
        cls = [-1] * self.order
        reps = []
        for g in self.elements():
            if cls[g] < 0:
                for k in normal:
                    cls[self._rows[g][k]] = len(reps)
                reps.append(g)
        table = [[cls[self._rows[a][b]] for b in reps] for a in reps]
        return FiniteGroup(table, labels=reps), tuple(cls)

    def relabel_identity_first(self):
        """Isomorphic copy with the identity as element 0."""
        if self.identity == 0:
            return self
        order = [self.identity] + [a for a in self.elements() if a != self.identity]
        pos = {a: i for i, a in enumerate(order)}
        table = [[pos[self._rows[a][b]] for b in order] for a in order]
        return FiniteGroup(table, name=self.name)


class GroupHom:
    """A map between finite groups given by the image of every element."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = tuple(int(v) for v in images)
        if len(self.images) != source.order:
            raise ValueError("need one image per source element")

    def __call__(self, a):
        return self.images[a]

    def is_homomorphism(self):
        S, T, f = self.source, self.target, self.images
        return all(f[S.mul(a, b)] == T.mul(f[a], f[b])
                   for a in S.elements() for b in S.elements())

    def is_injective(self):
        return len(set(self.images)) == self.source.order

    def is_bijective(self):
        return self.is_injective() and self.source.order == self.target.order

    def is_isomorphism(self):
        return self.is_bijective() and self.is_homomorphism()

    def then(self, other):
        """``other`` after ``self``."""
        if other.source is not self.target:
            raise ValueError("homomorphisms not composable")
        return GroupHom(self.source, other.target, [other.images[v] for v in self.images])

    def kernel(self):
        return [a for a in self.source.elements() if self.images[a] == self.target.identity]

    def image(self):
        return sorted(set(self.images))


def _extend_from_generators(G, H, gens, imgs):
    """Extend a generator assignment to a hom by walking the Cayley graph; None if inconsistent."""
    f = [-1] * G.order
    f[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, imgs):
            y = G.mul(x, g)
            v = H.mul(f[x], h)
            if f[y] < 0:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    if min(f) < 0:
        return None
    return f


def find_isomorphism(G, H):
    """Return a ``GroupHom`` isomorphism ``G -> H`` or ``None``.

    Brute-force search over images of a small generating set, pruned by
    element orders and by the order profile of both groups.
    """
    if G.order != H.order or G.order_profile() != H.order_profile():
        return None
    gens = G.generators()
    if not gens:
        return GroupHom(G, H, [H.identity])
    by_order = {}
    for b in H.elements():
        by_order.setdefault(H.element_order(b), []).append(b)
    cands = [by_order.get(G.element_order(g), []) for g in gens]

    def search(i, chosen):
        if i == len(gens):
            f = _extend_from_generators(G, H, gens, chosen)
            if f is not None and len(set(f)) == H.order:
                return f
            return None
        for b in cands[i]:
            if b in chosen:
                continue
            r = search(i + 1, chosen + [b])
            if r is not None:
                return r
        return None

    f = search(0, [])
    return GroupHom(G, H, f) if f is not None else None


def are_isomorphic(G, H):
    return find_isomorphism(G, H) is not None


# -- constructors ---------------------------------------------------------

def from_permutations(gens, name=None):
    """The permutation group generated by ``gens`` (tuples on ``0..d-1``)."""
    gens = [tuple(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    d = len(gens[0])
    ident = tuple(range(d))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[i] for i in p)   # g after p
            if q not in index:
                index[q] = len(elems)
                elems.append(q)
                queue.append(q)
    table = [[index[tuple(a[i] for i in b)] for b in elems] for a in elems]
    return FiniteGroup(table, labels=elems, name=name)


def trivial_group():
    return FiniteGroup([[0]], name="1")


def cyclic(n):
    if n < 1:
        raise ValueError("order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name="Z%d" % n)


def dihedral(n):
    """Symmetry group of the regular n-gon, of order 2n."""
    if n < 3:
        if n == 2:
            return direct_product(cyclic(2), cyclic(2), name="D2")
        raise ValueError("dihedral(n) needs n >= 2")
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return from_permutations([r, s], name="D%d" % n)


def symmetric(n):
    if n == 1:
        return trivial_group()
    if n == 2:
        return from_permutations([(1, 0)], name="S2")
    cyc = tuple(list(range(1, n)) + [0])
    swap = (1, 0) + tuple(range(2, n))
    return from_permutations([cyc, swap], name="S%d" % n)


def _sign(p):
    seen, sign = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternating(n):
    if n < 3:
        return trivial_group()
    gens = [p for p in _perms(range(n)) if _sign(p) == 1 and sum(a != b for a, b in zip(p, range(n))) == 3]
    return from_permutations(gens, name="A%d" % n)


def direct_product(G, H, name=None):
    m = H.order
    table = [[G.mul(a // m, b // m) * m + H.mul(a % m, b % m)
              for b in range(G.order * m)] for a in range(G.order * m)]
    labels = [(a, b) for a in G.elements() for b in H.elements()]
    if name is None and G.name and H.name:
        name = "%sx%s" % (G.name, H.name)
    return FiniteGroup(table, labels=labels, name=name)


def klein_four():
    return direct_product(cyclic(2), cyclic(2), name="Z2xZ2")


def default_targets():
    """Target groups for hom-signatures: Z2, Z3, Z4, S3, D4, A4, S4."""
    return [cyclic(2), cyclic(3), cyclic(4), symmetric(3), dihedral(4), alternating(4), symmetric(4)]
