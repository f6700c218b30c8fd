"""Groupoid-valued cocycles on grid covers of the cube, and the ordered lifting algorithm.

Cells are 1-based multi-indices ``mu`` in ``{1..N}^n``; two cells are adjacent
when their closed cubes meet, i.e. ``max |mu_i - nu_i| <= 1``.  A cocycle
stores ``f[mu]`` (an object) and ``g[(mu, nu)]`` (an arrow ``f[nu] -> f[mu]``)
for every adjacent ordered pair, including ``mu == nu``.
"""

from __future__ import annotations

from collections import deque
from itertools import product

from .bibundle import Bibundle, groupoids_equal
from .groupoid import FiniteGroupoid, ValidationReport, Violation


class GridCover:
    """The cover of ``[0, N]^n`` by the closed unit cubes ``C_mu``."""

    def __init__(self, n, N):
        if n not in (1, 2):
            raise ValueError("grid covers are modelled in dimension 1 and 2 only")
        if N < 1:
            raise ValueError("need at least one subdivision")
        self.n = n
        self.N = N
        self.cells = tuple(product(range(1, N + 1), repeat=n))
        self._index = {mu: i for i, mu in enumerate(self.cells)}

    def adjacent(self, mu, nu):
        return all(abs(a - b) <= 1 for a, b in zip(mu, nu))

    def neighbors(self, mu):
        """Adjacent cells other than ``mu``, in lexicographic order."""
        out = []
        for d in product((-1, 0, 1), repeat=self.n):
            nu = tuple(a + b for a, b in zip(mu, d))
            if nu != mu and nu in self._index:
                out.append(nu)
        return sorted(out)

    def pairs(self):
        """All adjacent ordered pairs ``(mu, nu)``, including the diagonal."""
        return [(mu, nu) for mu in self.cells for nu in [mu] + self.neighbors(mu)]

    def atoms(self):
        """Minimal pieces of the cover: products of 1-d atoms ``{i}`` and ``{i, i+1}``.

        Each atom is returned as the sorted tuple of cells containing it.
        """
        one = [(i,) for i in range(1, self.N + 1)] + [(i, i + 1) for i in range(1, self.N)]
        out = []
        for combo in product(one, repeat=self.n):
            out.append(tuple(product(*combo)))
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, GridCover) and (self.n, self.N) == (other.n, other.N)

    def __hash__(self):
        return hash((self.n, self.N))

    def __repr__(self):
        return "GridCover(n=%d, N=%d)" % (self.n, self.N)


class Cocycle:
    def __init__(self, cover, groupoid, f, g):
        self.cover = cover
        self.groupoid = groupoid
        self.f = {tuple(mu): int(x) for mu, x in dict(f).items()}
        self.g = {(tuple(mu), tuple(nu)): int(a) for (mu, nu), a in dict(g).items()}

    def __eq__(self, other):
        return (isinstance(other, Cocycle) and self.cover == other.cover
                and groupoids_equal(self.groupoid, other.groupoid) and self.f == other.f and self.g == other.g)

    def __repr__(self):
        return "Cocycle(%r, %r)" % (self.cover, self.groupoid)


def constant_cocycle(cover, G, a):
    u = G.unit[a]
    return Cocycle(cover, G, {mu: a for mu in cover.cells}, {p: u for p in cover.pairs()})


def coboundary(cover, G, lam):
    """The cocycle ``g_{mu nu} = lam_mu lam_nu^-1`` for arrows ``lam_mu`` with a common source."""
    srcs = {G.src[lam[mu]] for mu in cover.cells}
    if len(srcs) != 1:
        raise ValueError("coboundary arrows need a common source")
    f = {mu: G.tgt[lam[mu]] for mu in cover.cells}
    g = {(mu, nu): G.compose(lam[mu], G.inv[lam[nu]]) for mu, nu in cover.pairs()}
    return Cocycle(cover, G, f, g)


def validate_cocycle(c):
    """Check source/target, unit and triple conditions on every adjacent pair and triple."""
    G, cov = c.groupoid, c.cover
    rep = ValidationReport()
    for mu in cov.cells:
        if mu not in c.f or not 0 <= c.f[mu] < G.n_objects:
            rep.append(Violation("missing or invalid object", (mu,)))
    expected = set(cov.pairs())
    for p in expected:
        if p not in c.g or not 0 <= c.g[p] < G.n_arrows:
            rep.append(Violation("missing or invalid transition", p))
    for p in c.g:
        if p not in expected:
            rep.append(Violation("transition on non-adjacent cells", p))
    if not rep.ok:
        return rep
    for (mu, nu), a in c.g.items():
        if G.src[a] != c.f[nu] or G.tgt[a] != c.f[mu]:
            rep.append(Violation("endpoints", (mu, nu, a)))
        if mu == nu and a != G.unit[c.f[mu]]:
            rep.append(Violation("unit", (mu, a)))
    if not rep.ok:
        return rep
    for mu in cov.cells:
        nb = [mu] + cov.neighbors(mu)
        for nu in nb:
            for ka in nb:
                if cov.adjacent(nu, ka):
                    if G.compose(c.g[(mu, nu)], c.g[(nu, ka)]) != c.g[(mu, ka)]:
                        rep.append(Violation("cocycle condition", (mu, nu, ka)))
    return rep


def pushforward(phi, c):
    if not groupoids_equal(c.groupoid, phi.source):
        raise ValueError("cocycle groupoid is not the source of the functor")
    return Cocycle(c.cover, phi.target,
                   {mu: phi.obj_map[x] for mu, x in c.f.items()},
                   {p: phi.arr_map[a] for p, a in c.g.items()})


class LiftError(ValueError):
    pass


def check_lifting_hypotheses(phi):
    """Surjectivity on objects and of ``(phi, s): H1 -> G1 x_G0 H0``; returns a list of failures."""
    H, G = phi.source, phi.target
    bad = []
    hit = set(phi.obj_map)
    for a in G.objects():
        if a not in hit:
            bad.append(("object without preimage", a))
    for y in H.objects():
        images = {phi.arr_map[h] for h in H.arrows_from(y)}
        for g in G.arrows_from(phi.obj_map[y]):
            if g not in images:
                bad.append(("arrow without lift", (g, y)))
    return bad


def lift_cocycle(phi, c, seed=None):
    """Lift a cocycle along ``phi``, cell by cell in lexicographic order.

    The first cell gets ``seed`` (default: least preimage of its object).  Each
    later cell lifts the transition from its least already-lifted neighbour,
    choosing the least arrow id; the remaining transitions are then forced.
    """
    H, G = phi.source, phi.target
    if not groupoids_equal(c.groupoid, G):
        raise ValueError("cocycle groupoid is not the target of the functor")
    problems = check_lifting_hypotheses(phi)
    if problems:
        raise LiftError("lifting hypothesis violated: %s %r" % problems[0])
    rep = validate_cocycle(c)
    if not rep.ok:
        raise ValueError("invalid cocycle: %r" % (rep[0],))
    cells = c.cover.cells
    first = cells[0]
    if seed is None:
        seed = min(y for y in H.objects() if phi.obj_map[y] == c.f[first])
    elif phi.obj_map[seed] != c.f[first]:
        raise LiftError("seed %r does not lie over f%r" % (seed, first))
    # lam[mu]: arrow seed -> ftilde[mu]
    lam = {first: H.unit[seed]}
    ft = {first: seed}
    for nu in cells[1:]:
        mu = min(m for m in c.cover.neighbors(nu) if m in lam)
        want = c.g[(nu, mu)]
        cands = [h for h in H.arrows_from(ft[mu]) if phi.arr_map[h] == want]
        if not cands:
            raise LiftError("transition g%r has no lift from object %r" % ((nu, mu), ft[mu]))
        h = min(cands)
        ft[nu] = H.tgt[h]
        lam[nu] = H.compose(h, lam[mu])
    gt = {}
    for mu, nu in c.cover.pairs():
        a = H.compose(lam[mu], H.inv[lam[nu]])
        if phi.arr_map[a] != c.g[(mu, nu)]:
            raise AssertionError("lifted transition over %r does not push forward correctly" % ((mu, nu),))
        gt[(mu, nu)] = a
    return Cocycle(c.cover, H, ft, gt)


def cocycles_equivalent(c1, c2):
    """Search for ``lam_mu: f1_mu -> f2_mu`` with ``g2 = lam_mu g1 lam_nu^-1``.

    Returns the family ``lam`` as a dict, or None.  Only the root value is
    searched; the rest is forced along a spanning tree.
    """
    if c1.cover != c2.cover or not groupoids_equal(c1.groupoid, c2.groupoid):
        raise ValueError("cocycles over different covers or groupoids")
    G, cov = c1.groupoid, c1.cover
    root = cov.cells[0]
    order, parent = [root], {root: None}
    queue = deque([root])
    while queue:
        mu = queue.popleft()
        for nu in cov.neighbors(mu):
            if nu not in parent:
                parent[nu] = mu
                order.append(nu)
                queue.append(nu)
    for start in G.hom(c1.f[root], c2.f[root]):
        lam = {root: start}
        for nu in order[1:]:
            mu = parent[nu]
            # lam_nu = g2_{nu mu} lam_mu g1_{mu nu}
            lam[nu] = G.compose(c2.g[(nu, mu)], G.compose(lam[mu], c1.g[(mu, nu)]))
        if all(G.compose(lam[mu], c1.g[(mu, nu)]) == G.compose(c2.g[(mu, nu)], lam[nu])
               for mu, nu in cov.pairs()):
            return lam
    return None


def cech_groupoid(cover):
    """Cech groupoid over the atoms of the cover.

    Objects are ``(atom, mu)`` with ``mu`` a cell containing the atom; the
    arrow ``(atom, mu, nu)`` goes from ``(atom, nu)`` to ``(atom, mu)``.  It is
    Morita equivalent to the discrete set of atoms.
    """
    atoms = cover.atoms()
    objs = [(k, mu) for k, at in enumerate(atoms) for mu in at]
    arrows = [(k, mu, nu) for k, at in enumerate(atoms) for mu in at for nu in at]
    return FiniteGroupoid.build(
        objs, arrows,
        src=lambda a: (a[0], a[2]), tgt=lambda a: (a[0], a[1]),
        compose=lambda a, b: (a[0], a[1], b[2]),
        inverse=lambda a: (a[0], a[2], a[1]),
        unit=lambda o: (o[0], o[1], o[1]),
        name="Cech(%dx%d)" % (cover.n, cover.N))


def cocycle_to_bundle(c, cech=None):
    """Principal ``G``-bundle over the Cech groupoid determined by the cocycle.

    Points are ``(atom, mu, g)`` with ``t(g) = f_mu``; the Cech arrow
    ``(atom, nu, mu)`` acts by ``g -> g_{nu mu} g``.
    """
    G = c.groupoid
    X = cech if cech is not None else cech_groupoid(c.cover)
    oid = {lab: i for i, lab in enumerate(X.obj_labels)}
    total = [(k, mu, g) for (k, mu) in X.obj_labels for g in G.arrows_into(c.f[mu])]
    index = {p: i for i, p in enumerate(total)}
    pi = [oid[(k, mu)] for k, mu, _ in total]
    eps = [G.src[g] for _, _, g in total]
    left, right = {}, {}
    for i, (k, mu, g) in enumerate(total):
        for a in X.arrows_from(oid[(k, mu)]):
            _, nu, _ = X.arr_labels[a]
            left[(a, i)] = index[(k, nu, G.compose(c.g[(nu, mu)], g))]
        for g2 in G.arrows_into(G.src[g]):
            right[(i, g2)] = index[(k, mu, G.compose(g, g2))]
    return Bibundle(X, G, len(total), pi, eps, left, right, labels=total)
