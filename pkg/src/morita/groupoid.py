"""Finite discrete groupoids, functors between them, and set actions.

Objects and arrows are dense integer ids.  ``comp(g, h)`` is defined exactly
when ``src(g) == tgt(h)`` and then goes from ``src(h)`` to ``tgt(g)``; in the
usual product notation it is ``gh``.
"""

from __future__ import annotations

from collections import namedtuple
from types import MappingProxyType

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groups import FiniteGroup, GroupHom, are_isomorphic

Violation = namedtuple("Violation", "axiom witness")


class ValidationReport(list):
    """List of ``Violation`` tuples; empty means every axiom holds."""

    @property
    def ok(self):
        return len(self) == 0

    def __bool__(self):
        # truthiness reads as "valid", not "non-empty"
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return "ValidationReport(%d violations, first=%r)" % (len(self), self[0])


class FiniteGroupoid:
    """An immutable finite groupoid with dense structure tables."""

    def __init__(self, n_objects, src, tgt, comp, inv, unit,
                 obj_labels=None, arr_labels=None, name=None):
        self.n_objects = int(n_objects)
        self.src = tuple(int(v) for v in src)
        self.tgt = tuple(int(v) for v in tgt)
        self.inv = tuple(int(v) for v in inv)
        self.unit = tuple(int(v) for v in unit)
        self.comp = MappingProxyType(dict(comp))
        self.obj_labels = tuple(obj_labels) if obj_labels is not None else None
        self.arr_labels = tuple(arr_labels) if arr_labels is not None else None
        self.name = name
        out = [[] for _ in range(self.n_objects)]
        inc = [[] for _ in range(self.n_objects)]
        hom = {}
        for g, (s, t) in enumerate(zip(self.src, self.tgt)):
            if 0 <= s < self.n_objects and 0 <= t < self.n_objects:
                out[s].append(g)
                inc[t].append(g)
                hom.setdefault((s, t), []).append(g)
        self._out = tuple(tuple(v) for v in out)
        self._in = tuple(tuple(v) for v in inc)
        self._hom = {k: tuple(v) for k, v in hom.items()}

    @classmethod
    def build(cls, objects, arrows, src, tgt, compose, inverse, unit, name=None):
        """Tabulate a groupoid from labelled objects/arrows and structure functions on labels."""
        objects = list(objects)
        arrows = list(arrows)
        oid = {o: i for i, o in enumerate(objects)}
        aid = {a: i for i, a in enumerate(arrows)}
        if len(oid) != len(objects) or len(aid) != len(arrows):
            raise ValueError("duplicate object or arrow labels")
        s = [oid[src(a)] for a in arrows]
        t = [oid[tgt(a)] for a in arrows]
        inc = [[] for _ in objects]
        for i, ti in enumerate(t):
            inc[ti].append(i)
        comp = {}
        for g, sg in enumerate(s):
            for h in inc[sg]:
                comp[(g, h)] = aid[compose(arrows[g], arrows[h])]
        inv = [aid[inverse(a)] for a in arrows]
        un = [aid[unit(o)] for o in objects]
        return cls(len(objects), s, t, comp, inv, un,
                   obj_labels=objects, arr_labels=arrows, name=name)

    # -- accessors ------------------------------------------------------------

    @property
    def n_arrows(self):
        return len(self.src)

    def objects(self):
        return range(self.n_objects)

    def arrows(self):
        return range(len(self.src))

    def compose(self, g, h):
        return self.comp[(g, h)]

    def hom(self, x, y):
        """Arrows from ``x`` to ``y``."""
        return self._hom.get((x, y), ())

    def arrows_from(self, x):
        return self._out[x]

    def arrows_into(self, y):
        return self._in[y]

    def is_unit(self, g):
        return self.unit[self.src[g]] == g

    def obj_label(self, x):
        return self.obj_labels[x] if self.obj_labels is not None else x

    def arr_label(self, g):
        return self.arr_labels[g] if self.arr_labels is not None else g

    def __repr__(self):
        tag = "%s: " % self.name if self.name else ""
        return "FiniteGroupoid(%s%d objects, %d arrows)" % (tag, self.n_objects, self.n_arrows)


def validate_groupoid(G):
    """Check every groupoid axiom; return a ``ValidationReport`` of violations."""
    rep = ValidationReport()
    n, m = G.n_objects, G.n_arrows
    for g in range(m):
        if not (0 <= G.src[g] < n and 0 <= G.tgt[g] < n):
            rep.append(Violation("anchor out of range", (g,)))
    if len(G.inv) != m or len(G.unit) != n:
        rep.append(Violation("table length", (len(G.inv), len(G.unit))))
    if not rep.ok:
        return rep
    for (g, h), gh in G.comp.items():
        if not (0 <= g < m and 0 <= h < m and 0 <= gh < m):
            rep.append(Violation("comp out of range", (g, h, gh)))
            continue
        if G.src[g] != G.tgt[h]:
            rep.append(Violation("comp defined on non-composable pair", (g, h, gh)))
            continue
        if G.src[gh] != G.src[h] or G.tgt[gh] != G.tgt[g]:
            rep.append(Violation("comp endpoints", (g, h, gh)))
    for x in range(n):
        for g in G.arrows_from(x):
            for h in G.arrows_into(x):
                if (g, h) not in G.comp:
                    rep.append(Violation("comp undefined on composable pair", (g, h)))
    if not rep.ok:
        return rep
    for x in range(n):
        u = G.unit[x]
        if not (0 <= u < m) or G.src[u] != x or G.tgt[u] != x:
            rep.append(Violation("unit endpoints", (x, u)))
            continue
        for g in G.arrows_from(x):
            if G.comp[(g, u)] != g:
                rep.append(Violation("right unit law", (g, u)))
        for g in G.arrows_into(x):
            if G.comp[(u, g)] != g:
                rep.append(Violation("left unit law", (u, g)))
    for g in range(m):
        gi = G.inv[g]
        if not (0 <= gi < m) or G.src[gi] != G.tgt[g] or G.tgt[gi] != G.src[g]:
            rep.append(Violation("inverse endpoints", (g, gi)))
            continue
        if G.comp[(g, gi)] != G.unit[G.tgt[g]] or G.comp[(gi, g)] != G.unit[G.src[g]]:
            rep.append(Violation("inverse law", (g, gi)))
    if not rep.ok:
        return rep
    comp = G.comp
    for (g, h), gh in comp.items():
        for k in G.arrows_into(G.src[h]):
            if comp[(gh, k)] != comp[(g, comp[(h, k)])]:
                rep.append(Violation("associativity", (g, h, k)))
    return rep


def check_groupoid(G):
    rep = validate_groupoid(G)
    if not rep.ok:
        raise ValueError("invalid groupoid: %r" % (rep[0],))
    return G


# -- constructions --------------------------------------------------------------

def pair_groupoid(S):
    """``S x S`` with source/target the projections: arrow ``(a, b)`` goes ``b -> a``."""
    S = list(S)
    if not S:
        raise ValueError("pair groupoid of an empty set")
    arrows = [(a, b) for a in S for b in S]
    return FiniteGroupoid.build(
        S, arrows,
        src=lambda g: g[1], tgt=lambda g: g[0],
        compose=lambda g, h: (g[0], h[1]),
        inverse=lambda g: (g[1], g[0]),
        unit=lambda x: (x, x), name="Pair(%d)" % len(S))


def unit_groupoid(S):
    S = list(S)
    return FiniteGroupoid.build(
        S, S, src=lambda x: x, tgt=lambda x: x, compose=lambda g, h: g,
        inverse=lambda g: g, unit=lambda x: x, name="Unit(%d)" % len(S))


def point_groupoid():
    return unit_groupoid([0])


def group_as_groupoid(G):
    """The one-object groupoid ``(G => *)``; arrow ids are group elements."""
    n = G.order
    comp = {(a, b): G.mul(a, b) for a in range(n) for b in range(n)}
    return FiniteGroupoid(1, [0] * n, [0] * n, comp, G.inverse, [G.identity],
                          obj_labels=["*"], arr_labels=list(range(n)),
                          name="(%s=>*)" % (G.name or "G"))


class SetAction:
    """A left action of a finite group on the points ``0 .. n_points-1``.

    ``table[g][x]`` is ``g . x``.
    """

    def __init__(self, group, n_points, table):
        self.group = group
        self.n_points = int(n_points)
        self.table = tuple(tuple(int(v) for v in row) for row in table)

    @classmethod
    def from_function(cls, group, n_points, act):
        return cls(group, n_points, [[act(g, x) for x in range(n_points)] for g in group.elements()])

    @classmethod
    def from_generators(cls, group, n_points, gen_perms):
        """Extend images of ``group.generators()`` (as permutations) to a full action."""
        gens = group.generators()
        if len(gens) != len(gen_perms):
            raise ValueError("one permutation per generator required")
        table = [None] * group.order
        table[group.identity] = tuple(range(n_points))
        frontier = [group.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g, p in zip(gens, gen_perms):
                    b = group.mul(g, a)
                    img = tuple(p[table[a][x]] for x in range(n_points))
                    if table[b] is None:
                        table[b] = img
                        nxt.append(b)
                    elif table[b] != img:
                        raise ValueError("generator images do not define an action")
            frontier = nxt
        act = cls(group, n_points, table)
        if not act.validate().ok:
            raise ValueError("generator images do not define an action")
        return act

    def act(self, g, x):
        return self.table[g][x]

    def validate(self):
        rep = ValidationReport()
        G = self.group
        if len(self.table) != G.order:
            rep.append(Violation("table length", (len(self.table),)))
            return rep
        for g, row in enumerate(self.table):
            if len(row) != self.n_points or any(not 0 <= v < self.n_points for v in row):
                rep.append(Violation("row out of range", (g,)))
        if not rep.ok:
            return rep
        for x in range(self.n_points):
            if self.table[G.identity][x] != x:
                rep.append(Violation("identity acts trivially", (x,)))
        for g in G.elements():
            for h in G.elements():
                gh = G.mul(g, h)
                for x in range(self.n_points):
                    if self.table[g][self.table[h][x]] != self.table[gh][x]:
                        rep.append(Violation("compatibility", (g, h, x)))
                        break
        return rep

    def stabilizer(self, x):
        return [g for g in self.group.elements() if self.table[g][x] == x]

    def orbit(self, x):
        return sorted({self.table[g][x] for g in self.group.elements()})

    def is_free(self):
        return all(len(self.stabilizer(x)) == 1 for x in range(self.n_points))


def translation_groupoid(A):
    """The action groupoid ``G x| X``: arrow ``(g, x)`` goes from ``x`` to ``g.x``."""
    rep = A.validate()
    if not rep.ok:
        raise ValueError("invalid action: %r" % (rep[0],))
    G = A.group
    pts = list(range(A.n_points))
    arrows = [(g, x) for x in pts for g in G.elements()]
    return FiniteGroupoid.build(
        pts, arrows,
        src=lambda a: a[1], tgt=lambda a: A.table[a[0]][a[1]],
        compose=lambda a, b: (G.mul(a[0], b[0]), b[1]),
        inverse=lambda a: (G.inv(a[0]), A.table[a[0]][a[1]]),
        unit=lambda x: (G.identity, x),
        name="%s|x%d" % (G.name or "G", A.n_points))


def action_groupoid(H, points, anchor, act):
    """Translation groupoid of a left ``H``-action on a finite set along ``anchor``.

    ``act(h, p)`` is defined when ``src(h) == anchor(p)``.  Arrow ``(h, p)``
    goes from ``p`` to ``act(h, p)``.
    """
    points = list(points)
    arrows = [(h, p) for p in points for h in H.arrows_from(anchor(p))]
    return FiniteGroupoid.build(
        points, arrows,
        src=lambda a: a[1], tgt=lambda a: act(a[0], a[1]),
        compose=lambda a, b: (H.compose(a[0], b[0]), b[1]),
        inverse=lambda a: (H.inv[a[0]], act(a[0], a[1])),
        unit=lambda p: (H.unit[anchor(p)], p))


def product_groupoid(G, H):
    objs = [(x, y) for x in G.objects() for y in H.objects()]
    arrows = [(g, h) for g in G.arrows() for h in H.arrows()]
    return FiniteGroupoid.build(
        objs, arrows,
        src=lambda a: (G.src[a[0]], H.src[a[1]]),
        tgt=lambda a: (G.tgt[a[0]], H.tgt[a[1]]),
        compose=lambda a, b: (G.compose(a[0], b[0]), H.compose(a[1], b[1])),
        inverse=lambda a: (G.inv[a[0]], H.inv[a[1]]),
        unit=lambda o: (G.unit[o[0]], H.unit[o[1]]),
        name="%sx%s" % (G.name or "G", H.name or "H"))


def disjoint_union(*Gs):
    objs = [(i, x) for i, G in enumerate(Gs) for x in G.objects()]
    arrows = [(i, g) for i, G in enumerate(Gs) for g in G.arrows()]
    return FiniteGroupoid.build(
        objs, arrows,
        src=lambda a: (a[0], Gs[a[0]].src[a[1]]),
        tgt=lambda a: (a[0], Gs[a[0]].tgt[a[1]]),
        compose=lambda a, b: (a[0], Gs[a[0]].compose(a[1], b[1])),
        inverse=lambda a: (a[0], Gs[a[0]].inv[a[1]]),
        unit=lambda o: (o[0], Gs[o[0]].unit[o[1]]))


def full_subgroupoid(G, objects):
    """Full subgroupoid on ``objects``; labels are ambient object/arrow ids."""
    objects = sorted(set(objects))
    keep = set(objects)
    arrows = [g for g in G.arrows() if G.src[g] in keep and G.tgt[g] in keep]
    return FiniteGroupoid.build(
        objects, arrows, src=lambda g: G.src[g], tgt=lambda g: G.tgt[g],
        compose=G.compose, inverse=lambda g: G.inv[g], unit=lambda x: G.unit[x])


def transitive_groupoid(k, group):
    """``Pair(k) x (group => *)``: transitive on ``k`` objects with isotropy ``group``."""
    return product_groupoid(pair_groupoid(range(k)), group_as_groupoid(group))


def relabel_arrows(G, perm):
    """Isomorphic copy of ``G`` in which arrow ``g`` gets the new id ``perm[g]``."""
    perm = list(perm)
    inv_perm = [0] * len(perm)
    for old, new in enumerate(perm):
        inv_perm[new] = old
    m = G.n_arrows
    src = [G.src[inv_perm[i]] for i in range(m)]
    tgt = [G.tgt[inv_perm[i]] for i in range(m)]
    comp = {(perm[g], perm[h]): perm[gh] for (g, h), gh in G.comp.items()}
    inv = [perm[G.inv[inv_perm[i]]] for i in range(m)]
    unit = [perm[u] for u in G.unit]
    labels = None if G.arr_labels is None else [G.arr_labels[inv_perm[i]] for i in range(m)]
    return FiniteGroupoid(G.n_objects, src, tgt, comp, inv, unit,
                          obj_labels=G.obj_labels, arr_labels=labels, name=G.name)


# -- orbits and isotropy -----------------------------------------------------------

def _components(n, edges_a, edges_b):
    if n == 0:
        return []
    graph = coo_matrix((np.ones(len(edges_a)), (edges_a, edges_b)), shape=(n, n))
    _, lab = connected_components(graph, directed=False)
    classes = {}
    for x, c in enumerate(lab):
        classes.setdefault(int(c), []).append(x)
    return sorted(classes.values())


def orbits(G):
    """Partition of the objects into arrow-connected classes, sorted by least element."""
    return _components(G.n_objects, np.array(G.src, dtype=np.int64), np.array(G.tgt, dtype=np.int64))


def orbit_of(G, x):
    for cls in orbits(G):
        if x in cls:
            return cls
    raise KeyError(x)


def isotropy(G, a):
    """The isotropy group at ``a``; element labels are the arrow ids."""
    if not 0 <= a < G.n_objects:
        raise KeyError("unknown object %r" % (a,))
    arrows = list(G.hom(a, a))
    pos = {g: i for i, g in enumerate(arrows)}
    table = [[pos[G.compose(g, h)] for h in arrows] for g in arrows]
    return FiniteGroup(table, labels=arrows)


def base_change_iso(G, g):
    """Conjugation by an arrow ``g: a1 -> a0`` as an isomorphism ``G_a0 -> G_a1``.

    Sends ``x`` to ``g^-1 x g``.
    """
    a1, a0 = G.src[g], G.tgt[g]
    I0, I1 = isotropy(G, a0), isotropy(G, a1)
    pos1 = {arr: i for i, arr in enumerate(I1.labels)}
    gi = G.inv[g]
    images = [pos1[G.compose(gi, G.compose(x, g))] for x in I0.labels]
    hom = GroupHom(I0, I1, images)
    if not hom.is_isomorphism():
        raise AssertionError("conjugation failed to be an isomorphism")
    return hom


# -- functors ---------------------------------------------------------------------

class GroupoidFunctor:
    """A functor given by its object and arrow maps."""

    def __init__(self, source, target, obj_map, arr_map):
        self.source = source
        self.target = target
        self.obj_map = tuple(int(v) for v in obj_map)
        self.arr_map = tuple(int(v) for v in arr_map)

    def validate(self):
        S, T = self.source, self.target
        rep = ValidationReport()
        if len(self.obj_map) != S.n_objects or len(self.arr_map) != S.n_arrows:
            rep.append(Violation("map length", (len(self.obj_map), len(self.arr_map))))
            return rep
        F, f = self.arr_map, self.obj_map
        bad = [x for x in S.objects() if not 0 <= f[x] < T.n_objects]
        if bad:
            rep.append(Violation("object image out of range", (bad[0],)))
            return rep
        for g in S.arrows():
            if not 0 <= F[g] < T.n_arrows:
                rep.append(Violation("arrow image out of range", (g,)))
                return rep
            if T.src[F[g]] != f[S.src[g]] or T.tgt[F[g]] != f[S.tgt[g]]:
                rep.append(Violation("endpoints not preserved", (g,)))
            if F[S.inv[g]] != T.inv[F[g]]:
                rep.append(Violation("inverse not preserved", (g,)))
        for x in S.objects():
            if F[S.unit[x]] != T.unit[f[x]]:
                rep.append(Violation("unit not preserved", (x,)))
        for (g, h), gh in S.comp.items():
            if F[gh] != T.compose(F[g], F[h]):
                rep.append(Violation("composition not preserved", (g, h)))
        return rep

    def then(self, other):
        """The composite ``other . self``."""
        if other.source is not self.target:
            raise ValueError("functors not composable")
        return GroupoidFunctor(self.source, other.target,
                               [other.obj_map[x] for x in self.obj_map],
                               [other.arr_map[g] for g in self.arr_map])

    @classmethod
    def identity(cls, G):
        return cls(G, G, range(G.n_objects), range(G.n_arrows))

    def __repr__(self):
        return "GroupoidFunctor(%r -> %r)" % (self.source, self.target)


def inclusion_functor(G, objects):
    """Inclusion of the full subgroupoid on ``objects``; returns ``(subgroupoid, functor)``."""
    sub = full_subgroupoid(G, objects)
    return sub, GroupoidFunctor(sub, G, sub.obj_labels, sub.arr_labels)


def group_hom_functor(hom, source=None, target=None):
    """A group homomorphism as a functor between one-object groupoids."""
    S = source if source is not None else group_as_groupoid(hom.source)
    T = target if target is not None else group_as_groupoid(hom.target)
    return GroupoidFunctor(S, T, [0], hom.images)


WeakEquivalenceReport = namedtuple(
    "WeakEquivalenceReport", "ok essentially_surjective fully_faithful problems")


def is_weak_equivalence(phi):
    """Essential surjectivity plus full faithfulness, with a report of failures."""
    S, T = phi.source, phi.target
    if not phi.validate().ok:
        raise ValueError("not a functor")
    problems = []
    image = set(phi.obj_map)
    hit = set()
    for y in image:
        for g in T.arrows_from(y):
            hit.add(T.tgt[g])
    missing = [y for y in T.objects() if y not in hit]
    if missing:
        problems.append(("not essentially surjective", missing[0]))
    ff = True
    for x in S.objects():
        for y in S.objects():
            imgs = [phi.arr_map[g] for g in S.hom(x, y)]
            want = T.hom(phi.obj_map[x], phi.obj_map[y])
            if len(set(imgs)) != len(imgs) or set(imgs) != set(want):
                problems.append(("not fully faithful", (x, y)))
                ff = False
                break
        if not ff:
            break
    return WeakEquivalenceReport(not problems, not missing, ff, problems)


def orbit_isotropy_profile(G):
    """List of ``(representative, isotropy group)`` per orbit."""
    return [(cls[0], isotropy(G, cls[0])) for cls in orbits(G)]


def same_orbit_structure(G, H):
    """Whether the orbit sets match bijectively with isomorphic isotropy groups."""
    a = [grp for _, grp in orbit_isotropy_profile(G)]
    b = [grp for _, grp in orbit_isotropy_profile(H)]
    if len(a) != len(b):
        return False
    used = [False] * len(b)
    for ga in a:
        for j, gb in enumerate(b):
            if not used[j] and are_isomorphic(ga, gb):
                used[j] = True
                break
        else:
            return False
    return True
