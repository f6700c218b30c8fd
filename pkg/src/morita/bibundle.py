"""Principal bibundles between finite groupoids.

A ``Bibundle`` with left groupoid ``H`` and right groupoid ``G`` is a
G-bundle over H, i.e. a morphism ``H -> G`` in the Morita category.  With this
orientation ``Q (x) P`` (``Q: K -> H``, ``P: H -> G``) is the composite
``K -> G`` and ``<psi . phi> ~ <phi> (x) <psi>``.
"""

from __future__ import annotations

from collections import namedtuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groupoid import (GroupoidFunctor, ValidationReport, Violation, action_groupoid,
                       disjoint_union, group_as_groupoid, isotropy, orbits)
from .groups import find_isomorphism


def groupoids_equal(A, B):
    if A is B:
        return True
    return (A.n_objects == B.n_objects and A.src == B.src and A.tgt == B.tgt
            and A.inv == B.inv and A.unit == B.unit and dict(A.comp) == dict(B.comp))


class Bibundle:
    """A finite set with commuting left ``left``- and right ``right``-actions.

    ``left_act[(h, p)]`` is defined when ``src(h) == pi(p)``;
    ``right_act[(p, g)]`` when ``eps(p) == tgt(g)``.
    """

    def __init__(self, left, right, n_total, pi, eps, left_act, right_act, labels=None):
        self.left = left
        self.right = right
        self.n_total = int(n_total)
        self.pi = tuple(int(v) for v in pi)
        self.eps = tuple(int(v) for v in eps)
        self.left_act = dict(left_act)
        self.right_act = dict(right_act)
        self.labels = tuple(labels) if labels is not None else None

    def __repr__(self):
        return "Bibundle(%d points, %r -> %r)" % (self.n_total, self.left, self.right)

    def hp(self, h, p):
        return self.left_act[(h, p)]

    def pg(self, p, g):
        return self.right_act[(p, g)]

    def validate(self):
        """Check action laws and the compatibility axioms between the two actions."""
        H, G = self.left, self.right
        rep = ValidationReport()
        n = self.n_total
        if len(self.pi) != n or len(self.eps) != n:
            rep.append(Violation("anchor length", (len(self.pi), len(self.eps))))
            return rep
        for p in range(n):
            if not (0 <= self.pi[p] < H.n_objects and 0 <= self.eps[p] < G.n_objects):
                rep.append(Violation("anchor out of range", (p,)))
        if not rep.ok:
            return rep
        for p in range(n):
            for h in H.arrows_from(self.pi[p]):
                q = self.left_act.get((h, p))
                if q is None or not 0 <= q < n:
                    rep.append(Violation("left action undefined", (h, p)))
                elif self.pi[q] != H.tgt[h]:
                    rep.append(Violation("left anchor law", (h, p)))
            for g in G.arrows_into(self.eps[p]):
                q = self.right_act.get((p, g))
                if q is None or not 0 <= q < n:
                    rep.append(Violation("right action undefined", (p, g)))
                elif self.eps[q] != G.src[g]:
                    rep.append(Violation("right anchor law", (p, g)))
        if len(self.left_act) != sum(len(H.arrows_from(x)) for x in self.pi):
            rep.append(Violation("left action defined off its domain", ()))
        if len(self.right_act) != sum(len(G.arrows_into(a)) for a in self.eps):
            rep.append(Violation("right action defined off its domain", ()))
        if not rep.ok:
            return rep
        L, R = self.left_act, self.right_act
        for p in range(n):
            if L[(H.unit[self.pi[p]], p)] != p:
                rep.append(Violation("left unit", (p,)))
            if R[(p, G.unit[self.eps[p]])] != p:
                rep.append(Violation("right unit", (p,)))
        for (h, p), q in L.items():
            for h2 in H.arrows_from(H.tgt[h]):
                if L[(h2, q)] != L[(H.compose(h2, h), p)]:
                    rep.append(Violation("left associativity", (h2, h, p)))
            if self.eps[q] != self.eps[p]:
                rep.append(Violation("eps(hp) = eps(p)", (h, p)))
        for (p, g), q in R.items():
            for g2 in G.arrows_into(G.src[g]):
                if R[(q, g2)] != R[(p, G.compose(g, g2))]:
                    rep.append(Violation("right associativity", (p, g, g2)))
            if self.pi[q] != self.pi[p]:
                rep.append(Violation("pi(pg) = pi(p)", (p, g)))
        if not rep.ok:
            return rep
        for (h, p), q in L.items():
            for g in G.arrows_into(self.eps[p]):
                if R[(q, g)] != L[(h, R[(p, g)])]:
                    rep.append(Violation("actions commute", (h, p, g)))
        return rep


PrincipalityReport = namedtuple(
    "PrincipalityReport",
    "surjective_pi right_action_free right_action_fiber_transitive counterexamples")


def _principal_report(n, fiber_anchor, base_n, moves_from):
    """Generic principality test: anchor onto, moves free and transitive on anchor fibers."""
    cex = []
    hit = set(fiber_anchor)
    surj = len(hit) == base_n
    if not surj:
        cex.append(("empty fiber", min(set(range(base_n)) - hit)))
    free = True
    trans = True
    fibers = {}
    for p in range(n):
        fibers.setdefault(fiber_anchor[p], []).append(p)
    for p in range(n):
        imgs = [q for _, q in moves_from(p)]
        if len(set(imgs)) != len(imgs):
            free = False
            seen = {}
            for a, q in moves_from(p):
                if q in seen:
                    cex.append(("not free", (p, seen[q], a)))
                    break
                seen[q] = a
        missing = set(fibers[fiber_anchor[p]]) - set(imgs)
        if missing:
            trans = False
            cex.append(("not transitive", (p, min(missing))))
    return PrincipalityReport(surj, free, trans, cex)


def is_principal(P):
    """Right principality over the left anchor (pi onto; mu bijective)."""
    G = P.right
    return _principal_report(
        P.n_total, P.pi, P.left.n_objects,
        lambda p: [(g, P.right_act[(p, g)]) for g in G.arrows_into(P.eps[p])])


def is_left_principal(P):
    """Left principality over the right anchor."""
    H = P.left
    return _principal_report(
        P.n_total, P.eps, P.right.n_objects,
        lambda p: [(h, P.left_act[(h, p)]) for h in H.arrows_from(P.pi[p])])


def report_ok(rep):
    return rep.surjective_pi and rep.right_action_free and rep.right_action_fiber_transitive


def is_biprincipal(P):
    return report_ok(is_principal(P)) and report_ok(is_left_principal(P))


# -- constructions ------------------------------------------------------------------

def bundle_from_functor(phi):
    """The bundle ``<phi> = H0 x_G0 G1`` of a functor ``phi: H -> G``."""
    H, G = phi.source, phi.target
    total = [(y, g) for y in H.objects() for g in G.arrows_into(phi.obj_map[y])]
    index = {pt: i for i, pt in enumerate(total)}
    pi = [y for y, _ in total]
    eps = [G.src[g] for _, g in total]
    left, right = {}, {}
    for i, (y, g) in enumerate(total):
        for h in H.arrows_from(y):
            left[(h, i)] = index[(H.tgt[h], G.compose(phi.arr_map[h], g))]
        for g2 in G.arrows_into(G.src[g]):
            right[(i, g2)] = index[(y, G.compose(g, g2))]
    return Bibundle(H, G, len(total), pi, eps, left, right, labels=total)


def unit_bundle(G):
    """The identity morphism of ``G``: ``G1`` with anchors ``tgt`` and ``src``."""
    return bundle_from_functor(GroupoidFunctor.identity(G))


def _components(n, a, b):
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(a)), (a, b)), shape=(n, n))
    return connected_components(graph, directed=False)[1]


def tensor(Q, P):
    """``Q (x)_H P``: orbits of the diagonal ``H``-action on ``Q x_H0 P``."""
    if not groupoids_equal(Q.right, P.left):
        raise ValueError("tensor: right groupoid of Q differs from left groupoid of P")
    H = P.left
    by_anchor = {}
    for p in range(P.n_total):
        by_anchor.setdefault(P.pi[p], []).append(p)
    pairs = [(q, p) for q in range(Q.n_total) for p in by_anchor.get(Q.eps[q], [])]
    index = {pr: i for i, pr in enumerate(pairs)}
    ea, eb = [], []
    for i, (q, p) in enumerate(pairs):
        for h in H.arrows_into(Q.eps[q]):
            j = index[(Q.right_act[(q, h)], P.left_act[(H.inv[h], p)])]
            ea.append(i)
            eb.append(j)
    lab = _components(len(pairs), np.array(ea, dtype=np.int64), np.array(eb, dtype=np.int64))
    cls_of_label = {}
    cls = []
    reps = []
    for i, c in enumerate(lab):
        c = int(c)
        if c not in cls_of_label:
            cls_of_label[c] = len(reps)
            reps.append(pairs[i])
        cls.append(cls_of_label[c])
    pi = [Q.pi[q] for q, _ in reps]
    eps = [P.eps[p] for _, p in reps]
    left, right = {}, {}
    K, G = Q.left, P.right
    for c, (q, p) in enumerate(reps):
        for k in K.arrows_from(Q.pi[q]):
            left[(k, c)] = cls[index[(Q.left_act[(k, q)], p)]]
        for g in G.arrows_into(P.eps[p]):
            right[(c, g)] = cls[index[(q, P.right_act[(p, g)])]]
    return Bibundle(K, G, len(reps), pi, eps, left, right, labels=reps)


def inverse_bibundle(P):
    """Same points with the actions transposed; requires ``P`` biprincipal."""
    if not is_biprincipal(P):
        raise ValueError("inverse_bibundle: bundle is not biprincipal")
    H, G = P.left, P.right
    left = {}
    for (p, g), _ in P.right_act.items():
        # g' . p := p . g'^-1 for g' = g^-1
        left[(G.inv[g], p)] = P.right_act[(p, g)]
    right = {}
    for (h, p), _ in P.left_act.items():
        right[(p, H.inv[h])] = P.left_act[(h, p)]
    return Bibundle(G, H, P.n_total, P.eps, P.pi, left, right, labels=P.labels)


def bibundle_iso_search(P, Q):
    """Lexicographically least equivariant anchor-preserving bijection ``P -> Q``, or None."""
    if not (groupoids_equal(P.left, Q.left) and groupoids_equal(P.right, Q.right)):
        raise ValueError("bundles over different groupoids")
    if P.n_total != Q.n_total:
        return None
    key_p = sorted(zip(P.pi, P.eps))
    if key_p != sorted(zip(Q.pi, Q.eps)):
        return None
    H, G = P.left, P.right
    n = P.n_total

    def moves(B, x):
        for h in H.arrows_from(B.pi[x]):
            yield ("L", h), B.left_act[(h, x)]
        for g in G.arrows_into(B.eps[x]):
            yield ("R", g), B.right_act[(x, g)]

    ea, eb = [], []
    for x in range(n):
        for _, y in moves(P, x):
            ea.append(x)
            eb.append(y)
    lab = _components(n, np.array(ea, dtype=np.int64), np.array(eb, dtype=np.int64))
    orbit_reps = []
    seen = set()
    for x in range(n):
        if int(lab[x]) not in seen:
            seen.add(int(lab[x]))
            orbit_reps.append(x)

    def act(B, x, mv):
        kind, a = mv
        return B.left_act[(a, x)] if kind == "L" else B.right_act[(x, a)]

    def propagate(rep, img, f, used):
        """Extend ``f`` over the orbit of ``rep``; return the newly set points or None."""
        if img in used:
            return None
        f[rep] = img
        used.add(img)
        stack = [rep]
        added = [rep]
        ok = True
        while stack and ok:
            x = stack.pop()
            for mv, y in moves(P, x):
                fy = act(Q, f[x], mv)
                if f[y] < 0:
                    if fy in used:
                        ok = False
                        break
                    f[y] = fy
                    used.add(fy)
                    added.append(y)
                    stack.append(y)
                elif f[y] != fy:
                    ok = False
                    break
        if ok:
            return added
        for x in added:
            used.discard(f[x])
            f[x] = -1
        return None

    f = [-1] * n
    used = set()

    def search(i):
        if i == len(orbit_reps):
            return True
        r = orbit_reps[i]
        for c in range(n):
            if Q.pi[c] != P.pi[r] or Q.eps[c] != P.eps[r] or c in used:
                continue
            added = propagate(r, c, f, used)
            if added is None:
                continue
            if search(i + 1):
                return True
            for x in added:
                used.discard(f[x])
                f[x] = -1
        return False

    if not search(0):
        return None
    return tuple(f)


def is_bundle_isomorphism(P, Q, f):
    """Independent check that ``f`` is an equivariant anchor-preserving bijection."""
    if sorted(f) != list(range(Q.n_total)) or len(f) != P.n_total:
        return False
    if any(P.pi[x] != Q.pi[f[x]] or P.eps[x] != Q.eps[f[x]] for x in range(P.n_total)):
        return False
    if any(f[y] != Q.left_act[(h, f[x])] for (h, x), y in P.left_act.items()):
        return False
    return all(f[y] == Q.right_act[(f[x], g)] for (x, g), y in P.right_act.items())


def fiber_groupoid(P, a0):
    """Translation groupoid of the left action restricted to ``eps^-1(a0)``."""
    if not 0 <= a0 < P.right.n_objects:
        raise KeyError("unknown object %r" % (a0,))
    pts = [p for p in range(P.n_total) if P.eps[p] == a0]
    return action_groupoid(P.left, pts, anchor=lambda p: P.pi[p],
                           act=lambda h, p: P.left_act[(h, p)])


# -- Morita equivalence -------------------------------------------------------------

MoritaResult = namedtuple("MoritaResult", "equivalent witness matching reason")


def skeleton(G, reps=None):
    """Disjoint union of isotropy groups at one object per orbit, with its inclusion into ``G``."""
    if reps is None:
        reps = [cls[0] for cls in orbits(G)]
    groups = [isotropy(G, a) for a in reps]
    S = disjoint_union(*[group_as_groupoid(I) for I in groups])
    obj_map = [reps[i] for i, _ in S.obj_labels]
    arr_map = [groups[i].labels[a] for i, a in S.arr_labels]
    return S, GroupoidFunctor(S, G, obj_map, arr_map), groups


def morita_equivalent(G, H):
    """Decide Morita equivalence by orbit/isotropy matching; build and check a witness.

    The witness is ``<iota_G>^-1 (x) <iota_H . alpha>`` where ``iota`` are skeleton
    inclusions and ``alpha`` matches the isotropy groups.
    """
    og, oh = orbits(G), orbits(H)
    if len(og) != len(oh):
        return MoritaResult(False, None, None, "orbit counts differ (%d vs %d)" % (len(og), len(oh)))
    iso_g = [isotropy(G, c[0]) for c in og]
    iso_h = [isotropy(H, c[0]) for c in oh]
    matching, isos = [], []
    used = [False] * len(oh)
    for i, A in enumerate(iso_g):
        for j, B in enumerate(iso_h):
            if used[j]:
                continue
            alpha = find_isomorphism(A, B)
            if alpha is not None:
                used[j] = True
                matching.append((og[i][0], oh[j][0]))
                isos.append(alpha)
                break
        else:
            return MoritaResult(False, None, None,
                                "no orbit of H with isotropy isomorphic to that at %r" % (og[i][0],))
    S_g, iota_g, _ = skeleton(G, [a for a, _ in matching])
    S_h, iota_h, _ = skeleton(H, [b for _, b in matching])
    # alpha: S_g -> S_h, component i to component i
    pos_h = {lab: k for k, lab in enumerate(S_h.arr_labels)}
    arr_map = [pos_h[(i, isos[i](a))] for i, a in S_g.arr_labels]
    alpha = GroupoidFunctor(S_g, S_h, range(S_g.n_objects), arr_map)
    witness = tensor(inverse_bibundle(bundle_from_functor(iota_g)),
                     bundle_from_functor(alpha.then(iota_h)))
    if not is_biprincipal(witness):
        raise AssertionError("Morita witness failed the principality check")
    return MoritaResult(True, witness, matching, "orbit/isotropy match")
