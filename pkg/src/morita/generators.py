"""Seeded random instances for property tests and demos.

Every function takes a ``numpy.random.Generator``; nothing here reads global
random state, so a seed reproduces the same instance everywhere.
"""

from __future__ import annotations

from .bibundle import bundle_from_functor, morita_equivalent
from .cocycle import GridCover, coboundary
from .groupoid import (GroupoidFunctor, SetAction, disjoint_union, group_as_groupoid,
                       inclusion_functor, orbits, pair_groupoid, product_groupoid,
                       translation_groupoid)
from .groups import (GroupHom, cyclic, dihedral, direct_product, klein_four, symmetric,
                     trivial_group)
from .simplicial import ComplexAction, SimplicialComplex, cone, cycle_graph, path_graph


def small_groups(max_order=12):
    pool = [trivial_group(), cyclic(2), cyclic(3), cyclic(4), klein_four(), cyclic(5),
            cyclic(6), symmetric(3), cyclic(8), dihedral(4), direct_product(cyclic(2), cyclic(4)),
            cyclic(12)]
    return [G for G in pool if G.order <= max_order]


def pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


def random_coset_action(rng, G, max_orbits=3):
    """Disjoint union of coset spaces ``G/H`` for random cyclic subgroups ``H``."""
    k = int(rng.integers(1, max_orbits + 1))
    blocks = []
    for _ in range(k):
        h = int(rng.integers(G.order))
        H = G.closure([h])
        cosets, seen = [], set()
        for g in G.elements():
            if g not in seen:
                c = sorted(G.mul(g, x) for x in H)
                seen.update(c)
                cosets.append(c)
        blocks.append(cosets)
    points = [(b, i) for b, cs in enumerate(blocks) for i in range(len(cs))]
    where = {}
    for b, cs in enumerate(blocks):
        for i, c in enumerate(cs):
            for g in c:
                where[(b, g)] = i
    index = {p: n for n, p in enumerate(points)}

    def act(g, n):
        b, i = points[n]
        rep = blocks[b][i][0]
        return index[(b, where[(b, G.mul(g, rep))])]

    return SetAction.from_function(G, len(points), act)


def random_groupoid(rng, max_order=6, max_orbits=3):
    """A translation groupoid of a random coset action, or a disjoint union of two."""
    G = pick(rng, small_groups(max_order))
    T = translation_groupoid(random_coset_action(rng, G, max_orbits))
    if rng.random() < 0.3:
        G2 = pick(rng, small_groups(max_order))
        T = disjoint_union(T, translation_groupoid(random_coset_action(rng, G2, 1)))
    return T


# -- functors -------------------------------------------------------------------------

def _normal_subgroups(G):
    out = []
    for g in G.elements():
        N = G.closure([G.mul(G.mul(x, g), G.inv(x)) for x in G.elements()])
        if N not in out:
            out.append(N)
    return out


def random_group_epi(rng, G):
    """``(G => *) -> (G/N => *)`` for a random normal subgroup ``N``."""
    N = pick(rng, _normal_subgroups(G))
    Q, cls = G.quotient(N)
    return GroupoidFunctor(group_as_groupoid(G), group_as_groupoid(Q), [0], cls)


def translation_projection(A):
    """``G x| X -> (G => *)``, sending the arrow ``(g, x)`` to ``g``."""
    T = translation_groupoid(A)
    return GroupoidFunctor(T, group_as_groupoid(A.group), [0] * T.n_objects,
                           [g for g, _ in T.arr_labels])


def product_projection(G, H):
    """The first projection ``G x H -> G``."""
    P = product_groupoid(G, H)
    return GroupoidFunctor(P, G, [x for x, _ in P.obj_labels], [g for g, _ in P.arr_labels])


def random_lifting_functor(rng, max_order=6):
    """A random functor satisfying the cocycle-lifting hypotheses.

    Mixes group epimorphisms, translation projections, product projections and
    composites of these.
    """
    kind = int(rng.integers(4))
    G = pick(rng, [g for g in small_groups(max_order) if g.order > 1])
    if kind == 0:
        return random_group_epi(rng, G)
    if kind == 1:
        return translation_projection(random_coset_action(rng, G, 2))
    if kind == 2:
        base = random_groupoid(rng, max_order=4, max_orbits=2)
        other = pick(rng, [pair_groupoid(range(2)), group_as_groupoid(cyclic(2)),
                           translation_groupoid(random_coset_action(rng, cyclic(3), 1))])
        return product_projection(base, other)
    phi = translation_projection(random_coset_action(rng, G, 2))
    psi = random_group_epi(rng, G)
    # psi's source is a fresh copy of (G => *); rebuild it on phi's target
    return GroupoidFunctor(phi.source, psi.target, phi.obj_map,
                           [psi.arr_map[g] for g in phi.arr_map])


def random_cocycle(rng, G, n, N):
    """A random cocycle on the ``n``-dimensional ``N``-grid (a random coboundary)."""
    cover = GridCover(n, N)
    a = int(rng.integers(G.n_objects))
    out = G.arrows_from(a)
    lam = {mu: out[int(rng.integers(len(out)))] for mu in cover.cells}
    return coboundary(cover, G, lam)


def random_functor_into(rng, G):
    """A random functor ``H -> G`` built by one construction step.

    Steps: inclusion of a full subgroupoid, projection from a product with a
    small groupoid, or a translation projection when ``G`` has one object.
    """
    kind = int(rng.integers(3))
    if kind == 0:
        objs = [x for x in G.objects() if rng.random() < 0.6] or [int(rng.integers(G.n_objects))]
        return inclusion_functor(G, objs)[1]
    if kind == 1 or G.n_objects != 1:
        other = pick(rng, [pair_groupoid(range(2)), group_as_groupoid(cyclic(2)),
                           pair_groupoid(range(3))])
        return product_projection(G, other)
    # G is a one-object groupoid: use a translation groupoid over it
    table = [[G.compose(a, b) for b in G.arrows()] for a in G.arrows()]
    from .groups import FiniteGroup
    grp = FiniteGroup(table)
    A = random_coset_action(rng, grp, 2)
    T = translation_groupoid(A)
    return GroupoidFunctor(T, G, [0] * T.n_objects, [g for g, _ in T.arr_labels])


def random_weak_equivalence_into(rng, G):
    """A random weak equivalence ``H -> G``."""
    if rng.random() < 0.5:
        objs = {cls[int(rng.integers(len(cls)))] for cls in orbits(G)}
        objs |= {x for x in G.objects() if rng.random() < 0.4}
        return inclusion_functor(G, sorted(objs))[1]
    return product_projection(G, pair_groupoid(range(int(rng.integers(1, 4)))))


def random_principal_bundle(rng, G):
    """A principal bundle ``H -> G`` of the form ``<phi>``."""
    return bundle_from_functor(random_functor_into(rng, G))


def random_biprincipal_bundle(rng, G):
    """A biprincipal bundle into ``G``: ``<phi>`` for a weak equivalence, or a Morita witness."""
    if rng.random() < 0.7:
        return bundle_from_functor(random_weak_equivalence_into(rng, G))
    H = random_weak_equivalence_into(rng, G).source
    res = morita_equivalent(H, G)
    return res.witness


def random_equivalent_pair(rng, max_order=6):
    """Two groupoids that are Morita equivalent by construction."""
    G = random_groupoid(rng, max_order=max_order)
    H = random_weak_equivalence_into(rng, G).source
    if rng.random() < 0.5:
        H = product_groupoid(H, pair_groupoid(range(int(rng.integers(1, 3)))))
    return G, H


# -- complex actions -------------------------------------------------------------------

def _flag_fill(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    tris = [(a, b, c) for a, b in edges for c in adj[a] & adj[b] if c > max(a, b)]
    return tris


def random_free_action(rng, G, max_simplices=60, fill=True):
    """Free action on a random regular cover of a small graph (a voltage graph).

    Returns ``None`` when the draw fails to give a connected simplicial complex
    on which the action is free on every simplex.
    """
    nq = int(rng.integers(1, 4))
    extra = int(rng.integers(0, 2))
    qedges = [(i, i + 1) for i in range(nq - 1)]
    gens = G.generators()
    for _ in range(len(gens) + extra):
        qedges.append((int(rng.integers(nq)), int(rng.integers(nq))))
    volts = [int(rng.integers(G.order)) for _ in qedges]
    # make sure every generator appears as a voltage so the cover is connected
    for i, g in enumerate(gens):
        volts[nq - 1 + i] = g
    n = G.order * nq
    edges = set()
    for (u, v), lam in zip(qedges, volts):
        for g in G.elements():
            a, b = g * nq + u, G.mul(g, lam) * nq + v
            if a == b:
                return None
            edges.add((min(a, b), max(a, b)))
    tris = _flag_fill(n, sorted(edges)) if fill else []
    X = SimplicialComplex(n, edges, tris)
    if not X.is_connected() or X.n_simplices() > max_simplices:
        return None
    A = ComplexAction.from_function(G, X, lambda g, x: G.mul(g, x // nq) * nq + x % nq)
    # an involutive voltage on a loop flips the lifted edge; reject those draws
    return A if A.is_free() else None


def random_fixed_action(rng, G, max_simplices=60):
    """A free action coned off: the apex is a global fixed point."""
    for _ in range(50):
        A = random_free_action(rng, G, max_simplices=max_simplices // 3, fill=False)
        if A is None:
            continue
        X = cone(A.complex)
        if X.n_simplices() > max_simplices:
            continue
        apex = X.n_vertices - 1
        return ComplexAction.from_function(
            G, X, lambda g, v: apex if v == apex else A.act(g, v))
    return None


def random_mixed_action(rng, max_simplices=60):
    """Reflections and rotations of cycles and paths: some points fixed, some free."""
    kind = int(rng.integers(4))
    if kind == 0:
        n = 2 * int(rng.integers(3, 8))
        return ComplexAction.from_function(cyclic(2), cycle_graph(n),
                                           lambda g, v: v if g == 0 else (-v) % n)
    if kind == 1:
        n = int(rng.integers(3, 12))
        return ComplexAction.from_function(cyclic(2), path_graph(n),
                                           lambda g, v: v if g == 0 else n - 1 - v)
    if kind == 2:
        D = dihedral(3)
        return ComplexAction(D, cycle_graph(3), [list(p) for p in D.labels])
    k = pick(rng, [2, 3])
    n = k * int(rng.integers(2, 4))
    X = cone(cycle_graph(n))
    return ComplexAction.from_function(
        cyclic(k), X, lambda g, v: v if v == n else (v + g * (n // k)) % n)


def random_complex_action(rng, kind=None, max_order=6):
    """A random connected action of a group of order at most ``max_order``."""
    kinds = ("free", "fixed", "mixed")
    kind = kind or kinds[int(rng.integers(3))]
    while True:
        if kind == "mixed":
            return random_mixed_action(rng)
        G = pick(rng, [g for g in small_groups(max_order) if g.order > 1])
        A = random_free_action(rng, G) if kind == "free" else random_fixed_action(rng, G)
        if A is not None:
            return A


def random_group_hom(rng, G, H):
    """A homomorphism ``G -> H`` found by random generator images (falls back to trivial)."""
    from .groups import _extend_from_generators
    gens = G.generators()
    for _ in range(50):
        imgs = [int(rng.integers(H.order)) for _ in gens]
        f = _extend_from_generators(G, H, gens, imgs)
        if f is not None:
            return GroupHom(G, H, f)
    return GroupHom(G, H, [H.identity] * G.order)
