"""Two-dimensional simplicial and cell complexes, group actions on them, and pi_1.

A ``SimplicialComplex`` has vertices ``0 .. n-1``, edges as sorted pairs and
triangles as sorted triples.  A ``CellComplex`` is the more flexible
2-dimensional CW model (oriented edges, possibly loops or parallel, faces
given by boundary words); it is what the Borel constructions are built from.
"""

from __future__ import annotations

from collections import deque, namedtuple
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .fpgroup import GroupPresentation, PresentationMap, free_reduce, invert_word
from .groupoid import SetAction, ValidationReport, Violation


class SimplicialComplex:
    """An abstract simplicial complex of dimension at most two."""

    def __init__(self, n_vertices, edges=(), triangles=(), labels=None, name=None):
        self.n_vertices = int(n_vertices)
        tris = set()
        for t in triangles:
            t = tuple(sorted(int(v) for v in t))
            if len(set(t)) != 3:
                raise ValueError("degenerate triangle %r" % (t,))
            tris.add(t)
        eds = set()
        for e in edges:
            e = tuple(sorted(int(v) for v in e))
            if len(set(e)) != 2:
                raise ValueError("degenerate edge %r" % (e,))
            eds.add(e)
        for a, b, c in tris:
            eds.update([(a, b), (a, c), (b, c)])
        for e in eds:
            if not all(0 <= v < self.n_vertices for v in e):
                raise ValueError("edge %r uses an unknown vertex" % (e,))
        self.edges = tuple(sorted(eds))
        self.triangles = tuple(sorted(tris))
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.edge_index = {e: i for i, e in enumerate(self.edges)}

    def vertices(self):
        return range(self.n_vertices)

    @property
    def dimension(self):
        if self.triangles:
            return 2
        if self.edges:
            return 1
        return 0 if self.n_vertices else -1

    def simplices(self):
        return [(v,) for v in self.vertices()] + list(self.edges) + list(self.triangles)

    def n_simplices(self):
        return self.n_vertices + len(self.edges) + len(self.triangles)

    def euler_characteristic(self):
        return self.n_vertices - len(self.edges) + len(self.triangles)

    def neighbors(self, v):
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)

    def closed_star(self, v):
        """Vertices of all simplices containing ``v``."""
        out = {v}
        for s in self.edges + self.triangles:
            if v in s:
                out.update(s)
        return sorted(out)

    def components(self):
        n = self.n_vertices
        if n == 0:
            return []
        a = np.array([e[0] for e in self.edges], dtype=np.int64)
        b = np.array([e[1] for e in self.edges], dtype=np.int64)
        g = coo_matrix((np.ones(len(a)), (a, b)), shape=(n, n))
        _, lab = connected_components(g, directed=False)
        classes = {}
        for v, c in enumerate(lab):
            classes.setdefault(int(c), []).append(v)
        return sorted(classes.values())

    def is_connected(self):
        return len(self.components()) == 1

    def validate(self):
        rep = ValidationReport()
        eds = set(self.edges)
        for a, b, c in self.triangles:
            for e in ((a, b), (a, c), (b, c)):
                if e not in eds:
                    rep.append(Violation("missing face", (a, b, c)))
        return rep

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex) and self.n_vertices == other.n_vertices
                and self.edges == other.edges and self.triangles == other.triangles)

    def __hash__(self):
        return hash((self.n_vertices, self.edges, self.triangles))

    def __repr__(self):
        tag = "%s: " % self.name if self.name else ""
        return "SimplicialComplex(%s%d vertices, %d edges, %d triangles)" % (
            tag, self.n_vertices, len(self.edges), len(self.triangles))


# -- constructors --------------------------------------------------------------------

def point_complex():
    return SimplicialComplex(1, name="point")


def path_graph(n):
    """The path with ``n`` vertices."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return SimplicialComplex(n, [(i, i + 1) for i in range(n - 1)], name="P%d" % n)


def cycle_graph(n):
    if n < 3:
        raise ValueError("a simplicial cycle needs at least three vertices")
    return SimplicialComplex(n, [(i, (i + 1) % n) for i in range(n)], name="C%d" % n)


def filled_triangle():
    return SimplicialComplex(3, triangles=[(0, 1, 2)], name="disk")


def triangle_boundary():
    return SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)], name="C3")


def cone(X):
    """Cone on ``X`` with apex ``X.n_vertices``."""
    a = X.n_vertices
    edges = list(X.edges) + [(v, a) for v in X.vertices()]
    tris = [(u, v, a) for u, v in X.edges]
    return SimplicialComplex(a + 1, edges, tris, name="cone(%s)" % (X.name or "X"))


def rp2_complex():
    """The six-vertex triangulation of the real projective plane."""
    tris = [(0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
            (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5)]
    return SimplicialComplex(6, triangles=tris, name="RP2")


def grid_complex(n, N):
    """Triangulated cube ``[0, N]^n`` for ``n <= 2``; cells of the cube cover are unit squares."""
    if n < 0 or n > 2:
        raise ValueError("grid complexes are only modelled in dimension <= 2")
    if N < 1:
        raise ValueError("need at least one subdivision")
    if n == 0:
        return point_complex()
    if n == 1:
        return SimplicialComplex(N + 1, [(i, i + 1) for i in range(N)], name="I^1/%d" % N)

    def vid(i, j):
        return i * (N + 1) + j

    tris = []
    for i in range(N):
        for j in range(N):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    labels = [(i, j) for i in range(N + 1) for j in range(N + 1)]
    return SimplicialComplex((N + 1) ** 2, triangles=tris, labels=labels, name="I^2/%d" % N)


def barycentric_subdivision(X):
    """Vertices are the simplices of ``X``; simplices are chains under inclusion."""
    simp = sorted(X.simplices(), key=lambda s: (len(s), s))
    idx = {s: i for i, s in enumerate(simp)}
    edges, tris = [], []
    for s in simp:
        faces = [f for k in range(1, len(s)) for f in combinations(s, k)]
        for f in faces:
            edges.append((idx[f], idx[s]))
        if len(s) == 3:
            for e in combinations(s, 2):
                for v in combinations(e, 1):
                    tris.append((idx[v], idx[e], idx[s]))
    return SimplicialComplex(len(simp), edges, tris, labels=simp,
                             name="sd(%s)" % (X.name or "X"))


def product_2skeleton(X, Y, key_x=None, key_y=None):
    """Staircase triangulation of ``|X| x |Y|`` truncated to dimension two.

    Simplices are chains ``(x_0, y_0) < (x_1, y_1) < ...`` in the product of the
    vertex orders (given by ``key_x``/``key_y``, default the ids) whose
    coordinates span simplices of the factors.
    """
    kx = key_x or (lambda v: v)
    ky = key_y or (lambda v: v)
    rx = {v: r for r, v in enumerate(sorted(X.vertices(), key=lambda v: (kx(v), v)))}
    ry = {v: r for r, v in enumerate(sorted(Y.vertices(), key=lambda v: (ky(v), v)))}
    ny = Y.n_vertices

    def vid(x, y):
        return x * ny + y

    edges, tris = set(), set()
    sx = [tuple(sorted(s, key=rx.get)) for s in X.simplices()]
    sy = [tuple(sorted(s, key=ry.get)) for s in Y.simplices()]
    for s in sx:
        for t in sy:
            if len(s) == 1 and len(t) == 1:
                continue
            # monotone staircase chains of length <= 3 in the grid s x t
            pts = [(i, j) for i in range(len(s)) for j in range(len(t))]
            for p, q in combinations(pts, 2):
                if p[0] <= q[0] and p[1] <= q[1]:
                    edges.add(tuple(sorted((vid(s[p[0]], t[p[1]]), vid(s[q[0]], t[q[1]])))))
            for p, q, r in combinations(pts, 3):
                chain = sorted([p, q, r])
                if all(chain[k][0] <= chain[k + 1][0] and chain[k][1] <= chain[k + 1][1] for k in range(2)):
                    tris.add(tuple(sorted(vid(s[c[0]], t[c[1]]) for c in chain)))
    labels = [(x, y) for x in X.vertices() for y in Y.vertices()]
    return SimplicialComplex(X.n_vertices * ny, edges, tris, labels=labels,
                             name="%sx%s" % (X.name or "X", Y.name or "Y"))


def eg_skeleton(G):
    """Free, simply connected G-complex: the three-fold join ``G * G * G``.

    Vertices are ``(g, layer)`` with id ``layer * |G| + g``; ``G`` acts by
    left multiplication on ``g``.  Returns a ``ComplexAction``.
    """
    n = G.order
    edges = [(i * n + a, j * n + b) for i, j in ((0, 1), (0, 2), (1, 2))
             for a in range(n) for b in range(n)]
    tris = [(a, n + b, 2 * n + c) for a in range(n) for b in range(n) for c in range(n)]
    labels = [(g, layer) for layer in range(3) for g in range(n)]
    X = SimplicialComplex(3 * n, edges, tris, labels=labels, name="EG(%s)" % (G.name or "G"))
    table = [[layer * n + G.mul(g, h) for layer in range(3) for h in range(n)] for g in G.elements()]
    return ComplexAction(G, X, table)


# -- group actions -------------------------------------------------------------------

class ComplexAction:
    """A left action of a finite group on a simplicial complex by automorphisms."""

    def __init__(self, group, complex, table):
        self.group = group
        self.complex = complex
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        rep = self.validate()
        if not rep.ok:
            raise ValueError("invalid complex action: %r" % (rep[0],))

    @classmethod
    def from_function(cls, group, complex, act):
        return cls(group, complex, [[act(g, v) for v in complex.vertices()] for g in group.elements()])

    @classmethod
    def from_generators(cls, group, complex, perms):
        sa = SetAction.from_generators(group, complex.n_vertices, perms)
        return cls(group, complex, sa.table)

    @classmethod
    def trivial(cls, group, complex):
        return cls(group, complex, [list(complex.vertices())] * group.order)

    def act(self, g, v):
        return self.table[g][v]

    def act_simplex(self, g, s):
        return tuple(sorted(self.table[g][v] for v in s))

    def set_action(self):
        return SetAction(self.group, self.complex.n_vertices, self.table)

    def validate(self):
        rep = self.set_action().validate()
        if not rep.ok:
            return rep
        X = self.complex
        eds, tris = set(X.edges), set(X.triangles)
        for g in self.group.elements():
            for e in X.edges:
                if self.act_simplex(g, e) not in eds:
                    rep.append(Violation("edge not mapped to an edge", (g, e)))
                    return rep
            for t in X.triangles:
                if self.act_simplex(g, t) not in tris:
                    rep.append(Violation("triangle not mapped to a triangle", (g, t)))
                    return rep
        return rep

    def is_free_on_vertices(self):
        e = self.group.identity
        return all(self.table[g][v] != v for g in self.group.elements() if g != e
                   for v in self.complex.vertices())

    def simplex_stabilizer(self, s):
        s = tuple(sorted(s))
        return [g for g in self.group.elements() if self.act_simplex(g, s) == s]

    def is_free(self):
        """No non-identity element maps any simplex to itself."""
        return all(len(self.simplex_stabilizer(s)) == 1 for s in self.complex.simplices())

    def vertex_orbits(self):
        seen, out = set(), []
        for v in self.complex.vertices():
            if v not in seen:
                orb = sorted({self.table[g][v] for g in self.group.elements()})
                seen.update(orb)
                out.append(orb)
        return out

    def subdivide(self):
        """The induced action on the barycentric subdivision."""
        sd = barycentric_subdivision(self.complex)
        idx = {s: i for i, s in enumerate(sd.labels)}
        table = [[idx[self.act_simplex(g, s)] for s in sd.labels] for g in self.group.elements()]
        return ComplexAction(self.group, sd, table)

    def __repr__(self):
        return "ComplexAction(%r on %r)" % (self.group, self.complex)


QuotientResult = namedtuple("QuotientResult", "complex vertex_map action subdivisions")


def _regular(A):
    """No simplex meets its own orbit twice, and simplex orbits are determined by vertex orbits."""
    orb = {}
    for k, o in enumerate(A.vertex_orbits()):
        for v in o:
            orb[v] = k
    seen = {}
    for s in A.complex.simplices():
        vs = tuple(sorted(orb[v] for v in s))
        if len(set(vs)) != len(vs):
            return False
        rep = min(A.act_simplex(g, s) for g in A.group.elements())
        if seen.setdefault(vs, rep) != rep:
            return False
    return True


def quotient_by_free_action(A, max_subdivisions=2):
    """Orbit complex of a free simplicial action, subdividing (at most twice) to make it regular."""
    if not A.is_free():
        raise ValueError("action is not free on simplices")
    rounds = 0
    while not _regular(A):
        if rounds >= max_subdivisions:
            raise ValueError("action still not regular after %d subdivisions" % rounds)
        A = A.subdivide()
        rounds += 1
    orbits = A.vertex_orbits()
    vmap = [0] * A.complex.n_vertices
    for k, o in enumerate(orbits):
        for v in o:
            vmap[v] = k
    X = A.complex
    Q = SimplicialComplex(len(orbits), [tuple(vmap[v] for v in e) for e in X.edges],
                          [tuple(vmap[v] for v in t) for t in X.triangles],
                          name="%s/%s" % (X.name or "X", A.group.name or "G"))
    if X.euler_characteristic() != A.group.order * Q.euler_characteristic():
        raise AssertionError("Euler characteristic is not multiplicative for the quotient")
    return QuotientResult(Q, tuple(vmap), A, rounds)


# -- cell complexes and pi_1 -----------------------------------------------------------

Pi1Data = namedtuple("Pi1Data", "presentation base tree_paths")


class CellComplex:
    """A connected-or-not 2-dimensional CW complex.

    ``edges[k] = (src, tgt)``; edge ``k`` is the letter ``k + 1``.  Each face is a
    closed edge path given as a word in these letters.
    """

    def __init__(self, n_vertices, edges, faces=(), edge_labels=None, name=None):
        self.n_vertices = int(n_vertices)
        self.edges = tuple((int(a), int(b)) for a, b in edges)
        self.faces = tuple(tuple(int(x) for x in f) for f in faces)
        self.edge_labels = tuple(edge_labels) if edge_labels is not None else None
        self.name = name
        for f in self.faces:
            if not self.is_closed_path(f):
                raise ValueError("face boundary %r is not a closed edge path" % (f,))

    def endpoint(self, letter):
        a, b = self.edges[abs(letter) - 1]
        return (a, b) if letter > 0 else (b, a)

    def is_closed_path(self, word):
        if not word:
            return True
        cur = self.endpoint(word[0])[0]
        start = cur
        for x in word:
            a, b = self.endpoint(x)
            if a != cur:
                return False
            cur = b
        return cur == start

    def euler_characteristic(self):
        return self.n_vertices - len(self.edges) + len(self.faces)

    def spanning_paths(self, base):
        """Edge words of a BFS spanning tree from ``base``; raises if disconnected."""
        inc = [[] for _ in range(self.n_vertices)]
        for k, (a, b) in enumerate(self.edges):
            inc[a].append((k + 1, b))
            inc[b].append((-(k + 1), a))
        path = {base: ()}
        tree = set()
        queue = deque([base])
        while queue:
            v = queue.popleft()
            for letter, w in inc[v]:
                if w not in path:
                    path[w] = path[v] + (letter,)
                    tree.add(abs(letter))
                    queue.append(w)
        if len(path) != self.n_vertices:
            raise ValueError("complex is not connected")
        return path, tree

    def pi1(self, base=0):
        """Presentation with one generator per edge, tree edges and face boundaries as relators."""
        path, tree = self.spanning_paths(base)
        rels = [(k,) for k in sorted(tree)] + list(self.faces)
        return Pi1Data(GroupPresentation(len(self.edges), rels), base, path)

    def __repr__(self):
        tag = "%s: " % self.name if self.name else ""
        return "CellComplex(%s%d vertices, %d edges, %d faces)" % (
            tag, self.n_vertices, len(self.edges), len(self.faces))


def cell_complex(X):
    """``X`` as a cell complex: edge ``a -> b`` for ``a < b``, triangle ``abc`` as ``ab.bc.(ac)^-1``."""
    idx = X.edge_index
    faces = [(idx[(a, b)] + 1, idx[(b, c)] + 1, -(idx[(a, c)] + 1)) for a, b, c in X.triangles]
    return CellComplex(X.n_vertices, X.edges, faces, edge_labels=X.edges, name=X.name)


class CellMap:
    """A cellular map: vertices to vertices, each edge to an edge path between the images."""

    def __init__(self, source, target, vertex_map, edge_map):
        self.source = source
        self.target = target
        self.vertex_map = tuple(int(v) for v in vertex_map)
        self.edge_map = tuple(free_reduce(w) for w in edge_map)
        for k, (a, b) in enumerate(source.edges):
            w = self.edge_map[k]
            fa, fb = self.vertex_map[a], self.vertex_map[b]
            if not w:
                if fa != fb:
                    raise ValueError("edge %d collapsed between distinct vertices" % k)
                continue
            if target.endpoint(w[0])[0] != fa or not _path_ends(target, w, fb):
                raise ValueError("image of edge %d is not a path between the images" % k)

    def image_word(self, word):
        out = []
        for x in word:
            w = self.edge_map[abs(x) - 1]
            out.extend(w if x > 0 else invert_word(w))
        return free_reduce(out)

    def induced(self, base=0, source_pi1=None, target_pi1=None):
        """Induced map on pi_1 at ``base`` and its image."""
        S = source_pi1 or self.source.pi1(base)
        T = target_pi1 or self.target.pi1(self.vertex_map[base])
        images = []
        for k, (a, b) in enumerate(self.source.edges):
            loop = S.tree_paths[a] + (k + 1,) + invert_word(S.tree_paths[b])
            images.append(self.image_word(loop))
        return PresentationMap(S.presentation, T.presentation, images)


def _path_ends(C, word, end):
    cur = C.endpoint(word[0])[0]
    for x in word:
        a, b = C.endpoint(x)
        if a != cur:
            return False
        cur = b
    return cur == end


def simplicial_cell_map(X, Y, vertex_map):
    """Cell map between ``cell_complex(X)`` and ``cell_complex(Y)`` induced by a simplicial map."""
    CX, CY = cell_complex(X), cell_complex(Y)
    em = []
    for a, b in X.edges:
        fa, fb = vertex_map[a], vertex_map[b]
        if fa == fb:
            em.append(())
        elif fa < fb:
            em.append((Y.edge_index[(fa, fb)] + 1,))
        else:
            em.append((-(Y.edge_index[(fb, fa)] + 1),))
    return CellMap(CX, CY, vertex_map, em)


def pi1_presentation(X, x0=0):
    """Edge-path presentation: two generators per edge (one per orientation).

    Relators kill spanning-tree edges, identify each reversed edge with the
    inverse, and impose one relation per triangle.
    """
    if not X.is_connected():
        raise ValueError("complex is not connected")
    if not 0 <= x0 < X.n_vertices:
        raise KeyError("unknown vertex %r" % (x0,))
    _, tree = cell_complex(X).spanning_paths(x0)
    idx = X.edge_index

    def fwd(a, b):
        k = idx[(min(a, b), max(a, b))]
        return 2 * k + 1 if a < b else 2 * k + 2

    rels = []
    for k in range(len(X.edges)):
        rels.append((2 * k + 1, 2 * k + 2))
        if k + 1 in tree:
            rels.append((2 * k + 1,))
    for a, b, c in X.triangles:
        rels.append((fwd(a, b), fwd(b, c), fwd(c, a)))
    return GroupPresentation(2 * len(X.edges), rels)
