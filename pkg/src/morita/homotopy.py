"""pi_0 and pi_1 of finite groupoids and of translation groupoids over complexes.

The translation groupoid of a group acting on a complex ``X`` is modelled by
the Borel construction ``(X x EG)/G``.  We use ``EG`` = nerve of the pair
groupoid of ``G`` and the product CW structure, which after dividing by the
free action has

* the vertices of ``X``;
* an edge ``A_ab: a -> b`` for every edge ``a < b`` of ``X``;
* an edge ``b_{v,g}: v -> g^-1 v`` for every vertex ``v`` and ``g != e``;
* faces: triangles of ``X``, squares ``A_ab b_{b,g} (A_{g^-1 a, g^-1 b})^-1 b_{a,g}^-1``
  and nerve triangles ``b_{v,g} b_{g^-1 v, h} b_{v,gh}^-1`` (``b_{v,e}`` is constant).

Its 2-skeleton has the fundamental group of the translation groupoid.
"""

from __future__ import annotations

import json
from collections import namedtuple

from .fpgroup import (PresentationMap, abelianization, check_exact_abelian,
                      evaluate, group_presentation, hom_count, hom_signature_partial,
                      invert_word, is_injective_abelian, is_surjective_abelian,
                      probably_isomorphic, reidemeister_schreier, simplify, GuardExceeded)
from .groupoid import GroupoidFunctor, full_subgroupoid, isotropy, orbits, translation_groupoid
from .groups import default_targets
from .simplicial import (CellComplex, CellMap, ComplexAction, cell_complex, pi1_presentation,
                         point_complex)

PASSING = ("exact", "exact-abelian-only")
VERDICTS = ("exact", "exact-abelian-only", "obstruction-found", "not-checked")


# -- finite groupoids ------------------------------------------------------------------

PointedSet = namedtuple("PointedSet", "classes base")


def pi0(G, a0=0):
    """Orbit classes with the class of ``a0`` marked by its index."""
    cls = orbits(G)
    base = next(i for i, c in enumerate(cls) if a0 in c)
    return PointedSet(cls, base)


def pi1_finite(G, a0=0):
    """For a finite discrete groupoid pi_1 at ``a0`` is the isotropy group."""
    return isotropy(G, a0)


def nerve_complex(G):
    """2-skeleton of the nerve: edges are non-unit arrows, faces composable non-unit pairs.

    The pair ``(g, h)`` with ``src(g) == tgt(h)`` bounds the face ``h . g . (gh)^-1``.
    """
    non_unit = [a for a in G.arrows() if not G.is_unit(a)]
    letter = {a: k + 1 for k, a in enumerate(non_unit)}

    def w(a):
        return () if G.is_unit(a) else (letter[a],)

    faces = []
    for (g, h), gh in G.comp.items():
        if G.is_unit(g) or G.is_unit(h):
            continue
        faces.append(w(h) + w(g) + invert_word(w(gh)))
    edges = [(G.src[a], G.tgt[a]) for a in non_unit]
    return CellComplex(G.n_objects, edges, faces, edge_labels=non_unit)


def pi1_nerve(G, a0=0):
    """pi_1 of the 2-truncated nerve at ``a0`` (computed on the orbit of ``a0``)."""
    if not 0 <= a0 < G.n_objects:
        raise KeyError("unknown object %r" % (a0,))
    orb = next(c for c in orbits(G) if a0 in c)
    sub = full_subgroupoid(G, orb)
    return nerve_complex(sub).pi1(orb.index(a0)).presentation


# -- Borel construction ----------------------------------------------------------------

class BorelModel:
    """The CW Borel construction of a complex action, with its pi_1 and structure maps."""

    def __init__(self, action, base=0):
        self.action = action
        self.base = base
        G, X = action.group, action.complex
        if not X.is_connected():
            raise ValueError("Borel model needs a connected complex")
        if not 0 <= base < X.n_vertices:
            raise KeyError("unknown vertex %r" % (base,))
        self.non_identity = [g for g in G.elements() if g != G.identity]
        self.complex, self.b_letter = _borel_cells(action, self.non_identity)
        n_a = len(X.edges)
        self.labels = [G.identity] * n_a + [g for _ in X.vertices() for g in self.non_identity]
        self.pi1_data = self.complex.pi1(base)
        self.presentation = self.pi1_data.presentation
        self.bg_complex, bg_letter = _borel_cells(ComplexAction.trivial(G, point_complex()),
                                                  self.non_identity)
        self.bg_presentation = self.bg_complex.pi1(0).presentation
        edge_map = [()] * n_a + [(bg_letter[(0, g)],) for _ in X.vertices() for g in self.non_identity]
        proj = CellMap(self.complex, self.bg_complex, [0] * X.n_vertices, edge_map)
        self.proj_map = proj.induced(base, self.pi1_data, self.bg_complex.pi1(0))
        self.fiber_map = _fiber_map(X, base, self.presentation)

    def bg_images(self):
        """Images in ``G`` of the generators of ``bg_presentation``."""
        return list(self.non_identity)

    def to_group(self, word):
        """Evaluate a word of the Borel presentation in ``G`` through the edge labels."""
        G = self.action.group
        return evaluate(self.proj_map.apply(word), G, self.non_identity)

    def __repr__(self):
        return "BorelModel(%r, base=%d)" % (self.complex, self.base)


def _borel_cells(A, non_identity):
    G, X = A.group, A.complex
    e = G.identity
    edges = list(X.edges)
    b_letter = {}
    for v in X.vertices():
        for g in non_identity:
            b_letter[(v, g)] = len(edges) + 1
            edges.append((v, A.act(G.inv(g), v)))

    def aw(a, b):
        k = X.edge_index[(min(a, b), max(a, b))] + 1
        return (k,) if a < b else (-k,)

    def bw(v, g):
        return () if g == e else (b_letter[(v, g)],)

    faces = []
    for a, b, c in X.triangles:
        faces.append(aw(a, b) + aw(b, c) + aw(c, a))
    for a, b in X.edges:
        for g in non_identity:
            gi = G.inv(g)
            faces.append(aw(a, b) + bw(b, g) + aw(A.act(gi, b), A.act(gi, a)) + invert_word(bw(a, g)))
    for v in X.vertices():
        for g in non_identity:
            for h in non_identity:
                faces.append(bw(v, g) + bw(A.act(G.inv(g), v), h) + invert_word(bw(v, G.mul(g, h))))
    return CellComplex(X.n_vertices, edges, faces, name="Borel"), b_letter


def _fiber_map(X, base, target):
    """From the two-generators-per-edge presentation of ``X`` into the Borel presentation."""
    source = pi1_presentation(X, base)
    paths, _ = cell_complex(X).spanning_paths(base)
    images = []
    for k, (a, b) in enumerate(X.edges):
        w = paths[a] + (k + 1,) + invert_word(paths[b])
        images.append(w)
        images.append(invert_word(w))
    return PresentationMap(source, target, images)


def borel_pi1(A, base=0):
    """Presentation of pi_1 of the translation groupoid, with its fiber and projection maps."""
    B = BorelModel(A, base)
    return B.presentation, B.fiber_map, B.proj_map


def borel_simplicial(A, max_simplices=200000):
    """Simplicial cross-check model: ``(sd(X) x EG)/G`` as a simplicial complex.

    ``sd(X)`` is ordered by simplex dimension and ``EG`` by join layer, so the
    staircase triangulation is invariant under the diagonal action.
    """
    from .simplicial import eg_skeleton, product_2skeleton, quotient_by_free_action
    G = A.group
    S = A.subdivide()
    E = eg_skeleton(G)
    dims = [len(s) for s in S.complex.labels]
    layer = [lab[1] for lab in E.complex.labels]
    est = S.complex.n_simplices() * E.complex.n_simplices()
    if est > max_simplices:
        raise GuardExceeded("product too large (%d cell pairs)" % est)
    P = product_2skeleton(S.complex, E.complex, key_x=dims.__getitem__, key_y=layer.__getitem__)
    ny = E.complex.n_vertices
    table = [[S.act(g, v // ny) * ny + E.act(g, v % ny) for v in P.vertices()] for g in G.elements()]
    return quotient_by_free_action(ComplexAction(G, P, table))


# -- Eff -------------------------------------------------------------------------------

EffResult = namedtuple("EffResult", "kernel kernel_elements quotient class_map action arrow_map")


class NonUniformIneffectivity(ValueError):
    pass


def ineffective_kernels(A):
    """For each vertex, the elements fixing its closed star pointwise."""
    X, G = A.complex, A.group
    out = []
    for v in X.vertices():
        star = X.closed_star(v)
        out.append([g for g in G.elements() if all(A.act(g, w) == w for w in star)])
    return out


def eff_translation(A):
    """Quotient by the ineffective kernel, when that kernel is the same at every vertex."""
    G = A.group
    kv = ineffective_kernels(A)
    K = sorted(set.intersection(*[set(k) for k in kv])) if kv else list(G.elements())
    for v, k in enumerate(kv):
        if sorted(k) != K:
            raise NonUniformIneffectivity(
                "non-uniform ineffectivity: kernel at vertex %d has order %d, common kernel %d"
                % (v, len(k), len(K)))
    Q, cls = G.quotient(K)
    table = [A.table[Q.labels[q]] for q in Q.elements()]
    QA = ComplexAction(Q, A.complex, table)
    T1 = translation_groupoid(A.set_action())
    T2 = translation_groupoid(QA.set_action())
    pos2 = {lab: i for i, lab in enumerate(T2.arr_labels)}
    arr_map = [pos2[(cls[g], x)] for g, x in T1.arr_labels]
    F = GroupoidFunctor(T1, T2, range(T1.n_objects), arr_map)
    return EffResult(G.subgroup(K), K, Q, cls, QA, F)


# -- reports ---------------------------------------------------------------------------

class Check:
    def __init__(self, name, verdict, detail="", witness=None):
        if verdict not in VERDICTS:
            raise ValueError("unknown verdict %r" % (verdict,))
        self.name = name
        self.verdict = verdict
        self.detail = detail
        self.witness = witness

    def as_dict(self):
        return {"name": self.name, "verdict": self.verdict, "detail": self.detail,
                "witness": _jsonable(self.witness)}


class Report:
    """A ``report.v1`` document: a list of checks and some computed data."""

    def __init__(self, title, checks=(), data=None):
        self.title = title
        self.checks = list(checks)
        self.data = dict(data or {})

    def add(self, *args, **kw):
        self.checks.append(Check(*args, **kw))

    @property
    def status(self):
        vs = [c.verdict for c in self.checks]
        if "obstruction-found" in vs:
            return "fail"
        if "not-checked" in vs or not vs:
            return "not-checked"
        return "pass"

    @property
    def passed(self):
        return self.status == "pass"

    def verdict(self, name):
        return next(c.verdict for c in self.checks if c.name == name)

    def as_dict(self):
        return {"schema": "report.v1", "title": self.title, "status": self.status,
                "checks": [c.as_dict() for c in self.checks], "data": _jsonable(self.data)}

    def to_json(self, **kw):
        return json.dumps(self.as_dict(), **kw)

    def format_text(self):
        lines = ["%s: %s" % (self.title, self.status)]
        for c in self.checks:
            lines.append("  %-28s %s%s" % (c.name, c.verdict, "  (%s)" % c.detail if c.detail else ""))
        for k, v in self.data.items():
            lines.append("  %s = %s" % (k, v))
        return "\n".join(lines)

    def __repr__(self):
        return "Report(%r, %s)" % (self.title, self.status)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


# -- sequence checks -------------------------------------------------------------------

def _simplified(f, g):
    """Replace the three presentations of ``A -f-> B -g-> C`` by simplified ones.

    Also returns the map from the simplified ``C`` back to the original one.
    """
    sa, sb, sc = simplify(f.source), simplify(f.target), simplify(g.target)
    f2 = sa.backward.then(f).then(sb.forward)
    g2 = sb.backward.then(g).then(sc.forward)
    return f2, g2, sc.backward


def _middle_hom_check(f, g, targets):
    """#{rho: B -> T with rho f = 1} must equal #Hom(C, T) when the sequence is exact and g onto."""
    quot = f.target.with_relators(f.images)
    mism = []
    for T in targets:
        try:
            a, b = hom_count(quot, T), hom_count(g.target, T)
        except GuardExceeded:
            continue
        if a != b:
            mism.append((T.name, a, b))
    return mism


def _signature_text(sig, targets):
    return ", ".join("%s:%s" % (T.name, "?" if v is None else v) for T, v in zip(targets, sig))


def check_example4_sequence(A, base=0, targets=None):
    """Verify ``0 -> pi1(X) -> pi1(X x| G) -> G -> 0`` for a group acting on a complex."""
    targets = targets or default_targets()
    G = A.group
    B = BorelModel(A, base)
    rep = Report("fiber sequence")
    f, g, back = _simplified(B.fiber_map, B.proj_map)
    Ap, Bp = f.source, f.target
    # images in G of the generators of the simplified presentation of BG
    bg = [evaluate(w, G, B.non_identity) for w in back.images]
    rep.data["pi1(X)"] = str(abelianization(Ap))
    rep.data["pi1"] = str(abelianization(Bp))
    rep.data["G"] = G.name or "order %d" % G.order
    rep.data["hom-signature"] = _signature_text(hom_signature_partial(Bp, targets), targets)

    # composite: exact, by evaluating in G
    bad = [i for i, w in enumerate(f.images) if evaluate(g.apply(w), G, bg) != G.identity]
    rep.add("composite", "exact" if not bad else "obstruction-found",
            "pi1(X) maps to the identity of G", bad or None)

    # middle
    ex = check_exact_abelian(f, g)
    mism = _middle_hom_check(f, g, targets)
    if ex.exact and not mism:
        rep.add("middle", "exact-abelian-only", "abelian lattices agree; hom counts of the cokernel match G")
    else:
        rep.add("middle", "obstruction-found", "abelian exact=%s" % ex.exact, ex.witness or mism)

    # surjectivity onto G
    ab_onto = is_surjective_abelian(g)
    imgs = [evaluate(w, G, bg) for w in g.images]
    onto = len(G.closure(imgs)) == G.order
    if onto and ab_onto:
        rep.add("surjectivity", "exact", "images generate G")
    else:
        rep.add("surjectivity", "obstruction-found", "images generate a proper subgroup",
                sorted(G.closure(imgs)))

    # injectivity: pi1(X) -> kernel of pi1 -> G
    sig_ok = rep_add_injectivity(rep, f, g, G, bg, targets)
    rep.data["hom-check"] = "pass" if sig_ok and not mism else "fail"
    return rep


def rep_add_injectivity(rep, f, g, G, bg_images, targets):
    """Compare ``pi1(X)`` with the Reidemeister-Schreier kernel of ``B -> G``."""
    Bp = f.target
    gen_imgs = [evaluate(w, G, bg_images) for w in g.images]
    rs = reidemeister_schreier(Bp, G, gen_imgs)
    ks = simplify(rs.presentation)
    into_k = PresentationMap(f.source, ks.presentation,
                             [ks.forward.apply(rs.rewrite(w)) for w in f.images])
    iso_ab = is_injective_abelian(into_k) and is_surjective_abelian(into_k)
    sa = hom_signature_partial(f.source, targets)
    sk = hom_signature_partial(ks.presentation, targets)
    sig_ok = all(a is None or b is None or a == b for a, b in zip(sa, sk))
    info = "into B_ab injective: %s" % is_injective_abelian(f)
    if iso_ab and sig_ok:
        rep.add("injectivity", "exact-abelian-only",
                "pi1(X) -> ker(pi1 -> G) is an isomorphism on abelianizations; signatures agree; " + info)
    else:
        rep.add("injectivity", "obstruction-found", info,
                {"kernel": str(abelianization(ks.presentation)), "signatures": [sa, sk]})
    return sig_ok


def _is_cone(X):
    for a in X.vertices():
        others = [v for v in X.vertices() if v != a]
        if set(X.neighbors(a)) != set(others):
            continue
        tris = set(X.triangles)
        if all(a in t for t in tris) and all(tuple(sorted((u, v, a))) in tris
                                             for u, v in X.edges if a not in (u, v)):
            return True
    return False


def check_eff_sequence(A, base=0, targets=None):
    """Verify ``0 -> K -> pi1(G x| X) -> pi1((G/K) x| X) -> 0``."""
    targets = targets or default_targets()
    rep = Report("eff sequence")
    X = A.complex
    eff = eff_translation(A)
    rep.data["K"] = "order %d" % len(eff.kernel_elements)
    if X.triangles and not _is_cone(X):
        rep.add("pi2 vanishing", "not-checked", "complex is neither a graph nor a cone")
        return rep
    G, Q, cls = A.group, eff.quotient, eff.class_map
    B1 = BorelModel(A, base)
    B2 = BorelModel(eff.action, base)
    n_a = len(X.edges)
    edge_map = [(k + 1,) for k in range(n_a)]
    for v in X.vertices():
        for g in B1.non_identity:
            q = cls[g]
            edge_map.append(() if q == Q.identity else (B2.b_letter[(v, q)],))
    cm = CellMap(B1.complex, B2.complex, list(X.vertices()), edge_map)
    qmap = cm.induced(base, B1.pi1_data, B2.pi1_data)
    Kp, kgens = group_presentation(eff.kernel)
    kelem = [eff.kernel.labels[k] for k in kgens]
    imap = PresentationMap(Kp, B1.presentation,
                           [(B1.b_letter[(base, k)],) if k != G.identity else () for k in kelem])
    rep.data["pi1"] = str(abelianization(B1.presentation))
    rep.data["pi1(Eff)"] = str(abelianization(B2.presentation))

    # K -> pi1 injective: the composite K -> pi1 -> G is the inclusion
    back = [B1.to_group(w) for w in imap.images]
    rep.add("injectivity", "exact" if back == kelem else "obstruction-found",
            "K -> pi1 -> G is the inclusion of K")
    comp = [qmap.apply(w) for w in imap.images]
    rep.add("composite", "exact" if all(not w for w in comp) else "obstruction-found",
            "K maps to freely trivial words")

    f, g, _ = _simplified(imap, qmap)
    ex = check_exact_abelian(f, g)
    mism = _middle_hom_check(f, g, targets)
    if ex.exact and not mism:
        rep.add("middle", "exact-abelian-only", "abelian lattices agree; hom counts match")
    else:
        rep.add("middle", "obstruction-found", "abelian exact=%s" % ex.exact, ex.witness or mism)

    # surjectivity: every edge of the target model is hit by an edge with the same ends
    hit = set(abs(x) for w in edge_map for x in w)
    lifted = all(k + 1 in hit for k in range(len(B2.complex.edges)))
    counts_ok = True
    for T in targets:
        try:
            if hom_count(g.target, T) > hom_count(g.source, T):
                counts_ok = False
        except GuardExceeded:
            pass
    if lifted and counts_ok and is_surjective_abelian(g):
        rep.add("surjectivity", "exact", "every edge of the quotient model lifts with its endpoints")
    else:
        rep.add("surjectivity", "obstruction-found", "edge lift=%s, hom counts=%s" % (lifted, counts_ok))

    if len(eff.kernel_elements) == 1:
        iso = lifted and sorted(edge_map) == sorted((k + 1,) for k in range(len(B2.complex.edges)))
        rep.add("isomorphism", "exact" if iso else "obstruction-found",
                "effective action: the Borel models are isomorphic cell complexes")
    rep.data["hom-check"] = "pass" if counts_ok and not mism else "fail"
    sig = hom_signature_partial(B2.presentation, targets)
    rep.data["hom-signature(Eff)"] = _signature_text(sig, targets)
    return rep


def borel_group_verdict(A, base=0):
    """probably_isomorphic verdict between pi1 of the translation groupoid and ``G``."""
    P = simplify(BorelModel(A, base).presentation).presentation
    return probably_isomorphic(P, A.group)
