"""JSON file formats.

Every document carries a ``schema`` tag (``groupoid.v1``, ``functor.v1``,
``bibundle.v1``, ``complex.v1``, ``action.v1``, ``presentation.v1``,
``presentation-map.v1``, ``cocycle.v1``; reports use ``report.v1``).  A
reference to another document may be inlined or given as a path relative to
the referring file.
"""

from __future__ import annotations

import json
import os
import re

from .bibundle import Bibundle
from .cocycle import Cocycle, GridCover
from .fpgroup import GroupPresentation, PresentationMap
from .groupoid import FiniteGroupoid, GroupoidFunctor, group_as_groupoid, validate_groupoid
from .groups import FiniteGroup
from .simplicial import ComplexAction, SimplicialComplex


class SchemaError(ValueError):
    """Malformed input; ``where`` is a line:column or a JSON path."""

    def __init__(self, where, message, path=None):
        self.where = where
        self.path = path
        self.message = message
        loc = "%s:%s" % (path, where) if path else str(where)
        super().__init__("%s: %s" % (loc, message))


def _need(d, key, where):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError(where, "missing key %r" % key)
    return d[key]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(where, "expected an integer, got %r" % (x,))
    return x


def _pairs(seq, where, width):
    if not isinstance(seq, list):
        raise SchemaError(where, "expected a list")
    out = []
    for i, row in enumerate(seq):
        w = "%s[%d]" % (where, i)
        if not isinstance(row, list) or len(row) != width:
            raise SchemaError(w, "expected a list of %d entries" % width)
        out.append(row)
    return out


def _read_text(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError("0:0", "cannot read file: %s" % exc.strerror, path) from None
    try:
        return text, json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("%d:%d" % (exc.lineno, exc.colno), exc.msg, path) from None


def read_json(path):
    return _read_text(path)[1]


_DECODER = json.JSONDecoder()
_PATH_TOKEN = re.compile(r"([^.\[\]]+)|\[(\d+)\]")


def _skip_ws(text, i):
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def locate(text, where):
    """Line and column of the value at a JSON path like ``arrows[3].src`` (best effort).

    Walks the text with ``raw_decode`` so no positions need to be stored while
    parsing.  Returns ``None`` when the path cannot be followed.
    """
    i = _skip_ws(text, 0)
    try:
        for key, idx in _PATH_TOKEN.findall(where if where != "$" else ""):
            if idx:
                if text[i] != "[":
                    return None
                i = _skip_ws(text, i + 1)
                for _ in range(int(idx)):
                    _, i = _DECODER.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    if text[i] != ",":
                        return None
                    i = _skip_ws(text, i + 1)
            else:
                if text[i] != "{":
                    return None
                i = _skip_ws(text, i + 1)
                while True:
                    k, i = _DECODER.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    i = _skip_ws(text, i + 1)  # the colon
                    if k == key:
                        break
                    _, i = _DECODER.raw_decode(text, i)
                    i = _skip_ws(text, i)
                    if text[i] != ",":
                        return None
                    i = _skip_ws(text, i + 1)
    except (ValueError, IndexError):
        return None
    line = text.count("\n", 0, i) + 1
    col = i - (text.rfind("\n", 0, i) + 1) + 1
    return line, col


def _anchor(exc, path, text):
    """Re-raise a structural error with the file path and a line:column where possible."""
    where = exc.where
    pos = locate(text, where) if text is not None else None
    if pos is not None:
        where = "%d:%d (%s)" % (pos[0], pos[1], exc.where)
    return SchemaError(where, exc.message, path)


def write_json(doc, path):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _resolve(ref, base_dir, loader):
    if isinstance(ref, str):
        p = ref if os.path.isabs(ref) else os.path.join(base_dir or ".", ref)
        text, doc = _read_text(p)
        try:
            return loader(doc, os.path.dirname(p))
        except SchemaError as exc:
            if exc.path is None:
                raise _anchor(exc, p, text) from None
            raise
    return loader(ref, base_dir)


# -- groupoids and groups ----------------------------------------------------------

def groupoid_to_json(G):
    return {
        "schema": "groupoid.v1",
        "name": G.name,
        "objects": list(G.objects()),
        "arrows": [{"id": g, "src": G.src[g], "tgt": G.tgt[g]} for g in G.arrows()],
        "comp": [[g, h, gh] for (g, h), gh in sorted(G.comp.items())],
        "inv": [[g, G.inv[g]] for g in G.arrows()],
        "unit": [[x, G.unit[x]] for x in G.objects()],
    }


def groupoid_from_json(d, base_dir=None):
    objs = _need(d, "objects", "objects")
    arrows = _need(d, "arrows", "arrows")
    if not isinstance(objs, list) or not isinstance(arrows, list):
        raise SchemaError("objects", "objects and arrows must be lists")
    oid = {}
    for i, o in enumerate(objs):
        o = _int(o, "objects[%d]" % i)
        if o in oid:
            raise SchemaError("objects[%d]" % i, "duplicate object id %d" % o)
        oid[o] = len(oid)
    aid, src, tgt = {}, [], []
    for i, a in enumerate(arrows):
        w = "arrows[%d]" % i
        a_id = _int(_need(a, "id", w), w + ".id")
        if a_id in aid:
            raise SchemaError(w, "duplicate arrow id %d" % a_id)
        s, t = _int(_need(a, "src", w), w + ".src"), _int(_need(a, "tgt", w), w + ".tgt")
        if s not in oid or t not in oid:
            raise SchemaError(w, "unknown object")
        aid[a_id] = len(aid)
        src.append(oid[s])
        tgt.append(oid[t])

    def arr(x, where):
        x = _int(x, where)
        if x not in aid:
            raise SchemaError(where, "unknown arrow %d" % x)
        return aid[x]

    comp = {}
    for i, (g, h, gh) in enumerate(_pairs(_need(d, "comp", "comp"), "comp", 3)):
        w = "comp[%d]" % i
        comp[(arr(g, w), arr(h, w))] = arr(gh, w)
    inv = [None] * len(aid)
    for i, (g, gi) in enumerate(_pairs(_need(d, "inv", "inv"), "inv", 2)):
        inv[arr(g, "inv[%d]" % i)] = arr(gi, "inv[%d]" % i)
    unit = [None] * len(oid)
    for i, (x, u) in enumerate(_pairs(_need(d, "unit", "unit"), "unit", 2)):
        x = _int(x, "unit[%d]" % i)
        if x not in oid:
            raise SchemaError("unit[%d]" % i, "unknown object %d" % x)
        unit[oid[x]] = arr(u, "unit[%d]" % i)
    if None in inv:
        raise SchemaError("inv", "inverse missing for arrow %r" % list(aid)[inv.index(None)])
    if None in unit:
        raise SchemaError("unit", "unit missing for object %r" % list(oid)[unit.index(None)])
    return FiniteGroupoid(len(oid), src, tgt, comp, inv, unit,
                          obj_labels=list(oid), arr_labels=list(aid), name=d.get("name"))


def group_to_json(G):
    doc = groupoid_to_json(group_as_groupoid(G))
    doc["name"] = G.name
    return doc


def group_from_json(d, base_dir=None):
    """A group stored as a one-object groupoid."""
    Gd = groupoid_from_json(d, base_dir)
    if Gd.n_objects != 1:
        raise SchemaError("objects", "a group must be a one-object groupoid")
    rep = validate_groupoid(Gd)
    if not rep.ok:
        raise SchemaError("comp", "invalid group: %r" % (rep[0],))
    table = [[Gd.compose(a, b) for b in Gd.arrows()] for a in Gd.arrows()]
    return FiniteGroup(table, labels=Gd.arr_labels, name=d.get("name"))


def functor_to_json(F, source_ref=None, target_ref=None):
    return {
        "schema": "functor.v1",
        "source": source_ref if source_ref is not None else groupoid_to_json(F.source),
        "target": target_ref if target_ref is not None else groupoid_to_json(F.target),
        "objMap": [[x, y] for x, y in enumerate(F.obj_map)],
        "arrMap": [[g, h] for g, h in enumerate(F.arr_map)],
    }


def _dense(G, kind):
    labels = G.obj_labels if kind == "obj" else G.arr_labels
    n = G.n_objects if kind == "obj" else G.n_arrows
    if labels is None or not all(isinstance(x, int) for x in labels):
        return {i: i for i in range(n)}
    return {lab: i for i, lab in enumerate(labels)}


def functor_from_json(d, base_dir=None):
    S = _resolve(_need(d, "source", "source"), base_dir, groupoid_from_json)
    T = _resolve(_need(d, "target", "target"), base_dir, groupoid_from_json)
    so, sa, to, ta = _dense(S, "obj"), _dense(S, "arr"), _dense(T, "obj"), _dense(T, "arr")
    om = [None] * S.n_objects
    for i, (x, y) in enumerate(_pairs(_need(d, "objMap", "objMap"), "objMap", 2)):
        if x not in so or y not in to:
            raise SchemaError("objMap[%d]" % i, "unknown object")
        om[so[x]] = to[y]
    am = [None] * S.n_arrows
    for i, (g, h) in enumerate(_pairs(_need(d, "arrMap", "arrMap"), "arrMap", 2)):
        if g not in sa or h not in ta:
            raise SchemaError("arrMap[%d]" % i, "unknown arrow")
        am[sa[g]] = ta[h]
    if None in om or None in am:
        raise SchemaError("objMap", "functor map is not total")
    F = GroupoidFunctor(S, T, om, am)
    rep = F.validate()
    if not rep.ok:
        raise SchemaError("arrMap", "not a functor: %r" % (rep[0],))
    return F


# -- bibundles -------------------------------------------------------------------------

def bibundle_to_json(P, left_ref=None, right_ref=None):
    return {
        "schema": "bibundle.v1",
        "left": left_ref if left_ref is not None else groupoid_to_json(P.left),
        "right": right_ref if right_ref is not None else groupoid_to_json(P.right),
        "total": list(range(P.n_total)),
        "pi": [[p, x] for p, x in enumerate(P.pi)],
        "eps": [[p, a] for p, a in enumerate(P.eps)],
        "leftAct": [[h, p, q] for (h, p), q in sorted(P.left_act.items())],
        "rightAct": [[p, g, q] for (p, g), q in sorted(P.right_act.items())],
    }


def bibundle_from_json(d, base_dir=None):
    H = _resolve(_need(d, "left", "left"), base_dir, groupoid_from_json)
    G = _resolve(_need(d, "right", "right"), base_dir, groupoid_from_json)
    total = _need(d, "total", "total")
    pid = {_int(p, "total[%d]" % i): i for i, p in enumerate(total)}
    ho, ha, go, ga = _dense(H, "obj"), _dense(H, "arr"), _dense(G, "obj"), _dense(G, "arr")

    def look(table, x, where):
        if x not in table:
            raise SchemaError(where, "unknown id %r" % (x,))
        return table[x]

    pi = [None] * len(pid)
    for i, (p, x) in enumerate(_pairs(_need(d, "pi", "pi"), "pi", 2)):
        pi[look(pid, p, "pi[%d]" % i)] = look(ho, x, "pi[%d]" % i)
    eps = [None] * len(pid)
    for i, (p, a) in enumerate(_pairs(_need(d, "eps", "eps"), "eps", 2)):
        eps[look(pid, p, "eps[%d]" % i)] = look(go, a, "eps[%d]" % i)
    if None in pi or None in eps:
        raise SchemaError("pi", "anchor maps are not total")
    left = {}
    for i, (h, p, q) in enumerate(_pairs(_need(d, "leftAct", "leftAct"), "leftAct", 3)):
        w = "leftAct[%d]" % i
        left[(look(ha, h, w), look(pid, p, w))] = look(pid, q, w)
    right = {}
    for i, (p, g, q) in enumerate(_pairs(_need(d, "rightAct", "rightAct"), "rightAct", 3)):
        w = "rightAct[%d]" % i
        right[(look(pid, p, w), look(ga, g, w))] = look(pid, q, w)
    return Bibundle(H, G, len(pid), pi, eps, left, right)


# -- complexes and actions -------------------------------------------------------------

def complex_to_json(X):
    return {"schema": "complex.v1", "name": X.name, "vertices": list(X.vertices()),
            "edges": [list(e) for e in X.edges], "triangles": [list(t) for t in X.triangles]}


def complex_from_json(d, base_dir=None):
    verts = _need(d, "vertices", "vertices")
    vid = {}
    for i, v in enumerate(verts):
        v = _int(v, "vertices[%d]" % i)
        if v in vid:
            raise SchemaError("vertices[%d]" % i, "duplicate vertex")
        vid[v] = len(vid)

    def rows(key, width):
        out = []
        for i, row in enumerate(_pairs(d.get(key, []), key, width)):
            w = "%s[%d]" % (key, i)
            r = []
            for x in row:
                if x not in vid:
                    raise SchemaError(w, "unknown vertex %r" % (x,))
                r.append(vid[x])
            if len(set(r)) != width:
                raise SchemaError(w, "degenerate simplex")
            out.append(r)
        return out

    return SimplicialComplex(len(vid), rows("edges", 2), rows("triangles", 3), labels=list(vid),
                             name=d.get("name"))


def action_to_json(A, group_ref=None, complex_ref=None):
    return {
        "schema": "action.v1",
        "group": group_ref if group_ref is not None else group_to_json(A.group),
        "complex": complex_ref if complex_ref is not None else complex_to_json(A.complex),
        "vertexAction": [[g, v, A.act(g, v)] for g in A.group.elements() for v in A.complex.vertices()],
    }


def action_from_json(d, base_dir=None):
    G = _resolve(_need(d, "group", "group"), base_dir, group_from_json)
    X = _resolve(_need(d, "complex", "complex"), base_dir, complex_from_json)
    gid = {lab: i for i, lab in enumerate(G.labels)} if G.labels else {i: i for i in G.elements()}
    vid = {lab: i for i, lab in enumerate(X.labels)} if X.labels else {i: i for i in X.vertices()}
    table = [[None] * X.n_vertices for _ in G.elements()]
    for i, (g, v, w) in enumerate(_pairs(_need(d, "vertexAction", "vertexAction"), "vertexAction", 3)):
        where = "vertexAction[%d]" % i
        if g not in gid or v not in vid or w not in vid:
            raise SchemaError(where, "unknown group element or vertex")
        table[gid[g]][vid[v]] = vid[w]
    if any(None in row for row in table):
        raise SchemaError("vertexAction", "action table is not total")
    try:
        return ComplexAction(G, X, table)
    except ValueError as exc:
        raise SchemaError("vertexAction", str(exc)) from None


# -- presentations ---------------------------------------------------------------------

def presentation_to_json(P):
    return {"schema": "presentation.v1", "generators": P.n_generators,
            "relators": [list(r) for r in P.relators]}


def presentation_from_json(d, base_dir=None):
    n = _int(_need(d, "generators", "generators"), "generators")
    rels = _need(d, "relators", "relators")
    if not isinstance(rels, list):
        raise SchemaError("relators", "expected a list")
    for i, r in enumerate(rels):
        if not isinstance(r, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in r):
            raise SchemaError("relators[%d]" % i, "relator must be a list of integers")
    try:
        return GroupPresentation(n, rels)
    except ValueError as exc:
        raise SchemaError("relators", str(exc)) from None


def presentation_map_to_json(f):
    return {"schema": "presentation-map.v1", "source": presentation_to_json(f.source),
            "target": presentation_to_json(f.target), "images": [list(w) for w in f.images]}


def presentation_map_from_json(d, base_dir=None):
    S = _resolve(_need(d, "source", "source"), base_dir, presentation_from_json)
    T = _resolve(_need(d, "target", "target"), base_dir, presentation_from_json)
    return PresentationMap(S, T, _need(d, "images", "images"))


# -- cocycles --------------------------------------------------------------------------

def cocycle_to_json(c, groupoid_ref=None):
    return {
        "schema": "cocycle.v1", "n": c.cover.n, "N": c.cover.N,
        "groupoid": groupoid_ref if groupoid_ref is not None else groupoid_to_json(c.groupoid),
        "f": [[list(mu), x] for mu, x in sorted(c.f.items())],
        "g": [[list(mu), list(nu), a] for (mu, nu), a in sorted(c.g.items())],
    }


def cocycle_from_json(d, base_dir=None, groupoid=None):
    n = _int(_need(d, "n", "n"), "n")
    N = _int(_need(d, "N", "N"), "N")
    try:
        cover = GridCover(n, N)
    except ValueError as exc:
        raise SchemaError("n", str(exc)) from None
    G = groupoid if groupoid is not None else _resolve(_need(d, "groupoid", "groupoid"),
                                                       base_dir, groupoid_from_json)
    go, ga = _dense(G, "obj"), _dense(G, "arr")
    f = {}
    for i, (mu, x) in enumerate(_pairs(_need(d, "f", "f"), "f", 2)):
        if x not in go:
            raise SchemaError("f[%d]" % i, "unknown object %r" % (x,))
        f[tuple(mu)] = go[x]
    g = {}
    for i, (mu, nu, a) in enumerate(_pairs(_need(d, "g", "g"), "g", 3)):
        if a not in ga:
            raise SchemaError("g[%d]" % i, "unknown arrow %r" % (a,))
        g[(tuple(mu), tuple(nu))] = ga[a]
    return Cocycle(cover, G, f, g)


LOADERS = {
    "groupoid.v1": groupoid_from_json,
    "functor.v1": functor_from_json,
    "bibundle.v1": bibundle_from_json,
    "complex.v1": complex_from_json,
    "action.v1": action_from_json,
    "presentation.v1": presentation_from_json,
    "presentation-map.v1": presentation_map_from_json,
    "cocycle.v1": cocycle_from_json,
}


def detect_schema(d):
    if not isinstance(d, dict):
        raise SchemaError("$", "top-level value must be an object")
    if "schema" in d:
        if d["schema"] not in LOADERS:
            raise SchemaError("schema", "unknown schema %r" % (d["schema"],))
        return d["schema"]
    keys = set(d)
    for schema, need in (("bibundle.v1", {"leftAct", "rightAct"}), ("functor.v1", {"objMap"}),
                         ("action.v1", {"vertexAction"}), ("cocycle.v1", {"f", "g", "N"}),
                         ("groupoid.v1", {"objects", "arrows"}), ("complex.v1", {"vertices"}),
                         ("presentation.v1", {"generators", "relators"})):
        if need <= keys:
            return schema
    raise SchemaError("$", "cannot determine the document type")


def load(path, expect=None):
    """Load any supported document; returns ``(schema, value)``."""
    text, doc = _read_text(path)
    try:
        schema = detect_schema(doc)
        if expect is not None and schema not in ((expect,) if isinstance(expect, str) else expect):
            raise SchemaError("schema", "expected %s, got %s" % (expect, schema))
        return schema, LOADERS[schema](doc, os.path.dirname(path))
    except SchemaError as exc:
        if exc.path is None:
            raise _anchor(exc, path, text) from None
        raise
