"""A runnable catalog of small reproducible instances.

Each entry builds its groupoids or actions, recomputes the invariants and
compares them with the frozen expected values.  Running an entry returns a
``CatalogResult``: a ``report.v1`` report plus a few human summary lines.
"""

from __future__ import annotations

from collections import namedtuple

from .bibundle import is_biprincipal, morita_equivalent
from .fpgroup import (abelianization, cyclic_presentation, hom_signature, probably_isomorphic,
                      simplify)
from .groupoid import (FiniteGroupoid, GroupoidFunctor, group_as_groupoid, inclusion_functor,
                       is_weak_equivalence, pair_groupoid, point_groupoid, transitive_groupoid, unit_groupoid)
from .groups import cyclic, find_isomorphism, symmetric
from .homotopy import (BorelModel, Report, check_eff_sequence, check_example4_sequence,
                       pi1_finite, pi1_nerve)
from .simplicial import ComplexAction, cycle_graph, path_graph, pi1_presentation, rp2_complex

CatalogResult = namedtuple("CatalogResult", "report summary")


class CatalogEntry:
    def __init__(self, name, description, reference, run, expected):
        self.name = name
        self.description = description
        self.reference = reference
        self._run = run
        self.expected = dict(expected)

    def run(self):
        rep = Report(self.name)
        summary = self._run(rep) or []
        for key, want in self.expected.items():
            got = rep.data.get(key)
            rep.add("expected " + key, "exact" if got == want else "obstruction-found",
                    "got %r, expected %r" % (got, want))
        return CatalogResult(rep, summary)

    def __repr__(self):
        return "CatalogEntry(%r)" % self.name


def _ok(flag):
    return "exact" if flag else "obstruction-found"


# -- actions used by several entries ---------------------------------------------------

def antipodal_c6():
    return ComplexAction.from_function(cyclic(2), cycle_graph(6), lambda g, v: (v + 3 * g) % 6)


def reflection_c6():
    return ComplexAction.from_function(cyclic(2), cycle_graph(6), lambda g, v: (-v) % 6 if g else v)


def mobius_action(n=8):
    """Z2 reflecting a path graph: the leaf space of the Mobius band's core foliation."""
    return ComplexAction.from_function(cyclic(2), path_graph(n), lambda g, v: n - 1 - v if g else v)


def z4_on_c6():
    """Z4 acting on C6 through Z4 -> Z2, the generator acting as the antipodal map."""
    return ComplexAction.from_function(cyclic(4), cycle_graph(6), lambda g, v: (v + 3 * (g % 2)) % 6)


# -- entries ---------------------------------------------------------------------------

def _run_pair(rep):
    pt = point_groupoid()
    sizes = []
    for k in range(1, 7):
        res = morita_equivalent(pair_groupoid(range(k)), pt)
        ok = res.equivalent and is_biprincipal(res.witness)
        triv = pi1_finite(pair_groupoid(range(k)), 0).order == 1
        rep.add("Pair(%d) ~ point" % k, _ok(ok and triv), "witness biprincipal, pi1 trivial")
        if ok and triv:
            sizes.append(k)
    rep.data["equivalent sizes"] = sizes
    return ["Pair(S) is Morita equivalent to the point for |S| = 1..6"]


def submersion_cech(fiber_sizes=(2, 3, 1)):
    """Cech groupoid ``Y x_B Y`` of a finite surjection ``Y -> B``."""
    proj = [b for b, k in enumerate(fiber_sizes) for _ in range(k)]
    Y = range(len(proj))
    arrows = [(a, b) for a in Y for b in Y if proj[a] == proj[b]]
    C = FiniteGroupoid.build(Y, arrows, src=lambda a: a[1], tgt=lambda a: a[0],
                             compose=lambda a, b: (a[0], b[1]), inverse=lambda a: (a[1], a[0]),
                             unit=lambda y: (y, y), name="Cech")
    return C, proj


def _run_submersion(rep):
    C, proj = submersion_cech()
    B = unit_groupoid(range(max(proj) + 1))
    phi = GroupoidFunctor(C, B, proj, [proj[a] for a, _ in C.arr_labels])
    we = is_weak_equivalence(phi).ok
    res = morita_equivalent(C, B)
    rep.add("projection is a weak equivalence", _ok(we))
    rep.add("Morita equivalent to the base", _ok(res.equivalent and is_biprincipal(res.witness)))
    rep.data["orbits"] = len(res.matching) if res.equivalent else None
    return ["Cech groupoid of a surjection onto %d points ~ unit groupoid" % B.n_objects]


def _group_runner(G):
    def run(rep):
        Gg = group_as_groupoid(G)
        iso = find_isomorphism(pi1_finite(Gg, 0), G)
        rep.add("isotropy", _ok(iso is not None), "pi1 of (G => *) via isotropy")
        v = probably_isomorphic(pi1_nerve(Gg, 0), G)
        rep.add("nerve", _ok(v.verdict == "yes-certified"), v.reason)
        rep.data["pi1_ab"] = str(abelianization(pi1_nerve(Gg, 0)))
        return ["pi1 = %s (%s)" % (G.name, v.verdict)]
    return run


def _sequence_runner(action, summary):
    def run(rep):
        seq = check_example4_sequence(action())
        rep.checks.extend(seq.checks)
        rep.data.update(seq.data)
        return [summary % seq.data]
    return run


def _run_fundamental_groupoid(rep):
    X = rp2_complex()
    P = pi1_presentation(X, 0)
    v = probably_isomorphic(simplify(P).presentation, cyclic(2))
    rep.add("pi1(RP2) = Z/2", _ok(v.verdict == "yes-certified"), v.reason)
    T = transitive_groupoid(X.n_vertices, cyclic(2))
    sub, inc = inclusion_functor(T, [0])
    rep.add("isotropy inclusion is a weak equivalence", _ok(is_weak_equivalence(inc).ok))
    res = morita_equivalent(T, group_as_groupoid(cyclic(2)))
    rep.add("Morita equivalent to Z2 => *", _ok(res.equivalent))
    rep.data["pi1_ab"] = str(abelianization(P))
    return ["Pi1(RP2) restricted to %d vertices ~ Z2 => *" % X.n_vertices]


def _run_mobius(rep):
    A = mobius_action()
    P = simplify(BorelModel(A).presentation).presentation
    ab = abelianization(P)
    sig = hom_signature(P)
    z2 = hom_signature(cyclic_presentation(2))
    v = probably_isomorphic(P, cyclic(2))
    rep.add("hom-signature equals Z2", _ok(sig == z2), str(sig))
    rep.add("isomorphism with Z2", _ok(v.verdict == "yes-certified"), v.reason)
    rep.data["pi1_ab"] = str(ab)
    rep.data["hom-signature"] = list(sig)
    return ["pi1 = %s" % (ab,)]


def _run_kronecker(rep):
    seq = check_example4_sequence(antipodal_c6())
    rep.checks.extend(seq.checks)
    rep.data.update(seq.data)
    return ["analog only: 0 -> Z -> pi1 -> Z/2 -> 0 with pi1 = %s" % seq.data["pi1"]]


def _run_eff(rep):
    seq = check_eff_sequence(z4_on_c6())
    rep.checks.extend(seq.checks)
    rep.data.update(seq.data)
    ab = "pass" if seq.passed else "fail"
    return ["exact-abelian-only: %s; hom-signature: %s" % (ab, seq.data.get("hom-check", "fail"))]


ENTRIES = [
    CatalogEntry("pair", "pair groupoids of 1..6 points against the point",
                 "pair groupoid collapse", _run_pair, {"equivalent sizes": [1, 2, 3, 4, 5, 6]}),
    CatalogEntry("submersion-cech", "Cech groupoid of a finite surjection against its base",
                 "Cech groupoid of a surjective submersion, finite model", _run_submersion,
                 {"orbits": 3}),
    CatalogEntry("group-z2", "delooping of Z2", "one-object groupoid of a group",
                 _group_runner(cyclic(2)), {"pi1_ab": "Z/2"}),
    CatalogEntry("group-z3", "delooping of Z3", "one-object groupoid of a group",
                 _group_runner(cyclic(3)), {"pi1_ab": "Z/3"}),
    CatalogEntry("group-s3", "delooping of S3", "one-object groupoid of a group",
                 _group_runner(symmetric(3)), {"pi1_ab": "Z/2"}),
    CatalogEntry("action-free", "Z2 acting antipodally on the 6-cycle",
                 "translation groupoid of a free action on a complex",
                 _sequence_runner(antipodal_c6, "pi1 = %(pi1)s, pi1(X) = %(pi1(X))s"),
                 {"pi1": "Z", "pi1(X)": "Z"}),
    CatalogEntry("action-fixed", "Z2 reflecting the 6-cycle (two fixed vertices)",
                 "translation groupoid of an action with fixed points",
                 _sequence_runner(reflection_c6, "pi1 = %(pi1)s, pi1(X) = %(pi1(X))s"),
                 {"pi1": "Z/2 + Z/2", "pi1(X)": "Z"}),
    CatalogEntry("fundamental-groupoid", "fundamental groupoid of RP2 on its vertices",
                 "transitive groupoid reduces to its isotropy group",
                 _run_fundamental_groupoid, {"pi1_ab": "Z/2"}),
    CatalogEntry("mobius", "Z2 reflecting a path graph", "holonomy groupoid of the Mobius band",
                 _run_mobius, {"pi1_ab": "Z/2", "hom-signature": [2, 1, 2, 4, 6, 4, 10]}),
    CatalogEntry("kronecker-analog",
                 "free Z2 on the 6-cycle, giving 0 -> Z -> pi1 -> Z/2 -> 0; a finite stand-in "
                 "for an extension of Z by Z, not the irrational rotation groupoid",
                 "Kronecker foliation, analog only", _run_kronecker, {"pi1": "Z", "pi1(X)": "Z"}),
    CatalogEntry("eff-z4-c6", "Z4 on the 6-cycle through Z4 -> Z2, with ineffective kernel Z2",
                 "effective quotient sequence", _run_eff,
                 {"pi1": "Z + Z/2", "pi1(Eff)": "Z", "K": "order 2"}),
]

BY_NAME = {e.name: e for e in ENTRIES}


def get(name):
    try:
        return BY_NAME[name]
    except KeyError:
        raise KeyError("unknown catalog entry %r (known: %s)" % (name, ", ".join(BY_NAME))) from None


def run_all():
    return [(e, e.run()) for e in ENTRIES]
