from itertools import product

import pytest

from morita.groupoid import (FiniteGroupoid, GroupoidFunctor, SetAction, action_groupoid,
                             base_change_iso, check_groupoid, disjoint_union, full_subgroupoid,
                             group_as_groupoid, inclusion_functor, is_weak_equivalence, isotropy,
                             orbits, pair_groupoid, point_groupoid, product_groupoid,
                             same_orbit_structure, transitive_groupoid, translation_groupoid,
                             unit_groupoid, validate_groupoid)
from morita.groups import are_isomorphic, cyclic, symmetric, trivial_group


def z4_through_z2():
    # Z4 acting on two points through Z4 -> Z2
    return SetAction.from_function(cyclic(4), 2, lambda g, x: (x + g) % 2)


def test_pair_groupoid_valid():
    P = pair_groupoid([1, 2])
    assert validate_groupoid(P).ok
    assert P.n_arrows == 4


def test_broken_composition_reported():
    P = pair_groupoid([1, 2])
    comp = dict(P.comp)
    g = next(a for a in P.arrows() if P.src[a] != P.tgt[a])
    # declare a composite where src(g) != tgt(g)
    comp[(g, g)] = g
    bad = FiniteGroupoid(P.n_objects, P.src, P.tgt, comp, P.inv, P.unit)
    rep = validate_groupoid(bad)
    assert not rep.ok
    assert any(v.witness == (g, g) or g in tuple(v.witness) for v in rep)


def test_group_as_groupoid():
    assert validate_groupoid(group_as_groupoid(cyclic(2))).ok
    G = group_as_groupoid(cyclic(2))
    assert (G.n_objects, G.n_arrows) == (1, 2)
    T = group_as_groupoid(trivial_group())
    assert (T.n_objects, T.n_arrows) == (1, 1)
    S = group_as_groupoid(symmetric(3))
    assert are_isomorphic(isotropy(S, 0), symmetric(3))


def test_pair_groupoid_examples():
    one = pair_groupoid([1])
    assert (one.n_objects, one.n_arrows) == (1, 1)
    three = pair_groupoid([1, 2, 3])
    assert three.n_arrows == 9 and len(orbits(three)) == 1
    assert isotropy(three, 0).order == 1
    with pytest.raises(ValueError):
        pair_groupoid([])


def test_pair_composition_convention():
    P = pair_groupoid(range(3))
    lab = {a: i for i, a in enumerate(P.arr_labels)}
    # (a,b) goes b -> a and (a,b)(b,c) = (a,c)
    assert P.compose(lab[(0, 1)], lab[(1, 2)]) == lab[(0, 2)]
    assert (P.src[lab[(0, 1)]], P.tgt[lab[(0, 1)]]) == (1, 0)


def test_translation_groupoid_examples():
    triv = SetAction.from_function(cyclic(2), 1, lambda g, x: x)
    T = translation_groupoid(triv)
    assert (T.n_objects, T.n_arrows) == (1, 2)
    assert are_isomorphic(isotropy(T, 0), cyclic(2))
    swap = SetAction.from_function(cyclic(2), 2, lambda g, x: (x + g) % 2)
    T = translation_groupoid(swap)
    assert len(orbits(T)) == 1 and isotropy(T, 0).order == 1
    T = translation_groupoid(z4_through_z2())
    assert validate_groupoid(T).ok
    # stabilizer of a point: elements of Z4 of even residue, {0, 2}
    assert isotropy(T, 0).order == 2


def test_translation_arrow_direction():
    A = SetAction.from_function(cyclic(3), 3, lambda g, x: (x + g) % 3)
    T = translation_groupoid(A)
    for a, (g, x) in enumerate(T.arr_labels):
        assert T.src[a] == x and T.tgt[a] == A.act(g, x)


def test_invalid_action_rejected():
    bad = SetAction(cyclic(2), 2, [[1, 0], [1, 0]])
    assert not bad.validate().ok
    with pytest.raises(ValueError):
        translation_groupoid(bad)


def test_orbits_examples():
    assert len(orbits(pair_groupoid([1, 2, 3]))) == 1
    assert len(orbits(disjoint_union(unit_groupoid([0]), unit_groupoid([0])))) == 2
    A = SetAction.from_function(cyclic(2), 3, lambda g, x: x if x == 2 else (x + g) % 2)
    assert sorted(map(sorted, orbits(translation_groupoid(A)))) == [[0, 1], [2]]


def test_isotropy_unknown_object():
    with pytest.raises(KeyError):
        isotropy(pair_groupoid([1, 2]), 5)


def test_base_change_unit_is_identity():
    G = transitive_groupoid(2, cyclic(3))
    f = base_change_iso(G, G.unit[0])
    assert list(f.images) == list(range(f.source.order))


def test_base_change_abelian_independent_of_arrow():
    # two objects, isotropy Z3: every arrow 1 -> 0 induces the same map
    G = transitive_groupoid(2, cyclic(3))
    maps = {tuple(base_change_iso(G, g).images) for g in G.hom(1, 0)}
    assert len(maps) == 1


def test_base_change_functoriality():
    G = transitive_groupoid(3, symmetric(3))
    for g, h in product(G.hom(1, 0), G.hom(2, 1)):
        # g: 1 -> 0, h: 2 -> 1, gh: 2 -> 0
        fg, fh = base_change_iso(G, g), base_change_iso(G, h)
        fgh = base_change_iso(G, G.compose(g, h))
        assert fg.is_isomorphism()
        assert [fh(fg(x)) for x in fg.source.elements()] == list(fgh.images)


def test_base_change_rejects_loose_arrow():
    G = transitive_groupoid(2, cyclic(2))
    assert base_change_iso(G, G.hom(1, 0)[0]).is_isomorphism()


def test_weak_equivalence_examples():
    G = transitive_groupoid(3, symmetric(3))
    assert is_weak_equivalence(GroupoidFunctor.identity(G)).ok
    sub, inc = inclusion_functor(G, [1])
    assert is_weak_equivalence(inc).ok
    H = disjoint_union(G, point_groupoid())
    _, inc2 = inclusion_functor(H, range(3))
    rep = is_weak_equivalence(inc2)
    assert not rep.ok and not rep.essentially_surjective


def test_not_fully_faithful():
    # Z2 => * to the point is essentially surjective but not faithful
    G = group_as_groupoid(cyclic(2))
    F = GroupoidFunctor(G, point_groupoid(), [0], [0, 0])
    rep = is_weak_equivalence(F)
    assert rep.essentially_surjective and not rep.fully_faithful


def test_functor_validation_catches_bad_map():
    G = group_as_groupoid(cyclic(4))
    H = group_as_groupoid(cyclic(2))
    good = GroupoidFunctor(G, H, [0], [0, 1, 0, 1])
    assert good.validate().ok
    bad = GroupoidFunctor(G, H, [0], [0, 1, 1, 0])
    assert not bad.validate().ok


def test_products_and_subgroupoids_valid():
    G = product_groupoid(pair_groupoid(range(2)), group_as_groupoid(cyclic(3)))
    assert validate_groupoid(G).ok and G.n_arrows == 12
    sub = full_subgroupoid(G, [0])
    assert validate_groupoid(sub).ok and sub.n_arrows == 3
    assert check_groupoid(G) is None or check_groupoid(G) == G


def test_action_groupoid_of_left_action():
    A = z4_through_z2()
    G = group_as_groupoid(cyclic(4))
    T = action_groupoid(G, range(2), anchor=lambda p: 0, act=lambda h, p: A.act(h, p))
    assert validate_groupoid(T).ok
    assert same_orbit_structure(T, translation_groupoid(A))
