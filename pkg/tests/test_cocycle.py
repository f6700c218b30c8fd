import pytest

from morita.bibundle import (bibundle_iso_search, bundle_from_functor, is_biprincipal,
                             is_bundle_isomorphism, is_principal, report_ok, morita_equivalent, tensor)
from morita.cocycle import (Cocycle, GridCover, LiftError, cech_groupoid, check_lifting_hypotheses,
                            coboundary, cocycle_to_bundle, cocycles_equivalent, constant_cocycle,
                            lift_cocycle, pushforward, validate_cocycle)
from morita.generators import random_group_epi, translation_projection
from morita.groupoid import (GroupoidFunctor, SetAction, group_as_groupoid, inclusion_functor, pair_groupoid,
                             unit_groupoid)
from morita.groups import cyclic, symmetric


def z4_to_z2():
    return GroupoidFunctor(group_as_groupoid(cyclic(4)), group_as_groupoid(cyclic(2)), [0],
                           [g % 2 for g in range(4)])


def one_flip_cocycle(G2):
    """2x2 grid cocycle with g = 1 exactly between the column-1 and column-2 cells."""
    cov = GridCover(2, 2)
    col = {mu: mu[1] - 1 for mu in cov.cells}
    return coboundary(cov, G2, {mu: col[mu] for mu in cov.cells})


# -- covers ----------------------------------------------------------------------------

def test_grid_cover_counts():
    for n, N in ((1, 1), (1, 5), (2, 3)):
        cov = GridCover(n, N)
        assert len(cov.cells) == N ** n
        for mu in cov.cells:
            assert cov.adjacent(mu, mu)
            for nu in cov.neighbors(mu):
                assert cov.adjacent(nu, mu)
    assert len(GridCover(2, 2).neighbors((1, 1))) == 3
    assert len(GridCover(2, 3).neighbors((2, 2))) == 8
    with pytest.raises(ValueError):
        GridCover(3, 2)


def test_atoms_cover_every_cell():
    cov = GridCover(2, 3)
    atoms = cov.atoms()
    assert len(atoms) == 5 * 5
    assert {mu for at in atoms for mu in at} == set(cov.cells)
    assert all(cov.adjacent(a, b) for at in atoms for a in at for b in at)


# -- validation ------------------------------------------------------------------------

def test_constant_cocycle_valid():
    G = pair_groupoid(range(3))
    assert validate_cocycle(constant_cocycle(GridCover(2, 3), G, 1)).ok


def test_mismatched_source_detected():
    G = pair_groupoid(range(2))
    c = constant_cocycle(GridCover(1, 2), G, 0)
    g = dict(c.g)
    g[((1,), (2,))] = G.unit[1]
    rep = validate_cocycle(Cocycle(c.cover, G, c.f, g))
    assert not rep.ok
    assert rep[0].axiom == "endpoints"


def test_cocycle_condition_violation():
    G = group_as_groupoid(cyclic(3))
    cov = GridCover(1, 3)
    c = coboundary(cov, G, {(1,): 0, (2,): 1, (3,): 2})
    g = dict(c.g)
    # g_12 and g_21 are no longer mutually inverse
    g[((1,), (2,))] = 1
    g[((2,), (1,))] = 1
    assert any(v.axiom == "cocycle condition" for v in validate_cocycle(Cocycle(cov, G, c.f, g)))


def test_missing_transition():
    G = group_as_groupoid(cyclic(2))
    c = constant_cocycle(GridCover(1, 2), G, 0)
    g = dict(c.g)
    del g[((1,), (2,))]
    assert not validate_cocycle(Cocycle(c.cover, G, c.f, g)).ok


# -- pushforward and lifting ---------------------------------------------------------

def test_pushforward_identity_and_constant():
    G = pair_groupoid(range(3))
    out = G.arrows_from(0)
    c = coboundary(GridCover(2, 2), G, {mu: out[i % 3] for i, mu in enumerate(GridCover(2, 2).cells)})
    idf = GroupoidFunctor.identity(G)
    assert pushforward(idf, c) == c
    phi = z4_to_z2()
    k = constant_cocycle(GridCover(2, 2), phi.source, 0)
    assert pushforward(phi, k) == constant_cocycle(GridCover(2, 2), phi.target, 0)


def test_pushforward_z4_to_z2_is_valid():
    phi = z4_to_z2()
    cov = GridCover(2, 2)
    c = coboundary(cov, phi.source, {mu: (i * 3) % 4 for i, mu in enumerate(cov.cells)})
    assert validate_cocycle(pushforward(phi, c)).ok


def test_lift_identity_returns_same():
    G = pair_groupoid(range(2))
    cov = GridCover(2, 2)
    out = G.arrows_from(0)
    c = coboundary(cov, G, {mu: out[sum(mu) % 2] for mu in cov.cells})
    assert lift_cocycle(GroupoidFunctor.identity(G), c) == c


def test_lift_z4_to_z2():
    phi = z4_to_z2()
    c = one_flip_cocycle(phi.target)
    assert validate_cocycle(c).ok
    assert sorted(set(c.g.values())) == [0, 1]
    lift = lift_cocycle(phi, c)
    assert validate_cocycle(lift).ok
    assert pushforward(phi, lift) == c
    for p, a in c.g.items():
        if a == 1:
            assert lift.g[p] in (1, 3)


def test_constant_lifts_to_seed():
    phi = translation_projection(SetAction.from_function(
        cyclic(2), 2, lambda g, x: (x + g) % 2))
    c = constant_cocycle(GridCover(2, 2), phi.target, 0)
    lift = lift_cocycle(phi, c, seed=1)
    assert set(lift.f.values()) == {1}
    assert lift == constant_cocycle(GridCover(2, 2), phi.source, 1)


def test_lift_hypotheses_checked():
    G = pair_groupoid(range(2))
    sub, inc = inclusion_functor(G, [0])
    assert check_lifting_hypotheses(inc)
    c = constant_cocycle(GridCover(1, 2), G, 1)
    with pytest.raises(LiftError, match="object without preimage"):
        lift_cocycle(inc, c)
    # surjective on objects but arrows do not lift
    U = unit_groupoid(range(2))
    phi = GroupoidFunctor(U, G, [0, 1], [G.unit[0], G.unit[1]])
    with pytest.raises(LiftError, match="arrow without lift"):
        lift_cocycle(phi, c)


def test_bad_seed_rejected():
    G = pair_groupoid(range(2))
    c = constant_cocycle(GridCover(1, 2), G, 0)
    with pytest.raises(LiftError, match="seed"):
        lift_cocycle(GroupoidFunctor.identity(G), c, seed=1)
    with pytest.raises(ValueError, match="target"):
        lift_cocycle(z4_to_z2(), c)


# -- equivalence and bundles -------------------------------------------------------------

def test_coboundary_equivalent_to_constant():
    G = group_as_groupoid(symmetric(3))
    cov = GridCover(2, 2)
    c = coboundary(cov, G, {mu: i for i, mu in enumerate(cov.cells)})
    lam = cocycles_equivalent(constant_cocycle(cov, G, 0), c)
    assert lam is not None


def test_non_equivalent_cocycles():
    G = pair_groupoid(range(2))
    cov = GridCover(1, 2)
    assert cocycles_equivalent(constant_cocycle(cov, G, 0), constant_cocycle(cov, G, 1)) is not None
    U = unit_groupoid(range(2))
    assert cocycles_equivalent(constant_cocycle(cov, U, 0), constant_cocycle(cov, U, 1)) is None


def test_cech_groupoid_equivalent_to_atoms():
    cov = GridCover(2, 2)
    C = cech_groupoid(cov)
    res = morita_equivalent(C, unit_groupoid(range(len(cov.atoms()))))
    assert res.equivalent and is_biprincipal(res.witness)


def test_constant_cocycle_gives_trivial_bundle():
    cov = GridCover(2, 2)
    G = group_as_groupoid(cyclic(3))
    P = cocycle_to_bundle(constant_cocycle(cov, G, 0))
    assert P.validate().ok and report_ok(is_principal(P))
    assert P.n_total == len(cech_groupoid(cov).obj_labels) * 3


def test_coboundary_gives_isomorphic_bundle():
    cov = GridCover(2, 2)
    G = group_as_groupoid(symmetric(3))
    c = coboundary(cov, G, {mu: i + 1 for i, mu in enumerate(cov.cells)})
    P, Q = cocycle_to_bundle(constant_cocycle(cov, G, 0)), cocycle_to_bundle(c)
    f = bibundle_iso_search(P, Q)
    assert f is not None and is_bundle_isomorphism(P, Q, f)


def test_pushforward_matches_extension():
    phi = z4_to_z2()
    cov = GridCover(2, 2)
    c = coboundary(cov, phi.source, {mu: i % 4 for i, mu in enumerate(cov.cells)})
    C = cech_groupoid(cov)
    direct = cocycle_to_bundle(pushforward(phi, c), cech=C)
    extended = tensor(cocycle_to_bundle(c, cech=C), bundle_from_functor(phi))
    f = bibundle_iso_search(direct, extended)
    assert f is not None and is_bundle_isomorphism(direct, extended, f)


def test_lift_random_epis(rng):
    cov = GridCover(2, 3)
    for _ in range(10):
        phi = random_group_epi(rng, symmetric(3))
        G = phi.target
        lam = {mu: int(rng.integers(G.n_arrows)) for mu in cov.cells}
        c = coboundary(cov, G, lam)
        assert pushforward(phi, lift_cocycle(phi, c)) == c
