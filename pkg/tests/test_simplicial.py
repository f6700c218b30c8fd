import pytest

from morita.fpgroup import abelianization, evaluate, hom_count, iter_homs, probably_isomorphic, simplify
from morita.groups import cyclic, dihedral, klein_four, symmetric, trivial_group
from morita.simplicial import (CellComplex, CellMap, ComplexAction, SimplicialComplex,
                               barycentric_subdivision, cell_complex, cone, cycle_graph,
                               eg_skeleton, filled_triangle, grid_complex, path_graph,
                               pi1_presentation, point_complex, product_2skeleton,
                               quotient_by_free_action, rp2_complex, simplicial_cell_map,
                               triangle_boundary)


def ab(X, x0=0):
    a = abelianization(pi1_presentation(X, x0))
    return a.rank, a.torsion


def is_trivial(P):
    return ab_of(P) == (0, ()) and hom_count(P, symmetric(3)) == 1 and hom_count(P, symmetric(4)) == 1


def ab_of(P):
    a = abelianization(P)
    return a.rank, a.torsion


# -- complexes -------------------------------------------------------------------------

def test_closure_and_validation():
    X = SimplicialComplex(3, triangles=[(2, 0, 1)])
    assert X.edges == ((0, 1), (0, 2), (1, 2))
    assert X.validate().ok and X.dimension == 2
    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 0)])
    with pytest.raises(ValueError):
        SimplicialComplex(2, [(0, 2)])


def test_components():
    X = SimplicialComplex(5, [(0, 1), (3, 4)])
    assert X.components() == [[0, 1], [2], [3, 4]]
    assert not X.is_connected()
    with pytest.raises(ValueError):
        pi1_presentation(X)


def test_euler_characteristics():
    assert rp2_complex().euler_characteristic() == 1
    assert cycle_graph(7).euler_characteristic() == 0
    assert cone(cycle_graph(5)).euler_characteristic() == 1
    assert grid_complex(2, 3).euler_characteristic() == 1


# -- pi1 examples ----------------------------------------------------------------------

def test_pi1_examples():
    assert ab(path_graph(5)) == (0, ())
    assert ab(cycle_graph(6)) == (1, ())
    assert hom_count(pi1_presentation(cycle_graph(6)), cyclic(2)) == 2
    assert is_trivial(pi1_presentation(filled_triangle()))
    assert ab(point_complex()) == (0, ())


def test_pi1_rp2():
    P = simplify(pi1_presentation(rp2_complex())).presentation
    assert ab_of(P) == (0, (2,))
    assert probably_isomorphic(P, cyclic(2)).verdict == "yes-certified"


def test_graph_rank_is_one_minus_chi():
    graphs = [cycle_graph(5), path_graph(4), SimplicialComplex(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (1, 3)])]
    for X in graphs:
        assert ab(X)[0] == 1 - X.euler_characteristic()


def test_base_point_does_not_matter():
    X = rp2_complex()
    assert ab(X, 0) == ab(X, 4)
    with pytest.raises(KeyError):
        pi1_presentation(X, 9)


# -- constructions -------------------------------------------------------------------

def test_grid_complexes():
    g1 = grid_complex(1, 4)
    assert g1.n_vertices == 5 and len(g1.edges) == 4
    assert ab(g1) == (0, ())
    assert is_trivial(pi1_presentation(grid_complex(2, 2)))
    with pytest.raises(ValueError):
        grid_complex(3, 2)


def test_subdivision_of_triangle_boundary():
    sd = barycentric_subdivision(triangle_boundary())
    assert sd.n_vertices == 6 and len(sd.edges) == 6 and not sd.triangles
    assert all(len(sd.neighbors(v)) == 2 for v in sd.vertices())
    assert ab(sd) == (1, ())


def test_subdivision_of_disk():
    sd = barycentric_subdivision(filled_triangle())
    assert len(sd.triangles) == 6 and sd.euler_characteristic() == 1


def test_products():
    assert product_2skeleton(point_complex(), cycle_graph(5)).euler_characteristic() == 0
    T = product_2skeleton(cycle_graph(4), cycle_graph(4))
    assert ab(T) == (2, ())
    assert T.euler_characteristic() == 0
    assert ab(product_2skeleton(path_graph(2), path_graph(2))) == (0, ())
    cyl = product_2skeleton(cycle_graph(3), path_graph(3))
    assert ab(cyl) == (1, ())


@pytest.mark.parametrize("G", [trivial_group(), cyclic(2), cyclic(3), klein_four(), symmetric(3)])
def test_eg_skeleton(G):
    A = eg_skeleton(G)
    assert A.complex.is_connected()
    if G.order > 1:
        assert A.is_free()
    assert is_trivial(pi1_presentation(A.complex))


# -- actions and quotients ---------------------------------------------------------------

def test_action_rejects_non_simplicial_map():
    with pytest.raises(ValueError):
        ComplexAction.from_function(cyclic(2), path_graph(3), lambda g, v: [0, 2, 1][v] if g else v)


def test_quotient_antipodal():
    A = ComplexAction.from_function(cyclic(2), cycle_graph(6), lambda g, v: (v + 3 * g) % 6)
    Q = quotient_by_free_action(A)
    assert Q.complex.is_connected()
    assert ab(Q.complex) == (1, ())
    assert Q.subdivisions == 0
    assert Q.complex.n_vertices == 3


def test_quotient_rotation_needs_subdivision():
    A = ComplexAction.from_function(cyclic(3), cycle_graph(6), lambda g, v: (v + 2 * g) % 6)
    Q = quotient_by_free_action(A)
    assert Q.subdivisions >= 1
    assert ab(Q.complex) == (1, ())
    assert A.complex.euler_characteristic() == 3 * Q.complex.euler_characteristic()


def test_quotient_trivial_group():
    X = rp2_complex()
    Q = quotient_by_free_action(ComplexAction.trivial(trivial_group(), X))
    assert Q.complex == X


def test_quotient_rejects_non_free():
    A = ComplexAction.from_function(cyclic(2), cycle_graph(6), lambda g, v: (-v) % 6 if g else v)
    with pytest.raises(ValueError):
        quotient_by_free_action(A)


def test_quotient_of_eg_is_classifying_2_skeleton():
    for G in (cyclic(2), cyclic(3), symmetric(3)):
        Q = quotient_by_free_action(eg_skeleton(G))
        P = simplify(pi1_presentation(Q.complex)).presentation
        assert probably_isomorphic(P, G).verdict == "yes-certified"


def test_free_action_stabilizers():
    A = eg_skeleton(dihedral(3))
    assert all(A.simplex_stabilizer(s) == [0] for s in A.complex.triangles[:10])
    assert len(A.vertex_orbits()) == 3


# -- cell complexes and maps --------------------------------------------------------------

def test_cell_complex_face_must_close():
    with pytest.raises(ValueError):
        CellComplex(2, [(0, 1), (0, 1)], faces=[(1, 2)])
    bigon = CellComplex(2, [(0, 1), (0, 1)], faces=[(1, -2)])
    assert ab_of(bigon.pi1().presentation) == (0, ())


def test_cell_complex_agrees_with_edge_path_presentation():
    for X in (rp2_complex(), cycle_graph(5), product_2skeleton(cycle_graph(3), cycle_graph(3))):
        assert ab_of(cell_complex(X).pi1().presentation) == ab(X)


def test_double_cover_of_circle_induces_times_two():
    C6, C3 = cycle_graph(6), cycle_graph(3)
    f = simplicial_cell_map(C6, C3, [v % 3 for v in range(6)]).induced(0)
    Z4 = cyclic(4)
    onto = False
    for h in iter_homs(f.target, Z4):
        values = {evaluate(w, Z4, h) for w in f.images}
        # every loop upstairs winds an even number of times downstairs
        assert all(v % 2 == 0 for v in values)
        onto |= any(v % 2 for v in h)
    assert onto


def test_cell_map_rejects_bad_edge_image():
    C = cell_complex(path_graph(2))
    with pytest.raises(ValueError):
        CellMap(C, C, [0, 1], [()])
