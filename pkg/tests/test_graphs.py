import pytest
from hypothesis import given
from hypothesis import strategies as st

from orichrome import (
    OrientedGraph,
    SimpleGraph,
    back_degrees,
    degeneracy_ordering,
    directed_square,
    graph_from_json,
    graph_to_json,
    is_oriented_clique,
    orientation_vector,
    parse_edge_list,
    random_oriented_graph,
    random_orientation,
    serialize_edge_list,
)
from orichrome.errors import InvariantViolation, NonAdjacent, ParseError

seeds = st.integers(min_value=0, max_value=2**62)
sizes = st.integers(min_value=1, max_value=12)


# -- construction invariants ---------------------------------------------------


def test_loop_rejected():
    with pytest.raises(InvariantViolation):
        OrientedGraph(2, [(1, 1)])


def test_antiparallel_rejected():
    with pytest.raises(InvariantViolation):
        OrientedGraph(2, [(0, 1), (1, 0)])


def test_duplicate_rejected():
    with pytest.raises(InvariantViolation):
        OrientedGraph(2, [(0, 1), (0, 1)])


def test_out_of_range_rejected():
    with pytest.raises(InvariantViolation):
        OrientedGraph(2, [(0, 2)])


def test_degree_counts(path3):
    assert path3.degree(1) == 2
    assert path3.out_neighbours(0) == [1]
    assert path3.in_neighbours(2) == [1]
    assert path3.arc_count == 2
    assert path3.max_degree() == 2
    assert path3.min_degree() == 1


# -- orientation vectors -------------------------------------------------------


def test_orientation_vector_path(path3):
    assert orientation_vector(path3, [0, 2], 1) == (-1, 1)


def test_orientation_vector_empty(path3):
    assert orientation_vector(path3, [], 0) == ()


def test_orientation_vector_nonadjacent(path3):
    with pytest.raises(NonAdjacent):
        orientation_vector(path3, [2], 0)


@given(seeds, sizes)
def test_orientation_vector_matches_arcs(seed, n):
    g = random_oriented_graph(n, seed)
    for v in range(n):
        nbrs = g.neighbours(v)
        vec = orientation_vector(g, nbrs, v)
        for u, entry in zip(nbrs, vec):
            assert entry == (1 if g.has_arc(v, u) else -1)


# -- directed square -----------------------------------------------------------


def test_square_of_path_is_triangle(path3):
    sq = directed_square(path3)
    assert sorted(sq.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_square_of_edgeless():
    sq = directed_square(OrientedGraph(4))
    assert sq.edge_count == 0


def test_square_of_consistent_c4():
    c4 = OrientedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert directed_square(c4).is_complete()


@given(seeds, sizes)
def test_square_monotone_under_arc_addition(seed, n):
    g = random_oriented_graph(n, seed, density=0.4)
    base = directed_square(g)
    for u in range(n):
        for v in range(n):
            if u != v and not g.has_arc(u, v) and not g.has_arc(v, u):
                bigger = OrientedGraph(n, g.arcs() + [(u, v)])
                sq = directed_square(bigger)
                assert all(sq.has_edge(a, b) for a, b in base.edges())
                return


# -- oriented cliques ----------------------------------------------------------


def test_transitive_triangle_is_clique():
    assert is_oriented_clique(OrientedGraph(3, [(0, 1), (0, 2), (1, 2)]))


def test_path_is_clique(path3):
    assert is_oriented_clique(path3)


def test_consistent_c5_is_clique():
    # every pair of C5 vertices is joined by an arc or a directed 2-path,
    # confirmed by the all-pairs scan in directed_square
    c5 = OrientedGraph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert directed_square(c5).is_complete()
    assert is_oriented_clique(c5)


def test_clique_iff_square_complete():
    for seed in range(40):
        g = random_oriented_graph(6, seed, density=0.6)
        assert is_oriented_clique(g) == directed_square(g).is_complete()


# -- degeneracy ordering -------------------------------------------------------


def test_degeneracy_edgeless():
    assert degeneracy_ordering(OrientedGraph(5)).degeneracy == 0


def test_degeneracy_tree():
    tree = OrientedGraph(5, [(0, 1), (0, 2), (1, 3), (3, 4)])
    assert degeneracy_ordering(tree).degeneracy == 1


def test_degeneracy_octahedron():
    # K2,2,2 is 4-regular, so peeling can never see a vertex below degree 4
    non_edges = ({0, 1}, {2, 3}, {4, 5})
    edges = [
        (u, v) for u in range(6) for v in range(u + 1, 6) if {u, v} not in non_edges
    ]
    octa = SimpleGraph(6, edges)
    assert octa.min_degree() == 4
    assert degeneracy_ordering(octa).degeneracy == 4


@given(seeds, sizes)
def test_degeneracy_prefix_property(seed, n):
    g = random_oriented_graph(n, seed)
    ordering = degeneracy_ordering(g)
    backs = back_degrees(g, ordering.order)
    assert max(backs) == ordering.degeneracy
    assert ordering.degeneracy <= g.max_degree()
    assert sorted(ordering.order) == list(range(n))


# -- text and JSON round trips -------------------------------------------------


def test_parse_path():
    g = parse_edge_list("3 2\n0 1\n1 2\n")
    assert g == OrientedGraph(3, [(0, 1), (1, 2)])


def test_parse_comments_and_blanks():
    g = parse_edge_list("# a path\n3 2\n\n0 1  # first arc\n1 2\n")
    assert g.arc_count == 2


def test_parse_antiparallel():
    with pytest.raises(InvariantViolation):
        parse_edge_list("2 2\n0 1\n1 0\n")


def test_parse_bad_header():
    with pytest.raises(ParseError):
        parse_edge_list("3\n0 1\n")


def test_parse_bad_token():
    with pytest.raises(ParseError):
        parse_edge_list("2 1\n0 x\n")


def test_parse_wrong_arc_count():
    with pytest.raises(ParseError):
        parse_edge_list("3 5\n0 1\n1 2\n")


def test_serialize_normalizes():
    text = "3 2\n1 2\n0 1\n"
    assert serialize_edge_list(parse_edge_list(text)) == "3 2\n0 1\n1 2\n"


@given(seeds, sizes)
def test_edge_list_round_trip(seed, n):
    g = random_oriented_graph(n, seed)
    assert parse_edge_list(serialize_edge_list(g)) == g


@given(seeds, sizes)
def test_json_round_trip(seed, n):
    g = random_oriented_graph(n, seed)
    assert graph_from_json(graph_to_json(g)) == g


@given(seeds, st.integers(min_value=3, max_value=10))
def test_random_orientation_keeps_underlying(seed, n):
    from orichrome import planar_sparse_graph

    base = planar_sparse_graph(n, seed)
    g = random_orientation(base, seed)
    assert g.underlying() == base
