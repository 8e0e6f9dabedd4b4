import pytest
from hypothesis import given, settings

from graphgen import mixed_graphs
from magequiv.graph import (
    CycleError, EdgeMark, GraphError, MixedGraph, check_kind, is_mag, label_key, parse_graph,
    serialize_graph, validate_ancestral, validate_maximal,
)


def G_(*edges, vertices=(), kind="admg"):
    return MixedGraph.from_labelled(edges, vertices, kind)


def test_golden_files_round_trip(data_dir):
    files = sorted(data_dir.glob("*.g"))
    assert len(files) >= 9
    for p in files:
        text = p.read_text()
        assert serialize_graph(parse_graph(text)) == text, p.name


def test_parse_comments_and_isolated_vertices():
    G = parse_graph("# comment\n!type admg\nvertex 9\n1 -> 2  # trailing\n\n2 <-> 3\n")
    assert G.labels == ("9", "1", "2", "3")
    assert G.pa(G.index(2)) == G.vset(1)
    assert G.sib(G.index(3)) == G.vset(2)
    assert G.adjacencies(G.index(9)) == frozenset()


@pytest.mark.parametrize("text, msg", [
    ("1 => 2", "unknown token"),
    ("!type chain\n1 -> 2", "bad header"),
    ("1 -> 1", "self-loop"),
    ("1 -> 2\n1 -> 2", "duplicate"),
    ("1 <-> 2\n2 <-> 1", "duplicate"),
    ("1 - 2", "undirected"),
    ("!type dag\n1 <-> 2", "directed"),
    ("!type summary\n1 - 2\n3 -> 1", "undirected edge at vertex"),
    ("!type mag\n1 -> 2\n1 <-> 2", "at most one edge"),
])
def test_parse_errors(text, msg):
    with pytest.raises(GraphError, match=msg):
        parse_graph(text)


def test_cycle_rejected():
    with pytest.raises(CycleError):
        parse_graph("1 -> 2\n2 -> 3\n3 -> 1")


def test_multi_edge_allowed_in_admg():
    G = parse_graph("1 -> 2\n1 <-> 2")
    assert G.has_multi_edges()
    assert not parse_graph("1 -> 2\n2 <-> 3").has_multi_edges()
    assert len(G.edges) == 2


def test_symmetric_edges_canonical():
    G = MixedGraph(["a", "b"], [(1, 0, EdgeMark.BIDIRECTED)])
    assert next(iter(G.edges)).u == 0


def test_label_order_is_natural():
    assert sorted(["10", "2", "b", "1", "a"], key=label_key) == ["1", "2", "10", "a", "b"]


def test_structural_queries(figs):
    G = figs["fig3i"]
    v = G.index
    assert G.pa(v(4)) == G.vset(2, 3)
    assert G.sib(v(2)) == G.vset(1, 3)
    assert G.ancestors(G.vset(1)) == G.vset(1, 3)
    assert G.descendants(G.vset(3)) == G.vset(1, 3, 4)
    assert G.district(v(1)) == G.vset(1, 2, 3)
    assert G.district(v(4), within=G.vset(2, 3, 4)) == G.vset(4)
    assert sorted(map(sorted, G.districts())) == [[v(1), v(2), v(3)], [v(4)]]
    assert G.barren(G.vset(1, 3, 4)) == G.vset(1, 4)
    assert figs["fig3ii"].barren(figs["fig3ii"].vset(1, 2, 3, 4)) == figs["fig3ii"].vset(1)
    with pytest.raises(GraphError):
        G.district(v(1), within=G.vset(2, 3))


def test_anteriors_follow_undirected_edges(figs):
    G = figs["fig4ii"]
    assert G.anteriors(G.vset(3)) == G.vset(1, 2, 3, 4)


def test_topological_order_is_valid(figs):
    for G in figs.values():
        pos = {v: i for i, v in enumerate(G.topological_order)}
        assert all(pos[e.u] < pos[e.v] for e in G.edges if e.mark is EdgeMark.DIRECTED)


def test_figure2_classification(figs):
    assert validate_ancestral(figs["fig2i"]) and not validate_maximal(figs["fig2i"])
    assert not validate_ancestral(figs["fig2ii"]) and validate_maximal(figs["fig2ii"])
    assert validate_ancestral(figs["fig2iii"]) and validate_maximal(figs["fig2iii"])
    assert is_mag(figs["fig2iii"]) and not is_mag(figs["fig2i"])


def test_split_summary(figs):
    Gu, Gd = figs["fig4ii"].split_summary()
    assert set(Gu.labels) == {"1", "2"} and Gu.labelled_edges() == {("1", "-", "2")}
    assert set(Gd.labels) == {"3", "4"}
    with pytest.raises(GraphError):
        G_(("1", "->", "2"), ("2", "-", "3"), kind="summary").split_summary()


def test_induced_subgraph_keeps_labels(figs):
    H = figs["fig3i"].induced_subgraph(figs["fig3i"].vset(2, 3, 4))
    assert H.labelled_edges() == {("2", "->", "4"), ("3", "->", "4"), ("2", "<->", "3")}


def test_equality_is_by_label():
    a = G_(("x", "->", "y"), ("y", "<->", "z"))
    b = G_(("z", "<->", "y"), ("x", "->", "y"), vertices=["z", "y", "x"])
    assert a == b and hash(a) == hash(b)


@settings(max_examples=150, deadline=None)
@given(mixed_graphs(n_max=8))
def test_serialize_round_trip(G):
    text = serialize_graph(G)
    H = parse_graph(text)
    assert H == G and serialize_graph(H) == text


@settings(max_examples=150, deadline=None)
@given(mixed_graphs(n_max=8))
def test_ancestors_and_descendants_are_dual(G):
    for v in G.vertices:
        for w in G.vertices:
            assert (v in G.ancestors({w})) == (w in G.descendants({v}))
        assert G.ancestors({v}) <= G.anteriors({v})


@settings(max_examples=100, deadline=None)
@given(mixed_graphs(n_max=8))
def test_districts_partition(G):
    parts = G.districts()
    assert sum(len(d) for d in parts) == G.n
    assert frozenset().union(*parts) == frozenset(G.vertices)


def test_check_kind_mag_rejects_nonmaximal(figs):
    with pytest.raises(GraphError, match="maximal"):
        check_kind(figs["fig2i"], "mag")
