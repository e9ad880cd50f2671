from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given

from arckit.decomposition import (MARKER_1, MARKER_2, Join, NodeLabel, all_modules,
                                  build_md_tree, decompose_by_join, find_join,
                                  find_join_exhaustive, is_module, is_s_inseparable,
                                  is_s_inseparable_exhaustive, is_trivial_module,
                                  is_valid_join, join_problems, maximal_modules,
                                  module_closure, module_type, recompose)
from arckit.errors import InvalidJoin, SizeCapExceeded
from arckit.graph_core import Graph, complement, induced_subgraph, is_connected

from .strategies import PROPERTY_SETTINGS, graph, graphs


def connected_atlas(max_size=6):
    for nxg in nx.graph_atlas_g():
        if 1 <= nxg.number_of_nodes() <= max_size and nx.is_connected(nxg):
            yield Graph.from_networkx(nxg)


def test_p4_has_only_trivial_modules(p4):
    assert all_modules(p4) == [frozenset(v) for v in "abcd"] + [frozenset("abcd")]
    assert is_s_inseparable(p4)


def test_c4_modules(c4):
    modules = all_modules(c4)
    assert frozenset({"1", "3"}) in modules
    assert frozenset({"2", "4"}) in modules
    assert not is_s_inseparable(c4)


def test_k2_modules(k2):
    assert all_modules(k2) == [frozenset("a"), frozenset("b"), frozenset("ab")]


def test_module_scan_cap():
    big = Graph.from_edges([f"v{i}" for i in range(17)])
    with pytest.raises(SizeCapExceeded) as info:
        all_modules(big)
    assert info.value.cap == 16


def test_module_closure(c5):
    assert module_closure(c5, ["1", "2"]) == c5.vertex_set
    star = graph("c x y z", "c-x c-y c-z")
    assert module_closure(star, ["x", "y"]) == {"x", "y"}
    assert module_closure(star, ["c", "x"]) == star.vertex_set


@given(graphs(max_size=6))
@PROPERTY_SETTINGS
def test_all_modules_is_exactly_the_module_lattice(g):
    found = set(all_modules(g))
    verts = g.vertices
    for k in range(1, len(verts) + 1):
        for subset in combinations(verts, k):
            m = frozenset(subset)
            by_hand = all(not (g.neighbors(v) & m) or m <= g.neighbors(v) for v in g.vertex_set - m)
            assert (m in found) == by_hand
            assert is_module(g, m) == by_hand


@given(graphs(max_size=6))
@PROPERTY_SETTINGS
def test_pair_closure_agrees_with_subset_scan(g):
    assert is_s_inseparable(g) == is_s_inseparable_exhaustive(g)


def test_md_tree_examples(k3):
    tree = build_md_tree(k3)
    assert tree.root.label is NodeLabel.SERIES
    assert [c.label for c in tree.root.children] == [NodeLabel.LEAF] * 3

    tree = build_md_tree(graph("a b c d", "a-b c-d"))
    assert tree.root.label is NodeLabel.PARALLEL
    assert [c.label for c in tree.root.children] == [NodeLabel.SERIES, NodeLabel.SERIES]
    assert all(len(c.children) == 2 for c in tree.root.children)


def test_md_tree_of_prime_graph(p4):
    tree = build_md_tree(p4)
    assert tree.root.label is NodeLabel.NEIGHBORHOOD
    assert sorted(min(c.vertices) for c in tree.root.children) == list("abcd")
    assert "N {a, b, c, d}" in tree.render()


def test_md_tree_needs_vertices():
    with pytest.raises(ValueError):
        build_md_tree(Graph(()))


def _check_node(g: Graph, node) -> None:
    sub = induced_subgraph(g, node.vertices)
    if node.is_leaf:
        assert len(node.vertices) == 1
        return
    assert frozenset().union(*(c.vertices for c in node.children)) == node.vertices
    assert sum(len(c.vertices) for c in node.children) == len(node.vertices)
    assert all(is_module(g, c.vertices) for c in node.children)
    if not is_connected(sub):
        assert node.label is NodeLabel.PARALLEL
    elif not is_connected(complement(sub)):
        assert node.label is NodeLabel.SERIES
    else:
        assert node.label is NodeLabel.NEIGHBORHOOD
        proper = [m for m in all_modules(sub) if m != sub.vertex_set]
        maximal = {m for m in proper if not any(m < other for other in proper)}
        assert {c.vertices for c in node.children} == maximal
    assert module_type(g, node.vertices) is node.label
    for child in node.children:
        _check_node(g, child)


@given(graphs(max_size=6))
@PROPERTY_SETTINGS
def test_md_tree_labels_match_connectivity(g):
    _check_node(g, build_md_tree(g).root)


@pytest.mark.slow
def test_md_tree_on_connected_atlas():
    for g in connected_atlas():
        _check_node(g, build_md_tree(g).root)


def test_maximal_modules_of_c5_are_singletons(c5):
    assert maximal_modules(c5) == [frozenset(v) for v in "12345"]


def test_join_of_p4(p4):
    j = find_join(p4)
    assert j is not None
    assert is_valid_join(p4, j)
    assert is_valid_join(p4, Join.of("a", "b", "c", "d"))


def test_c5_is_j_inseparable(c5):
    assert find_join(c5) is None
    assert find_join_exhaustive(c5) is None


def test_join_problems_are_named(p4):
    problems = join_problems(p4, Join.of("a", "b", "d", "c"))
    assert "missing V1-V2 edge b-d" in problems
    assert join_problems(p4, Join.of("a", "", "", "bcd")) == ["each side needs at least two vertices",
                                                              "edge a-b between V0 and V2+V3",
                                                              "edge b-a between V0+V1 and V3"]


@given(graphs(max_size=5))
@PROPERTY_SETTINGS
def test_join_search_agrees_with_partition_scan(g):
    assert (find_join(g) is None) == (find_join_exhaustive(g) is None)


@pytest.mark.slow
def test_join_search_on_connected_atlas():
    for g in connected_atlas():
        assert (find_join(g) is None) == (find_join_exhaustive(g) is None)


def test_decompose_p4(p4):
    parts = decompose_by_join(p4, Join.of("a", "b", "c", "d"))
    assert parts.h1 == graph(f"a b {MARKER_1}", f"a-b b-{MARKER_1}")
    assert parts.h2 == graph(f"c d {MARKER_2}", f"{MARKER_2}-c c-d")
    assert recompose(parts) == p4


def test_decompose_with_named_markers(p4):
    parts = decompose_by_join(p4, Join.of("a", "b", "c", "d"), marker1="c", marker2="b")
    assert parts.h1 == induced_subgraph(p4, "abc")
    assert parts.h2 == induced_subgraph(p4, "bcd")
    assert recompose(parts) == p4


def test_decompose_rejects_bad_input(p4):
    with pytest.raises(InvalidJoin):
        decompose_by_join(p4, Join.of("a", "c", "b", "d"))
    with pytest.raises(InvalidJoin):
        decompose_by_join(p4, Join.of("a", "b", "c", "d"), marker1="a")


@given(graphs(min_size=4, max_size=6))
@PROPERTY_SETTINGS
def test_recompose_inverts_decompose(g):
    j = find_join(g)
    if j is not None:
        assert recompose(decompose_by_join(g, j)) == g


def test_trivial_modules(p4):
    assert is_trivial_module(p4, frozenset("a"))
    assert is_trivial_module(p4, p4.vertex_set)
    assert not is_trivial_module(p4, frozenset("ab"))
