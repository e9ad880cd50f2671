import pytest
from hypothesis import given, strategies as st

from arckit import conformal, decomposition
from arckit.arc_model import CircularArcModel, to_chord_model
from arckit.claims import fixture_ce1
from arckit.config import Config
from arckit.conformal import (build_gc, chord_classes_agree, compare_chord_classes,
                              is_conformal, is_module_consistent,
                              is_permutation_submodel, side_partition)
from arckit.enumeration import circular_arc_graphs, enumerate_normalized_models
from arckit.errors import ModelMismatch, PartitionGap, SizeCapExceeded, UnknownVertex
from arckit.graph_core import Graph, VertexPairRelation, classify_vertex_pair

from .strategies import PROPERTY_SETTINGS, chord_models, chords, graph, graphs, normalizable_models, pairs


def test_gc_examples(p3, c5):
    assert build_gc(p3) == graph("a b c")
    assert build_gc(c5) == c5


@given(graphs(max_size=6))
@PROPERTY_SETTINGS
def test_gc_edges_are_strict_not_strong_pairs(g):
    gc = build_gc(g)
    assert gc.vertices == g.vertices
    assert gc.edges <= g.edges
    for a, b in pairs(g):
        expected = classify_vertex_pair(g, a, b) is VertexPairRelation.STRICTLY_NOT_STRONGLY_ADJACENT
        assert gc.adjacent(a, b) == expected


def test_side_partition_of_c5(c5):
    part = side_partition(c5, "1")
    assert part.i_set == {"3", "4"}
    assert part.l_set == set()
    assert part.r_set == {"3", "4"}
    assert part.exact


def test_side_partition_of_p3(p3):
    part = side_partition(p3, "a")
    assert part.i_set == {"b", "c"}
    assert part.l_set == set()
    assert part.r_set == {"b", "c"}


def test_side_partition_of_p4(p4):
    part = side_partition(p4, "b")
    assert part.l_set == {"a", "c"}
    assert part.r_set == {"d"}


def test_side_partition_unknown_vertex(p3):
    with pytest.raises(UnknownVertex):
        side_partition(p3, "z")


def test_partition_gap_is_reported(k2):
    # twins sit in neither side
    with pytest.raises(PartitionGap) as info:
        side_partition(k2, "a")
    assert info.value.vertices == ["b"]
    part = side_partition(k2, "a", strict=False)
    assert part.gaps == {"b"}
    assert not part.exact


@given(normalizable_models(max_size=7))
@PROPERTY_SETTINGS
def test_side_partition_is_exact_on_circular_arc_graphs(drawn):
    _, g = drawn
    gc = build_gc(g)
    for u in g.vertices:
        part = side_partition(g, u, gc)
        assert part.l_set | part.r_set == part.i_set
        assert not part.l_set & part.r_set


def test_p4_conformality(p4):
    assert is_conformal(chords("a a c b d d b c"), p4)
    result = is_conformal(chords("a a b b c c d d"), p4)
    assert not result
    assert result.violators == ("b", "c")


def test_two_isolated_chords_are_conformal():
    assert is_conformal(chords("a a b b"), graph("a b"))


def test_conformal_needs_gc_model():
    with pytest.raises(ModelMismatch):
        is_conformal(chords("a b a b"), graph("a b"))


def test_chord_model_of_ce1_model_is_conformal():
    fx = fixture_ce1()
    assert is_conformal(to_chord_model(fx.model), fx.graph)


@given(normalizable_models(max_size=6))
@PROPERTY_SETTINGS
def test_normalized_models_give_conformal_chord_models(drawn):
    _, g = drawn
    for word in enumerate_normalized_models(g).rotation_classes:
        assert is_conformal(to_chord_model(CircularArcModel(word)), g)


def test_consistency_examples():
    witness = is_module_consistent(chords("a b a b c c"), {"c"})
    assert witness is not None
    assert (witness.arc_a, witness.arc_b) == ((4,), (5,))
    witness = is_module_consistent(chords("a b a b"), {"a", "b"})
    assert witness is not None
    assert len(witness.arc_a) == len(witness.arc_b) == 2
    assert is_module_consistent(chords("a a b b"), {"a", "b"}) is not None
    assert is_module_consistent(chords("a a c b b c"), {"a", "b"}) is None


def test_consistency_unknown_vertex():
    with pytest.raises(UnknownVertex):
        is_module_consistent(chords("a a"), {"z"})


def test_ce1_outer_modules_are_inconsistent():
    fx = fixture_ce1()
    d = to_chord_model(fx.model)
    assert is_module_consistent(d, fx.part("M1")) is None
    assert is_module_consistent(d, fx.part("M4")) is None
    assert is_permutation_submodel(d, fx.part("M2"))


@given(chord_models(min_size=2), st.integers(0, 20), st.data())
def test_consistency_ignores_rotation_and_reflection(d, k, data):
    module = data.draw(st.sets(st.sampled_from(d.vertices), min_size=1))
    expected = is_module_consistent(d, module) is None
    assert (is_module_consistent(d.rotate(k), module) is None) == expected
    assert (is_module_consistent(d.reflect(), module) is None) == expected


def test_chord_classes_agree_on_small_graphs(c5):
    assert chord_classes_agree(c5)
    assert chord_classes_agree(Graph.from_edges(["x"]))
    report = compare_chord_classes(c5)
    assert report.holds
    assert len(report.normalized) == 1
    assert report.to_dict()["holds"] is True


@pytest.mark.slow
def test_chord_classes_agree_on_ce1():
    ce1 = fixture_ce1().graph
    with pytest.raises(SizeCapExceeded):
        chord_classes_agree(ce1)
    assert chord_classes_agree(ce1, Config().with_enum_cap(len(ce1)))


@pytest.mark.slow
def test_chord_classes_agree_on_every_graph_up_to_five_vertices():
    checked = 0
    for n in range(1, 6):
        for g in circular_arc_graphs(n):
            assert chord_classes_agree(g), g
            checked += 1
    assert checked > 1


def test_no_consistent_partition_api():
    # see docs/parallel_case.md
    for module in (conformal, decomposition):
        names = [n.lower() for n in dir(module)]
        assert not [n for n in names if "consistent_partition" in n or "t_module" in n or "consistent_tree" in n]
