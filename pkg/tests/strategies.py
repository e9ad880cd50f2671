# tests/strategies.py
from itertools import combinations
from typing import Iterable, Tuple

from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from arckit.arc_model import ChordModel, CircularArcModel, head, tail
from arckit.enumeration import sample_normalizable
from arckit.graph_core import Graph

PROPERTY_SETTINGS = settings(
    max_examples=80,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)


def graph(vertices: str, edges: str = "") -> Graph:
    """graph("a b c", "a-b b-c")"""
    return Graph.from_edges(vertices.split(), [tuple(e.split("-")) for e in edges.split()])


def arcs(word: str) -> CircularArcModel:
    return CircularArcModel(tuple(word.split()))


def chords(word: str) -> ChordModel:
    return ChordModel(tuple(word.split()))


def pairs(g: Graph) -> Iterable[Tuple[str, str]]:
    return combinations(g.vertices, 2)


@st.composite
def graphs(draw: st.DrawFn, min_size: int = 1, max_size: int = 6) -> Graph:
    n = draw(st.integers(min_size, max_size))
    names = [f"v{i}" for i in range(n)]
    candidates = list(combinations(names, 2))
    keep = draw(st.lists(st.booleans(), min_size=len(candidates), max_size=len(candidates)))
    return Graph.from_edges(names, [e for e, k in zip(candidates, keep) if k])


@st.composite
def arc_models(draw: st.DrawFn, min_size: int = 1, max_size: int = 6) -> CircularArcModel:
    n = draw(st.integers(min_size, max_size))
    tokens = [t for i in range(n) for t in (head(f"v{i}"), tail(f"v{i}"))]
    return CircularArcModel(tuple(draw(st.permutations(tokens))))


@st.composite
def chord_models(draw: st.DrawFn, min_size: int = 1, max_size: int = 5) -> ChordModel:
    n = draw(st.integers(min_size, max_size))
    labels = [f"c{i}" for i in range(n)] * 2
    return ChordModel(tuple(draw(st.permutations(labels))))


@st.composite
def normalizable_models(draw: st.DrawFn, min_size: int = 4, max_size: int = 7) -> Tuple[CircularArcModel, Graph]:
    """An arc model with its intersection graph, which has no similar pair and no D-vertex."""
    n = draw(st.integers(min_size, max_size))
    drawn = sample_normalizable(n, draw(st.randoms(use_true_random=False)))
    assume(drawn is not None)
    return drawn
