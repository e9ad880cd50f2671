# arckit/conformal.py
"""
The circle graph G_c of a circular-arc graph, the side partition of each
vertex, and the two predicates asked of chord models of G_c: conformality
and module consistency.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Tuple

from arckit.arc_model import ChordModel, interlacement_graph
from arckit.config import DEFAULT_CONFIG, Config
from arckit.errors import ModelMismatch, PartitionGap, UnknownVertex
from arckit.graph_core import (Graph, VertexPairRelation, classify_vertex_pair,
                               closed_neighborhood, is_strongly_adjacent)

logger = logging.getLogger(__name__)


def build_gc(g: Graph) -> Graph:
    edges = [(a, b) for a, b in combinations(g.vertices, 2)
             if classify_vertex_pair(g, a, b) is VertexPairRelation.STRICTLY_NOT_STRONGLY_ADJACENT]
    return Graph.from_edges(g.vertices, edges)


@dataclass(frozen=True)
class SidePartition:
    u: str
    i_set: FrozenSet[str]
    l_set: FrozenSet[str]
    r_set: FrozenSet[str]
    # vertices of I_u in neither or both of L_u, R_u
    gaps: FrozenSet[str] = frozenset()

    @property
    def exact(self) -> bool:
        return not self.gaps

    def to_dict(self) -> dict:
        return {"u": self.u, "I": sorted(self.i_set), "L": sorted(self.l_set),
                "R": sorted(self.r_set), "gaps": sorted(self.gaps)}


def side_partition(g: Graph, u: str, gc: Optional[Graph] = None, strict: bool = True) -> SidePartition:
    """
    I_u, L_u and R_u of u. Neighbourhoods are closed and taken in g.

    With strict=False a vertex of I_u that lands in neither or both sides
    is reported in `gaps` instead of raising PartitionGap.
    """
    g.require(u)
    gc = gc if gc is not None else build_gc(g)
    n_u = closed_neighborhood(g, u)
    i_set = g.vertex_set - gc.neighbors(u) - {u}
    left, right = set(), set()
    for v in i_set:
        n_v = closed_neighborhood(g, v)
        if n_v < n_u or (g.adjacent(u, v) and is_strongly_adjacent(g, u, v)):
            left.add(v)
        if not g.adjacent(u, v) or n_u < n_v:
            right.add(v)
    gaps = frozenset(v for v in i_set if (v in left) == (v in right))
    if gaps and strict:
        raise PartitionGap(u, gaps)
    return SidePartition(u, frozenset(i_set), frozenset(left), frozenset(right), gaps)


def _chord_side(d: ChordModel, u: str, v: str) -> Optional[int]:
    """1 if both ends of v lie strictly between the ends of u, 2 if both lie outside, None if v crosses u."""
    p, q = d.positions(u)
    inside = [p < x < q for x in d.positions(v)]
    if all(inside):
        return 1
    if not any(inside):
        return 2
    return None


def _separates(d: ChordModel, part: SidePartition) -> bool:
    left = {_chord_side(d, part.u, v) for v in part.l_set}
    right = {_chord_side(d, part.u, v) for v in part.r_set}
    if None in left or None in right or len(left) > 1 or len(right) > 1:
        return False
    return not (left & right)


@dataclass(frozen=True)
class ConformalityResult:
    ok: bool
    violators: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_conformal(d: ChordModel, g: Graph, gc: Optional[Graph] = None) -> ConformalityResult:
    """
    Whether every chord u keeps L_u on one side and R_u on the other.
    Which side is called left is free for each u.
    """
    gc = gc if gc is not None else build_gc(g)
    if interlacement_graph(d) != gc:
        raise ModelMismatch("interlacement graph of the chord model differs from G_c")
    violators = tuple(u for u in g.vertices if not _separates(d, side_partition(g, u, gc)))
    return ConformalityResult(not violators, violators)


@dataclass(frozen=True)
class ConsistencyWitness:
    module: FrozenSet[str]
    arc_a: Tuple[int, ...]
    arc_b: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"module": sorted(self.module), "A": list(self.arc_a), "B": list(self.arc_b)}


def _runs(marked: List[bool]) -> List[List[int]]:
    """Maximal circular runs of marked positions, each in clockwise order."""
    n = len(marked)
    if all(marked):
        return [list(range(n))]
    start = marked.index(False)
    runs: List[List[int]] = []
    current: List[int] = []
    for step in range(1, n + 1):
        i = (start + step) % n
        if marked[i]:
            current.append(i)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


def _one_end_each(d: ChordModel, positions: Iterable[int], module: FrozenSet[str]) -> bool:
    labels = [d.word[i] for i in positions]
    return len(labels) == len(module) and set(labels) == module


def is_module_consistent(d: ChordModel, module: Iterable[str]) -> Optional[ConsistencyWitness]:
    """
    Two disjoint circular arcs holding exactly one end of every module chord
    and no end of any other chord, or None if no such pair exists.
    """
    m = frozenset(module)
    for v in sorted(m):
        if v not in d.vertices:
            raise UnknownVertex(v)
    if not m:
        return None
    runs = _runs([x in m for x in d.word])
    k = len(m)
    if len(runs) == 2:
        a, b = runs
        if _one_end_each(d, a, m) and _one_end_each(d, b, m):
            return ConsistencyWitness(m, tuple(a), tuple(b))
        return None
    if len(runs) != 1:
        return None
    run = runs[0]
    # one block: split it into two consecutive halves of k ends; a full circle may start anywhere
    starts = range(len(run)) if len(run) == d.size else [0]
    for s in starts:
        order = run[s:] + run[:s]
        a, b = order[:k], order[k:]
        if _one_end_each(d, a, m) and _one_end_each(d, b, m):
            return ConsistencyWitness(m, tuple(a), tuple(b))
    return None


def is_permutation_submodel(d: ChordModel, module: Iterable[str]) -> bool:
    """Whether the module's chords all run between the same two disjoint arcs."""
    return is_module_consistent(d, module) is not None


@dataclass
class ChordClassComparison:
    normalized: List[Tuple[str, ...]] = field(default_factory=list)
    conformal: List[Tuple[str, ...]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.normalized == self.conformal

    def to_dict(self) -> dict:
        return {"holds": self.holds, "normalized": [" ".join(w) for w in self.normalized],
                "conformal": [" ".join(w) for w in self.conformal]}


def compare_chord_classes(g: Graph, config: Config = DEFAULT_CONFIG) -> ChordClassComparison:
    """Chord models of the normalized models of g next to the conformal models of G_c."""
    from arckit.enumeration import chord_classes_of_normalized_models, enumerate_conformal_models

    normalized = chord_classes_of_normalized_models(g, config)
    conformal = enumerate_conformal_models(g, config).canonical_models
    report = ChordClassComparison(normalized, list(conformal))
    if not report.holds:
        logger.warning("conformal and normalized chord classes differ on %d vertices", len(g))
    return report


def chord_classes_agree(g: Graph, config: Config = DEFAULT_CONFIG) -> bool:
    return compare_chord_classes(g, config).holds
