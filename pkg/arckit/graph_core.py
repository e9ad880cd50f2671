# arckit/graph_core.py
"""
Simple undirected graphs with string-labelled vertices, closed
neighbourhoods and the vertex-pair relations everything else builds on.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx

from arckit.errors import ParseError, UnknownVertex

logger = logging.getLogger(__name__)

Edge = FrozenSet[str]


@dataclass(frozen=True)
class Graph:
    vertices: Tuple[str, ...]
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        edges = frozenset(frozenset(e) for e in self.edges)
        vset = set(verts)
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"self-loop or malformed edge: {sorted(e)}")
            for v in e:
                if v not in vset:
                    raise UnknownVertex(v)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Tuple[str, str]] = ()) -> "Graph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @cached_property
    def _adjacency(self) -> Dict[str, FrozenSet[str]]:
        adj: Dict[str, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(n) for v, n in adj.items()}

    @cached_property
    def vertex_set(self) -> FrozenSet[str]:
        return frozenset(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    def require(self, *vs: str) -> None:
        for v in vs:
            if v not in self.vertex_set:
                raise UnknownVertex(v)

    def neighbors(self, v: str) -> FrozenSet[str]:
        """Open neighbourhood."""
        self.require(v)
        return self._adjacency[v]

    def adjacent(self, a: str, b: str) -> bool:
        return b in self.neighbors(a)

    def sorted_edges(self) -> List[Tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.sorted_edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        return cls.from_edges((str(v) for v in g.nodes), ((str(a), str(b)) for a, b in g.edges))


class VertexPairRelation(Enum):
    INDEPENDENT = "Independent"
    NESTED_ADJACENT = "NestedAdjacent"
    STRICTLY_NOT_STRONGLY_ADJACENT = "StrictlyNotStronglyAdjacent"
    STRONGLY_ADJACENT = "StronglyAdjacent"
    SIMILAR = "Similar"


def closed_neighborhood(g: Graph, v: str) -> FrozenSet[str]:
    return g.neighbors(v) | {v}


def is_similar_pair(g: Graph, v1: str, v2: str) -> bool:
    """Twins: N(v1) - {v2} == N(v2) - {v1}, on open neighbourhoods, adjacent or not."""
    g.require(v1, v2)
    return g.neighbors(v1) - {v2} == g.neighbors(v2) - {v1}


def is_d_vertex(g: Graph, v: str) -> bool:
    return closed_neighborhood(g, v) == g.vertex_set


def _distinct_pair(g: Graph, v1: str, v2: str) -> None:
    g.require(v1, v2)
    if v1 == v2:
        raise ValueError(f"pair needs two distinct vertices, got {v1!r} twice")


def is_strictly_adjacent(g: Graph, v1: str, v2: str) -> bool:
    _distinct_pair(g, v1, v2)
    if not g.adjacent(v1, v2):
        return False
    n1, n2 = closed_neighborhood(g, v1), closed_neighborhood(g, v2)
    return not (n1 <= n2 or n2 <= n1)


def is_strongly_adjacent(g: Graph, v1: str, v2: str) -> bool:
    if not is_strictly_adjacent(g, v1, v2):
        return False
    n1, n2 = closed_neighborhood(g, v1), closed_neighborhood(g, v2)
    return (all(closed_neighborhood(g, w) <= n2 for w in g.vertex_set - n1)
            and all(closed_neighborhood(g, w) <= n1 for w in g.vertex_set - n2))


def classify_vertex_pair(g: Graph, v1: str, v2: str) -> VertexPairRelation:
    _distinct_pair(g, v1, v2)
    if not g.adjacent(v1, v2):
        return VertexPairRelation.INDEPENDENT
    if is_similar_pair(g, v1, v2):
        return VertexPairRelation.SIMILAR
    n1, n2 = closed_neighborhood(g, v1), closed_neighborhood(g, v2)
    if n1 <= n2 or n2 <= n1:
        return VertexPairRelation.NESTED_ADJACENT
    if is_strongly_adjacent(g, v1, v2):
        return VertexPairRelation.STRONGLY_ADJACENT
    return VertexPairRelation.STRICTLY_NOT_STRONGLY_ADJACENT


def has_similar_pair(g: Graph) -> bool:
    return any(is_similar_pair(g, a, b) for a, b in combinations(g.vertices, 2))


def has_d_vertex(g: Graph) -> bool:
    return any(is_d_vertex(g, v) for v in g.vertices)


def induced_subgraph(g: Graph, vertices: Iterable[str]) -> Graph:
    keep = frozenset(vertices)
    g.require(*sorted(keep))
    return Graph(tuple(sorted(keep)), frozenset(e for e in g.edges if e <= keep))


def remove_vertices(g: Graph, vertices: Iterable[str]) -> Graph:
    drop = frozenset(vertices)
    g.require(*sorted(drop))
    return induced_subgraph(g, g.vertex_set - drop)


def complement(g: Graph) -> Graph:
    return Graph.from_networkx(nx.complement(g.to_networkx())) if len(g) else g


def connected_components(g: Graph) -> List[FrozenSet[str]]:
    comps = [frozenset(c) for c in nx.connected_components(g.to_networkx())]
    return sorted(comps, key=min)


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def parse_graph(text: str, source: str = "<input>") -> Graph:
    """Parse the `vertices:` / `edge:` text format."""
    vertices: List[str] = []
    edges: List[Tuple[str, str]] = []
    seen_vertices = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        tokens = rest.split()
        if key == "vertices":
            if seen_vertices:
                raise ParseError("duplicate 'vertices:' line", lineno, source)
            seen_vertices = True
            vertices = tokens
            if len(set(vertices)) != len(vertices):
                raise ParseError("duplicate vertex label", lineno, source)
        elif key == "edge":
            if not seen_vertices:
                raise ParseError("'edge:' before 'vertices:'", lineno, source)
            if len(tokens) != 2 or tokens[0] == tokens[1]:
                raise ParseError(f"malformed edge {rest.strip()!r}", lineno, source)
            for t in tokens:
                if t not in vertices:
                    raise ParseError(f"edge endpoint {t!r} is not a declared vertex", lineno, source)
            edges.append((tokens[0], tokens[1]))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, source)
    if not seen_vertices:
        raise ParseError("missing 'vertices:' line", None, source)
    return Graph.from_edges(vertices, edges)


def format_graph(g: Graph) -> str:
    lines = ["vertices: " + " ".join(g.vertices)]
    lines.extend(f"edge: {a} {b}" for a, b in g.sorted_edges())
    return "\n".join(lines) + "\n"
