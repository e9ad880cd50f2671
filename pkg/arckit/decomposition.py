# arckit/decomposition.py
"""
Modular decomposition (S/P/N trees) and join decomposition.

Exhaustive scans serve as oracles on small graphs; the closure searches
used by the tree builder and the join finder stay polynomial.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple

from arckit.config import DEFAULT_CONFIG
from arckit.errors import InvalidJoin, SizeCapExceeded
from arckit.graph_core import (Graph, complement, connected_components,
                               induced_subgraph, is_connected)

logger = logging.getLogger(__name__)

MARKER_1 = "$m1"
MARKER_2 = "$m2"


class NodeLabel(Enum):
    SERIES = "S"
    PARALLEL = "P"
    NEIGHBORHOOD = "N"
    LEAF = "L"


@dataclass(frozen=True)
class MDNode:
    label: NodeLabel
    vertices: FrozenSet[str]
    children: Tuple["MDNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.label is NodeLabel.LEAF

    def walk(self) -> Iterable["MDNode"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"leaf": next(iter(self.vertices))}
        return {"label": self.label.value, "vertices": sorted(self.vertices),
                "children": [c.to_dict() for c in self.children]}


@dataclass(frozen=True)
class MDTree:
    root: MDNode

    def nodes(self) -> List[MDNode]:
        return list(self.root.walk())

    def render(self) -> str:
        lines: List[str] = []

        def visit(node: MDNode, depth: int) -> None:
            pad = "  " * depth
            if node.is_leaf:
                lines.append(f"{pad}{next(iter(node.vertices))}")
            else:
                lines.append(f"{pad}{node.label.value} {{{', '.join(sorted(node.vertices))}}}")
                for child in node.children:
                    visit(child, depth + 1)

        visit(self.root, 0)
        return "\n".join(lines)


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if len(g) > cap:
        raise SizeCapExceeded(what, len(g), cap)


def is_module(g: Graph, module: Iterable[str]) -> bool:
    m = frozenset(module)
    g.require(*sorted(m))
    for v in g.vertex_set - m:
        seen = g.neighbors(v) & m
        if seen and seen != m:
            return False
    return True


def is_trivial_module(g: Graph, module: FrozenSet[str]) -> bool:
    return len(module) <= 1 or module == g.vertex_set


def all_modules(g: Graph, cap: int = DEFAULT_CONFIG.module_scan_cap) -> List[FrozenSet[str]]:
    """Every non-empty module, found by scanning all vertex subsets as bitmasks."""
    _check_cap(g, cap, "module scan")
    verts = g.vertices
    n = len(verts)
    index = {v: i for i, v in enumerate(verts)}
    nbr = [sum(1 << index[w] for w in g.neighbors(v)) for v in verts]
    found = []
    for mask in range(1, 1 << n):
        ok = True
        outside = ((1 << n) - 1) & ~mask
        i = 0
        while outside:
            if outside & 1:
                seen = nbr[i] & mask
                if seen and seen != mask:
                    ok = False
                    break
            outside >>= 1
            i += 1
        if ok:
            found.append(frozenset(verts[j] for j in range(n) if mask >> j & 1))
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def module_closure(g: Graph, seed: Iterable[str]) -> FrozenSet[str]:
    """Smallest module containing the seed."""
    m: Set[str] = set(seed)
    g.require(*sorted(m))
    changed = True
    while changed:
        changed = False
        for v in g.vertices:
            if v in m:
                continue
            seen = g.neighbors(v) & m
            if seen and len(seen) != len(m):
                m.add(v)
                changed = True
    return frozenset(m)


def nontrivial_modules(g: Graph, cap: int = DEFAULT_CONFIG.module_scan_cap) -> List[FrozenSet[str]]:
    return [m for m in all_modules(g, cap) if not is_trivial_module(g, m)]


def is_s_inseparable(g: Graph) -> bool:
    """No module other than V and singletons; checks the closure of every vertex pair."""
    return all(module_closure(g, pair) == g.vertex_set for pair in combinations(g.vertices, 2))


def is_s_inseparable_exhaustive(g: Graph, cap: int = DEFAULT_CONFIG.module_scan_cap) -> bool:
    return not nontrivial_modules(g, cap)


def module_type(g: Graph, module: Iterable[str]) -> NodeLabel:
    sub = induced_subgraph(g, module)
    if len(sub) == 1:
        return NodeLabel.LEAF
    if not is_connected(sub):
        return NodeLabel.PARALLEL
    if not is_connected(complement(sub)):
        return NodeLabel.SERIES
    return NodeLabel.NEIGHBORHOOD


def maximal_modules(g: Graph) -> List[FrozenSet[str]]:
    """Maximal modules other than V, for a graph whose graph and complement are both connected."""
    parts: List[FrozenSet[str]] = []
    covered: Set[str] = set()
    for v in g.vertices:
        if v in covered:
            continue
        part = {v}
        for w in g.vertices:
            if w != v:
                closure = module_closure(g, (v, w))
                if closure != g.vertex_set:
                    part |= closure
        covered |= part
        parts.append(frozenset(part))
    return sorted(parts, key=min)


def _build_node(g: Graph) -> MDNode:
    verts = g.vertex_set
    if len(verts) == 1:
        return MDNode(NodeLabel.LEAF, verts)
    components = connected_components(g)
    if len(components) > 1:
        label, parts = NodeLabel.PARALLEL, components
    else:
        co_components = connected_components(complement(g))
        if len(co_components) > 1:
            label, parts = NodeLabel.SERIES, co_components
        else:
            label, parts = NodeLabel.NEIGHBORHOOD, maximal_modules(g)
    children = tuple(_build_node(induced_subgraph(g, p)) for p in parts)
    return MDNode(label, verts, children)


def build_md_tree(g: Graph, cap: int = DEFAULT_CONFIG.module_scan_cap) -> MDTree:
    if not len(g):
        raise ValueError("modular decomposition of an empty graph")
    _check_cap(g, cap, "modular decomposition")
    tree = MDTree(_build_node(g))
    logger.debug("MD tree of %d vertices: root %s", len(g), tree.root.label.value)
    return tree


@dataclass(frozen=True)
class Join:
    v0: FrozenSet[str]
    v1: FrozenSet[str]
    v2: FrozenSet[str]
    v3: FrozenSet[str]

    @classmethod
    def of(cls, v0: Iterable[str], v1: Iterable[str], v2: Iterable[str], v3: Iterable[str]) -> "Join":
        return cls(frozenset(v0), frozenset(v1), frozenset(v2), frozenset(v3))

    @property
    def parts(self) -> Tuple[FrozenSet[str], ...]:
        return self.v0, self.v1, self.v2, self.v3

    def to_dict(self) -> dict:
        return {f"V{i}": sorted(p) for i, p in enumerate(self.parts)}


def join_problems(g: Graph, j: Join) -> List[str]:
    problems = []
    parts = j.parts
    if sum(len(p) for p in parts) != len(g) or frozenset().union(*parts) != g.vertex_set:
        problems.append("parts do not partition V")
    if len(j.v0 | j.v1) < 2 or len(j.v2 | j.v3) < 2:
        problems.append("each side needs at least two vertices")
    for a in j.v1:
        for b in j.v2:
            if not g.adjacent(a, b):
                problems.append(f"missing V1-V2 edge {a}-{b}")
    for a, b in g.sorted_edges():
        for x, y in ((a, b), (b, a)):
            if x in j.v0 and y in (j.v2 | j.v3):
                problems.append(f"edge {x}-{y} between V0 and V2+V3")
            if x in j.v3 and y in (j.v0 | j.v1):
                problems.append(f"edge {x}-{y} between V0+V1 and V3")
    return problems


def is_valid_join(g: Graph, j: Join) -> bool:
    return not join_problems(g, j)


def _join_from_side(g: Graph, side: FrozenSet[str]) -> Optional[Join]:
    rest = g.vertex_set - side
    v1 = frozenset(x for x in side if g.neighbors(x) & rest)
    v2 = frozenset(y for y in rest if g.neighbors(y) & side)
    j = Join(side - v1, v1, v2, rest - v2)
    return j if is_valid_join(g, j) else None


def find_join(g: Graph, cap: int = DEFAULT_CONFIG.join_scan_cap) -> Optional[Join]:
    """
    Seeded closure: fix a vertex y on the far side and two seeds on the near
    side; any far vertex that neither agrees with y on the near side nor avoids
    it entirely is forced across, until the cut is a split or too small.
    """
    _check_cap(g, cap, "join search")
    for y in g.vertices:
        for seed in combinations([v for v in g.vertices if v != y], 2):
            side = set(seed)
            changed = True
            while changed and len(g) - len(side) >= 2:
                changed = False
                pattern = g.neighbors(y) & side
                for z in g.vertices:
                    if z in side or z == y:
                        continue
                    seen = g.neighbors(z) & side
                    if seen and seen != pattern:
                        side.add(z)
                        changed = True
            if len(g) - len(side) < 2:
                continue
            j = _join_from_side(g, frozenset(side))
            if j is not None:
                return j
    return None


def find_join_exhaustive(g: Graph, cap: int = 8) -> Optional[Join]:
    """Raw 4^n scan over labelled partitions."""
    _check_cap(g, cap, "exhaustive join scan")
    verts = g.vertices
    for labels in product(range(4), repeat=len(verts)):
        parts = [frozenset(v for v, k in zip(verts, labels) if k == i) for i in range(4)]
        j = Join(*parts)
        if is_valid_join(g, j):
            return j
    return None


def is_j_inseparable(g: Graph, cap: int = DEFAULT_CONFIG.join_scan_cap) -> bool:
    return find_join(g, cap) is None


@dataclass(frozen=True)
class JoinDecomposition:
    h1: Graph
    h2: Graph
    marker1: str = MARKER_1
    marker2: str = MARKER_2


def _with_marker(g: Graph, side: FrozenSet[str], attach: FrozenSet[str], marker: str) -> Graph:
    h = induced_subgraph(g, side)
    return Graph.from_edges(h.vertices + (marker,), h.sorted_edges() + [(marker, v) for v in sorted(attach)])


def decompose_by_join(g: Graph, j: Join, marker1: str = MARKER_1, marker2: str = MARKER_2) -> JoinDecomposition:
    """
    H1 is G[V0 + V1] plus marker1 adjacent to exactly V1; H2 is G[V2 + V3]
    plus marker2 adjacent to exactly V2.

    A marker may instead carry the name of a vertex from the far middle part
    (marker1 from V2, marker2 from V1): such a vertex sees exactly the near
    middle part, so H1 is then the induced subgraph on V0 + V1 + {marker1}.
    """
    problems = join_problems(g, j)
    if problems:
        raise InvalidJoin("; ".join(problems))
    if marker1 in g and marker1 not in j.v2:
        raise InvalidJoin(f"marker {marker1!r} names a vertex outside V2")
    if marker2 in g and marker2 not in j.v1:
        raise InvalidJoin(f"marker {marker2!r} names a vertex outside V1")
    h1 = _with_marker(g, j.v0 | j.v1, j.v1, marker1)
    h2 = _with_marker(g, j.v2 | j.v3, j.v2, marker2)
    logger.debug("join split %d vertices into H1 (%d) and H2 (%d)", len(g), len(h1), len(h2))
    return JoinDecomposition(h1, h2, marker1, marker2)


def recompose(parts: JoinDecomposition) -> Graph:
    """Glue H1 and H2 back along their markers."""
    v1 = parts.h1.neighbors(parts.marker1)
    v2 = parts.h2.neighbors(parts.marker2)
    keep1 = [e for e in parts.h1.sorted_edges() if parts.marker1 not in e]
    keep2 = [e for e in parts.h2.sorted_edges() if parts.marker2 not in e]
    verts = [v for v in parts.h1.vertices if v != parts.marker1] + \
            [v for v in parts.h2.vertices if v != parts.marker2]
    return Graph.from_edges(verts, keep1 + keep2 + [(a, b) for a in sorted(v1) for b in sorted(v2)])
