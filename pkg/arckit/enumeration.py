# arckit/enumeration.py
"""
Brute-force oracles: every chord model of a circle graph, every conformal
model, every normalized model of a circular-arc graph.

Words are built left to right by backtracking. The first token is pinned
to position 0 to quotient rotations; reflections are folded in when the
results are collected, through canonical_form_labeled. With more than one
worker the subtrees below each two-token prefix run in a process pool and
are merged by sorting, so output never depends on the worker count.
"""
import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from multiprocessing import Pool
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from arckit.arc_model import (ArcPairRelation, ChordModel, CircularArcModel, Word,
                              canonical_form_labeled, classify_arc_pair,
                              expected_arc_relation, head, require_normalizable,
                              rotate, split_token, tail, to_chord_model)
from arckit.config import DEFAULT_CONFIG, Config
from arckit.conformal import build_gc, is_conformal
from arckit.errors import SizeCapExceeded
from arckit.graph_core import Graph, has_d_vertex, has_similar_pair

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumerationResult:
    canonical_models: Tuple[Word, ...]
    search_space_size: int
    cap_hit: bool = False
    # one representative per rotation class, labels kept
    rotation_classes: Tuple[Word, ...] = ()

    @property
    def count(self) -> int:
        return len(self.canonical_models)

    @property
    def labeled_count(self) -> int:
        return len(self.rotation_classes)

    def to_dict(self, count_only: bool = False) -> dict:
        out = {"count": self.count, "labeled_count": self.labeled_count,
               "search_space_size": self.search_space_size, "cap_hit": self.cap_hit}
        if not count_only:
            out["models"] = [" ".join(w) for w in self.canonical_models]
        return out


def _check_size(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise SizeCapExceeded(what, n, cap)
    if n == 0:
        raise ValueError(f"{what} of an empty graph")


def _least_rotation(word: Word) -> Word:
    return min(rotate(word, k) for k in range(len(word)))


def _collect(words: Iterable[Word], nodes: int) -> EnumerationResult:
    words = list(words)
    canonical = sorted({canonical_form_labeled(w) for w in words})
    rotations = sorted({_least_rotation(w) for w in words})
    return EnumerationResult(tuple(canonical), nodes, False, tuple(rotations))


def _run(search, items: List[tuple], workers: int) -> Tuple[List[Word], int]:
    if workers > 1 and len(items) > 1:
        with Pool(processes=min(workers, len(items))) as pool:
            results = pool.map(search, items)
    else:
        results = [search(item) for item in items]
    words: List[Word] = []
    nodes = 0
    for found, examined in results:
        words.extend(found)
        nodes += examined
    return sorted(words), nodes


class _ChordSearch:
    """A chord may close only when the labels seen once since it opened are exactly its crossings."""

    def __init__(self, vertices: Sequence[str], edges: Sequence[Tuple[str, str]]):
        self.gc = Graph.from_edges(vertices, edges)
        self.word: List[str] = []
        self.opened: Dict[str, int] = {}
        self.closed: Set[str] = set()
        self.found: List[Word] = []
        self.nodes = 0

    def _can_close(self, v: str) -> bool:
        inside = self.word[self.opened[v] + 1:]
        once = {x for x in inside if inside.count(x) == 1}
        return once == self.gc.neighbors(v)

    def _choices(self) -> List[str]:
        return [v for v in self.gc.vertices
                if v not in self.closed and (v not in self.opened or self._can_close(v))]

    def _push(self, v: str) -> None:
        if v in self.opened:
            self.closed.add(v)
        else:
            self.opened[v] = len(self.word)
        self.word.append(v)

    def _pop(self) -> None:
        v = self.word.pop()
        if v in self.closed:
            self.closed.discard(v)
        else:
            del self.opened[v]

    def _extend(self) -> None:
        self.nodes += 1
        if len(self.word) == 2 * len(self.gc):
            self.found.append(tuple(self.word))
            return
        for v in self._choices():
            self._push(v)
            self._extend()
            self._pop()

    def run(self, prefix: Sequence[str]) -> Tuple[List[Word], int]:
        for v in prefix:
            if v not in self._choices():
                return [], self.nodes
            self._push(v)
        self._extend()
        return self.found, self.nodes


def _chord_subtree(item: tuple) -> Tuple[List[Word], int]:
    vertices, edges, prefix = item
    return _ChordSearch(vertices, edges).run(prefix)


def enumerate_chord_models(gc: Graph, config: Config = DEFAULT_CONFIG) -> EnumerationResult:
    """All chord words whose interlacement graph is gc, up to rotation and reflection."""
    _check_size(len(gc), config.chord_enum_cap, "chord model enumeration")
    first = gc.vertices[0]
    edges = gc.sorted_edges()
    items = [(gc.vertices, edges, (first, v)) for v in gc.vertices]
    words, nodes = _run(_chord_subtree, items, config.workers)
    result = _collect(words, nodes)
    logger.info("chord models of %d-vertex graph: %d classes, %d rotation classes, %d nodes",
                len(gc), result.count, result.labeled_count, nodes)
    return result


@lru_cache(maxsize=None)
def _feasible_orders() -> Dict[ArcPairRelation, FrozenSet[Tuple[str, ...]]]:
    """Every prefix of a linear order of (h1, t1, h2, t2) that can still end in each relation."""
    names = {"h1": "a.0", "t1": "a.1", "h2": "b.0", "t2": "b.1"}
    table: Dict[ArcPairRelation, Set[Tuple[str, ...]]] = {}
    for order in permutations(names):
        rel = classify_arc_pair(CircularArcModel(tuple(names[r] for r in order)), "a", "b")
        for k in range(len(order) + 1):
            table.setdefault(rel, set()).add(order[:k])
    return {rel: frozenset(prefixes) for rel, prefixes in table.items()}


class _ArcSearch:
    """Places arc endpoint tokens; each pair's placed tokens must still be able to reach its expected relation."""

    def __init__(self, vertices: Sequence[str], expected: Dict[Tuple[str, str], ArcPairRelation]):
        self.vertices = tuple(vertices)
        self.expected = expected
        self.orders = _feasible_orders()
        self.tokens = tuple(t for v in self.vertices for t in (head(v), tail(v)))
        self.placed: Dict[str, int] = {}
        self.word: List[str] = []
        self.found: List[Word] = []
        self.nodes = 0

    def _pair_ok(self, a: str, b: str) -> bool:
        roles = {head(a): "h1", tail(a): "t1", head(b): "h2", tail(b): "t2"}
        seen = sorted((self.placed[t], r) for t, r in roles.items() if t in self.placed)
        return tuple(r for _, r in seen) in self.orders[self.expected[(a, b)]]

    def _fits(self, token: str) -> bool:
        x, _ = split_token(token)
        for y in self.vertices:
            if y != x and not self._pair_ok(*sorted((x, y))):
                return False
        return True

    def _push(self, token: str) -> bool:
        self.placed[token] = len(self.word)
        self.word.append(token)
        if self._fits(token):
            return True
        self._pop()
        return False

    def _pop(self) -> None:
        del self.placed[self.word.pop()]

    def _extend(self) -> None:
        self.nodes += 1
        if len(self.word) == len(self.tokens):
            self.found.append(tuple(self.word))
            return
        for token in self.tokens:
            if token not in self.placed and self._push(token):
                self._extend()
                self._pop()

    def run(self, prefix: Sequence[str]) -> Tuple[List[Word], int]:
        for token in prefix:
            if token in self.placed or not self._push(token):
                return [], self.nodes
        self._extend()
        return self.found, self.nodes


def _arc_subtree(item: tuple) -> Tuple[List[Word], int]:
    vertices, expected, prefix = item
    return _ArcSearch(vertices, expected).run(prefix)


def enumerate_normalized_models(g: Graph, config: Config = DEFAULT_CONFIG) -> EnumerationResult:
    """All normalized arc words of g, up to rotation and reflection."""
    require_normalizable(g)
    _check_size(len(g), config.arc_enum_cap, "normalized model enumeration")
    expected = {(a, b): expected_arc_relation(g, a, b) for a, b in combinations(g.vertices, 2)}
    first = head(g.vertices[0])
    rest = [t for v in g.vertices for t in (head(v), tail(v)) if t != first]
    items = [(g.vertices, expected, (first, t)) for t in rest] if rest else [(g.vertices, expected, (first,))]
    words, nodes = _run(_arc_subtree, items, config.workers)
    result = _collect(words, nodes)
    logger.info("normalized models of %d-vertex graph: %d classes, %d labeled, %d nodes",
                len(g), result.count, result.labeled_count, nodes)
    return result


def enumerate_conformal_models(g: Graph, config: Config = DEFAULT_CONFIG) -> EnumerationResult:
    """Chord models of G_c that are conformal with respect to g."""
    require_normalizable(g)
    gc = build_gc(g)
    chords = enumerate_chord_models(gc, config)
    keep = [w for w in chords.rotation_classes if is_conformal(ChordModel(w), g, gc)]
    result = _collect(keep, chords.search_space_size)
    logger.info("conformal models: %d of %d chord classes", result.count, chords.count)
    return result


def chord_classes_of_normalized_models(g: Graph, config: Config = DEFAULT_CONFIG) -> List[Word]:
    normalized = enumerate_normalized_models(g, config)
    return sorted({canonical_form_labeled(to_chord_model(CircularArcModel(w)).word)
                   for w in normalized.canonical_models})


def unique_up_to_reflection(result: EnumerationResult) -> bool:
    return result.count == 1


def random_arc_word(n: int, rng: random.Random) -> Word:
    tokens = [t for i in range(n) for t in (head(f"v{i}"), tail(f"v{i}"))]
    rng.shuffle(tokens)
    return tuple(tokens)


def sample_normalizable(n: int, rng: random.Random, attempts: int = 200
                        ) -> Optional[Tuple[CircularArcModel, Graph]]:
    """A random arc model whose intersection graph has no similar pair and no D-vertex."""
    for _ in range(attempts):
        model = CircularArcModel(random_arc_word(n, rng))
        g = _fast_intersection_graph(model.word)
        if not has_similar_pair(g) and not has_d_vertex(g):
            return model, g
    return None


def _fast_intersection_graph(word: Word) -> Graph:
    m = len(word)
    pos = {t: i for i, t in enumerate(word)}
    verts = sorted({split_token(t)[0] for t in word})
    span = {v: (pos[head(v)], (pos[tail(v)] - pos[head(v)]) % m) for v in verts}
    edges = []
    for a, b in combinations(verts, 2):
        (ha, la), (hb, lb) = span[a], span[b]
        if (hb - ha) % m <= la or (ha - hb) % m <= lb:
            edges.append((a, b))
    return Graph.from_edges(verts, edges)


def circular_arc_graphs(n: int, normalizable_only: bool = True) -> Iterator[Graph]:
    """Every circular-arc graph on n vertices up to isomorphism, from an exhaustive arc-word scan."""
    if n < 1:
        return
    names = [f"v{i}" for i in range(n)]
    first = head(names[0])
    rest = [t for v in names for t in (head(v), tail(v)) if t != first]
    seen_edges: Set[FrozenSet] = set()
    kept: Dict[Tuple[int, ...], List[nx.Graph]] = {}
    for order in permutations(rest):
        g = _fast_intersection_graph((first,) + order)
        if g.edges in seen_edges:
            continue
        seen_edges.add(g.edges)
        if normalizable_only and (has_similar_pair(g) or has_d_vertex(g)):
            continue
        nxg = g.to_networkx()
        key = tuple(sorted(d for _, d in nxg.degree()))
        bucket = kept.setdefault(key, [])
        if any(nx.is_isomorphic(nxg, other) for other in bucket):
            continue
        bucket.append(nxg)
        yield g

