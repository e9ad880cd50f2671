# arckit/arc_model.py
"""
Circular-arc models and chord models, both stored as circular words.

An arc model is a clockwise word of 2n tokens: vertex v contributes its
head `v.0` and its tail `v.1`, and R(v) runs clockwise from head to tail.
A chord model is a circular word in which every vertex occurs twice.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from arckit.errors import (ModelMismatch, NormalizationFailed, ParseError,
                           PreconditionError, UnknownVertex)
from arckit.graph_core import (Graph, VertexPairRelation, classify_vertex_pair,
                               closed_neighborhood, is_d_vertex,
                               is_similar_pair)

logger = logging.getLogger(__name__)

Word = Tuple[str, ...]


def head(v: str) -> str:
    return f"{v}.0"


def tail(v: str) -> str:
    return f"{v}.1"


def split_token(token: str) -> Tuple[str, int]:
    vertex, sep, end = token.rpartition(".")
    if not sep or end not in ("0", "1") or not vertex:
        raise ValueError(f"not an arc endpoint token: {token!r}")
    return vertex, int(end)


@dataclass(frozen=True)
class CircularArcModel:
    word: Word

    def __post_init__(self):
        word = tuple(self.word)
        if not word:
            raise ValueError("empty arc model")
        if len(set(word)) != len(word):
            raise ValueError("arc endpoint tokens must be distinct")
        ends: Dict[str, List[int]] = {}
        for token in word:
            v, end = split_token(token)
            ends.setdefault(v, []).append(end)
        for v, seen in ends.items():
            if sorted(seen) != [0, 1]:
                raise ValueError(f"vertex {v!r} needs exactly one head and one tail")
        object.__setattr__(self, "word", word)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(sorted({split_token(t)[0] for t in self.word}))

    @property
    def size(self) -> int:
        return len(self.word)

    def position(self, token: str) -> int:
        try:
            return self.word.index(token)
        except ValueError:
            raise UnknownVertex(split_token(token)[0])

    def endpoints(self, v: str) -> Tuple[int, int]:
        return self.position(head(v)), self.position(tail(v))

    def covers(self, v: str, position: int) -> bool:
        """Whether endpoint position lies on R(v)."""
        h, t = self.endpoints(v)
        n = self.size
        return (position - h) % n <= (t - h) % n

    def arc_points(self, v: str) -> frozenset:
        """Points of R(v) on a circle refined to 2*size points: 2p is endpoint p, 2p+1 the gap after it."""
        h, t = self.endpoints(v)
        m = 2 * self.size
        length = (2 * t - 2 * h) % m
        return frozenset((2 * h + i) % m for i in range(length + 1))

    def rotate(self, k: int) -> "CircularArcModel":
        return CircularArcModel(rotate(self.word, k))

    def reflect(self) -> "CircularArcModel":
        return CircularArcModel(reflect_arc_word(self.word))


@dataclass(frozen=True)
class ChordModel:
    word: Word

    def __post_init__(self):
        word = tuple(self.word)
        counts: Dict[str, int] = {}
        for v in word:
            counts[v] = counts.get(v, 0) + 1
        bad = sorted(v for v, c in counts.items() if c != 2)
        if bad:
            raise ValueError(f"chord labels must occur exactly twice: {bad}")
        object.__setattr__(self, "word", word)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.word)))

    @property
    def size(self) -> int:
        return len(self.word)

    def positions(self, v: str) -> Tuple[int, int]:
        found = tuple(i for i, x in enumerate(self.word) if x == v)
        if not found:
            raise UnknownVertex(v)
        return found

    def rotate(self, k: int) -> "ChordModel":
        return ChordModel(rotate(self.word, k))

    def reflect(self) -> "ChordModel":
        return ChordModel(reflect(self.word))


class ArcPairRelation(Enum):
    INDEPENDENT = "Independent"
    FIRST_CONTAINS_SECOND = "FirstContainsSecond"
    SECOND_CONTAINS_FIRST = "SecondContainsFirst"
    STRICT_OVERLAP = "StrictOverlap"
    COVER_CIRCLE = "CoverCircle"

    def swapped(self) -> "ArcPairRelation":
        if self is ArcPairRelation.FIRST_CONTAINS_SECOND:
            return ArcPairRelation.SECOND_CONTAINS_FIRST
        if self is ArcPairRelation.SECOND_CONTAINS_FIRST:
            return ArcPairRelation.FIRST_CONTAINS_SECOND
        return self


# clockwise order of (h2, t1, t2) as seen from h1 -> relation
_ORDER_TABLE = {
    ("h2", "t1", "t2"): ArcPairRelation.STRICT_OVERLAP,
    ("h2", "t2", "t1"): ArcPairRelation.FIRST_CONTAINS_SECOND,
    ("t1", "h2", "t2"): ArcPairRelation.INDEPENDENT,
    ("t1", "t2", "h2"): ArcPairRelation.SECOND_CONTAINS_FIRST,
    ("t2", "h2", "t1"): ArcPairRelation.COVER_CIRCLE,
    ("t2", "t1", "h2"): ArcPairRelation.STRICT_OVERLAP,
}


def classify_arc_pair(m: CircularArcModel, v1: str, v2: str) -> ArcPairRelation:
    if v1 == v2:
        raise ValueError(f"pair needs two distinct arcs, got {v1!r} twice")
    h1, t1 = m.endpoints(v1)
    h2, t2 = m.endpoints(v2)
    n = m.size
    named = {"t1": (t1 - h1) % n, "h2": (h2 - h1) % n, "t2": (t2 - h1) % n}
    order = tuple(sorted(named, key=named.get))
    return _ORDER_TABLE[order]


def classify_arc_pair_by_coverage(m: CircularArcModel, v1: str, v2: str) -> ArcPairRelation:
    """Same relation computed from point sets on the refined circle."""
    a, b = m.arc_points(v1), m.arc_points(v2)
    if not a & b:
        return ArcPairRelation.INDEPENDENT
    if b <= a:
        return ArcPairRelation.FIRST_CONTAINS_SECOND
    if a <= b:
        return ArcPairRelation.SECOND_CONTAINS_FIRST
    if len(a | b) == 2 * m.size:
        return ArcPairRelation.COVER_CIRCLE
    return ArcPairRelation.STRICT_OVERLAP


def intersection_graph(m: CircularArcModel) -> Graph:
    edges = [(a, b) for a, b in combinations(m.vertices, 2)
             if classify_arc_pair(m, a, b) is not ArcPairRelation.INDEPENDENT]
    return Graph.from_edges(m.vertices, edges)


@dataclass(frozen=True)
class Violation:
    pair: Tuple[str, str]
    arc_relation: ArcPairRelation
    vertex_relation: VertexPairRelation
    expected: ArcPairRelation

    def describe(self) -> str:
        a, b = self.pair
        return (f"({a},{b}): arcs {self.arc_relation.value} but vertices "
                f"{self.vertex_relation.value} (expected {self.expected.value})")


def expected_arc_relation(g: Graph, v1: str, v2: str) -> ArcPairRelation:
    rel = classify_vertex_pair(g, v1, v2)
    if rel is VertexPairRelation.INDEPENDENT:
        return ArcPairRelation.INDEPENDENT
    if rel is VertexPairRelation.NESTED_ADJACENT:
        if closed_neighborhood(g, v2) <= closed_neighborhood(g, v1):
            return ArcPairRelation.FIRST_CONTAINS_SECOND
        return ArcPairRelation.SECOND_CONTAINS_FIRST
    if rel is VertexPairRelation.STRONGLY_ADJACENT:
        return ArcPairRelation.COVER_CIRCLE
    if rel is VertexPairRelation.STRICTLY_NOT_STRONGLY_ADJACENT:
        return ArcPairRelation.STRICT_OVERLAP
    raise PreconditionError(f"similar pair ({v1},{v2}) has no normalized arc relation")


def require_normalizable(g: Graph) -> None:
    for a, b in combinations(g.vertices, 2):
        if is_similar_pair(g, a, b):
            raise PreconditionError(f"graph has similar pair ({a},{b})")
    # a lone arc is normalized as it stands
    dominating = [v for v in g.vertices if is_d_vertex(g, v)] if len(g) > 1 else []
    if dominating:
        raise PreconditionError(f"graph has D-vertex {dominating[0]}")


def check_normalized(m: CircularArcModel, g: Graph) -> List[Violation]:
    require_normalizable(g)
    if intersection_graph(m) != g:
        raise ModelMismatch("intersection graph of the model differs from the given graph")
    violations = []
    for a, b in combinations(g.vertices, 2):
        actual = classify_arc_pair(m, a, b)
        expected = expected_arc_relation(g, a, b)
        if actual is not expected:
            violations.append(Violation((a, b), actual, classify_vertex_pair(g, a, b), expected))
    return violations


@dataclass(frozen=True)
class ArcExtension:
    """Input and output arcs of one vertex as (start, length) on a circle of fixed circumference."""
    vertex: str
    before: Tuple[Fraction, Fraction]
    after: Tuple[Fraction, Fraction]
    circumference: Fraction

    def is_extension(self) -> bool:
        (h0, len0), (h1, len1) = self.before, self.after
        return (h0 - h1) % self.circumference + len0 <= len1


class _Layout:
    """Token coordinates on a circle of circumference len(word); repairs only move endpoints outward."""

    def __init__(self, word: Word):
        self.length = Fraction(len(word))
        self.coord: Dict[str, Fraction] = {t: Fraction(i) for i, t in enumerate(word)}

    def word(self) -> Word:
        return tuple(sorted(self.coord, key=self.coord.get))

    def model(self) -> CircularArcModel:
        return CircularArcModel(self.word())

    def arc(self, v: str) -> Tuple[Fraction, Fraction]:
        h, t = self.coord[head(v)], self.coord[tail(v)]
        return h, (t - h) % self.length

    def _neighbor(self, token: str, step: int) -> str:
        order = self.word()
        return order[(order.index(token) + step) % len(order)]

    def between(self, left: str, right: str, fraction: Fraction) -> Fraction:
        a, b = self.coord[left], self.coord[right]
        gap = (b - a) % self.length
        return (a + gap * fraction) % self.length

    def move_before(self, token: str, anchor: str) -> None:
        self.coord[token] = self.between(self._neighbor(anchor, -1), anchor, Fraction(1, 2))

    def move_after(self, token: str, anchor: str) -> None:
        self.coord[token] = self.between(anchor, self._neighbor(anchor, 1), Fraction(1, 2))

    def place_pair_after(self, anchor: str, first: str, second: str) -> None:
        nxt = self._neighbor(anchor, 1)
        near = self.between(anchor, nxt, Fraction(1, 3))
        far = self.between(anchor, nxt, Fraction(2, 3))
        self.coord[first], self.coord[second] = near, far


def _repair_containment(layout: _Layout, m: CircularArcModel, small: str, big: str) -> None:
    # stretch `big` over the part of `small` it misses
    if m.covers(big, m.position(head(small))):
        layout.move_after(tail(big), tail(small))
    else:
        layout.move_before(head(big), head(small))


def _repair_cover(layout: _Layout, m: CircularArcModel, g: Graph, v1: str, v2: str) -> None:
    # f is the arc whose tail lies inside s; the uncovered stretch runs from s's tail to f's head
    f, s = (v1, v2) if m.covers(v2, m.position(tail(v1))) else (v2, v1)
    n = m.size
    t_s, h_f = m.position(tail(s)), m.position(head(f))
    anchor = tail(s)
    for step in range(1, (h_f - t_s) % n):
        token = m.word[(t_s + step) % n]
        x, end = split_token(token)
        if end == 1 and not g.adjacent(x, f):
            anchor = token
    layout.place_pair_after(anchor, head(f), tail(s))


def normalize_with_certificate(m: CircularArcModel, g: Graph) -> Tuple[CircularArcModel, Dict[str, ArcExtension]]:
    require_normalizable(g)
    if intersection_graph(m) != g:
        raise ModelMismatch("intersection graph of the model differs from the given graph")
    layout = _Layout(m.word)
    original = {v: layout.arc(v) for v in m.vertices}
    bound = 4 * len(g) ** 2
    current = m
    for repairs in range(bound + 1):
        violations = check_normalized(current, g)
        if not violations:
            break
        if repairs == bound:
            raise NormalizationFailed(f"no normal form after {bound} repairs; first open violation "
                                      f"{violations[0].describe()}")
        v = violations[0]
        a, b = v.pair
        logger.debug("normalize repair %d: %s", repairs + 1, v.describe())
        if v.arc_relation is not ArcPairRelation.STRICT_OVERLAP:
            raise NormalizationFailed(f"cannot repair by extension: {v.describe()}")
        if v.expected is ArcPairRelation.FIRST_CONTAINS_SECOND:
            _repair_containment(layout, current, b, a)
        elif v.expected is ArcPairRelation.SECOND_CONTAINS_FIRST:
            _repair_containment(layout, current, a, b)
        elif v.expected is ArcPairRelation.COVER_CIRCLE:
            _repair_cover(layout, current, g, a, b)
        else:
            raise NormalizationFailed(f"cannot repair by extension: {v.describe()}")
        current = layout.model()
        if intersection_graph(current) != g:
            raise NormalizationFailed(f"repair of {v.describe()} changed the intersection graph")
    certificate = {v: ArcExtension(v, original[v], layout.arc(v), layout.length) for v in m.vertices}
    return current, certificate


def normalize(m: CircularArcModel, g: Graph) -> CircularArcModel:
    return normalize_with_certificate(m, g)[0]


def to_chord_model(m: CircularArcModel) -> ChordModel:
    return ChordModel(tuple(split_token(t)[0] for t in m.word))


def chords_interleave(d: ChordModel, u: str, v: str) -> bool:
    a1, a2 = d.positions(u)
    b1, b2 = d.positions(v)
    return (a1 < b1 < a2) != (a1 < b2 < a2)


def interlacement_graph(d: ChordModel) -> Graph:
    edges = [(a, b) for a, b in combinations(d.vertices, 2) if chords_interleave(d, a, b)]
    return Graph.from_edges(d.vertices, edges)


def rotate(word: Sequence[str], k: int) -> Word:
    word = tuple(word)
    if not word:
        return word
    k %= len(word)
    return word[k:] + word[:k]


def reflect(word: Sequence[str]) -> Word:
    return tuple(reversed(tuple(word)))


def reflect_arc_word(word: Sequence[str]) -> Word:
    """Mirror an arc word; heads and tails trade places so arcs stay clockwise."""
    out = []
    for token in reversed(tuple(word)):
        v, end = split_token(token)
        out.append(f"{v}.{1 - end}")
    return tuple(out)


def _is_arc_word(word: Sequence[str]) -> bool:
    return bool(word) and all(t.rpartition(".")[2] in ("0", "1") and "." in t for t in word) \
        and len(set(word)) == len(word)


def _variants(word: Word) -> Iterable[Word]:
    mirrored = reflect_arc_word(word) if _is_arc_word(word) else reflect(word)
    for base in (word, mirrored):
        for k in range(len(base)):
            yield rotate(base, k)


def _relabel(word: Word) -> Word:
    names: Dict[str, str] = {}
    out = []
    for token in word:
        if _is_arc_word(word):
            v, end = split_token(token)
            names.setdefault(v, str(len(names)))
            out.append(f"{names[v]}.{end}")
        else:
            names.setdefault(token, str(len(names)))
            out.append(names[token])
    return tuple(out)


def _sort_key(word: Word):
    return tuple((len(t), t) for t in word)


def canonical_form(word: Sequence[str]) -> Word:
    """Least rotation/reflection of the word after first-occurrence relabelling."""
    return min((_relabel(w) for w in _variants(tuple(word))), key=_sort_key)


def canonical_form_labeled(word: Sequence[str]) -> Word:
    """Least rotation/reflection keeping vertex labels."""
    return min(_variants(tuple(word)))


def parse_model(text: str, source: str = "<input>") -> Union[CircularArcModel, ChordModel]:
    tokens: List[str] = []
    for raw in text.splitlines():
        tokens.extend(raw.split("#", 1)[0].split())
    if not tokens:
        raise ParseError("empty model", None, source)
    try:
        if all("." in t and t.rpartition(".")[2] in ("0", "1") for t in tokens):
            return CircularArcModel(tuple(tokens))
        return ChordModel(tuple(tokens))
    except (ValueError, UnknownVertex) as e:
        raise ParseError(str(e), None, source)


def format_model(m: Union[CircularArcModel, ChordModel]) -> str:
    return " ".join(m.word) + "\n"
