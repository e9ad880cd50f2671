# arckit/claims.py
"""
Fixture graphs and models, and one verifier per refuted claim.

Fixtures are data files under arckit/fixtures. Every verifier re-checks
the combinatorial facts a fixture is supposed to have, so a mistyped
fixture shows up as FixtureInvalid instead of a silent pass.
"""
import json
import logging
import random
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from arckit.arc_model import (ChordModel, CircularArcModel, Word, canonical_form_labeled,
                              check_normalized, head, intersection_graph,
                              parse_model, rotate, split_token, tail,
                              to_chord_model)
from arckit.config import DEFAULT_CONFIG, Config
from arckit.conformal import build_gc, is_conformal, is_module_consistent, compare_chord_classes
from arckit.decomposition import (Join, NodeLabel, build_md_tree, decompose_by_join,
                                  is_module, is_s_inseparable, is_trivial_module,
                                  join_problems)
from arckit.enumeration import (enumerate_chord_models, enumerate_conformal_models,
                                enumerate_normalized_models, sample_normalizable,
                                unique_up_to_reflection)
from arckit.errors import FixtureInvalid, SizeCapExceeded
from arckit.graph_core import (Graph, VertexPairRelation, classify_vertex_pair,
                               connected_components, induced_subgraph, parse_graph,
                               remove_vertices)

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).parent / "fixtures"

CLAIM_IDS = ("A", "B", "CE1", "H1")


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    model: Optional[CircularArcModel] = None
    annotations: Dict[str, FrozenSet[str]] = field(default_factory=dict)

    def part(self, key: str) -> FrozenSet[str]:
        try:
            return self.annotations[key]
        except KeyError:
            raise FixtureInvalid(f"fixture {self.name} has no annotation {key!r}")

    def vertex(self, key: str) -> str:
        (v,) = self.part(key)
        return v

    def validate(self) -> "Fixture":
        for key, vs in self.annotations.items():
            missing = sorted(vs - self.graph.vertex_set)
            if missing:
                raise FixtureInvalid(f"fixture {self.name}: annotation {key} names unknown vertices {missing}")
        if self.model is None:
            return self
        if intersection_graph(self.model) != self.graph:
            raise FixtureInvalid(f"fixture {self.name}: model does not realise the graph")
        violations = check_normalized(self.model, self.graph)
        if violations:
            raise FixtureInvalid(f"fixture {self.name}: model not normalized, "
                                 f"{len(violations)} violation(s), first {violations[0].describe()}")
        return self


def _read(name: str) -> str:
    with open(FIXTURE_DIR / name, "r", encoding="utf-8") as f:
        return f.read()


def _manifest(name: str) -> Dict[str, Any]:
    try:
        return json.loads(_read(f"{name}.json"))
    except (OSError, json.JSONDecodeError) as e:
        raise FixtureInvalid(f"cannot load fixture {name}: {e}")


def _annotations(data: Dict[str, Any]) -> Dict[str, FrozenSet[str]]:
    return {k: frozenset(v) for k, v in data.get("annotations", {}).items()}


def load_fixture(name: str) -> Fixture:
    data = _manifest(name)
    graph = parse_graph(_read(data["graph"]), source=data["graph"])
    model = parse_model(_read(data["model"]), source=data["model"]) if data.get("model") else None
    if model is not None and not isinstance(model, CircularArcModel):
        raise FixtureInvalid(f"fixture {name}: {data['model']} is not an arc model")
    return Fixture(name, graph, model, _annotations(data)).validate()


def splice_copies(host: Sequence[str], guest: Sequence[str], distinguished: str,
                  copies: Sequence[str]) -> Word:
    """
    Replace the head of every host arc x in `copies` by a renamed copy of the
    guest word, rotated so the distinguished tail comes last and then dropped.
    The distinguished arc of the copy takes over x; the host keeps x's tail.
    """
    k = list(guest).index(tail(distinguished))
    block = rotate(guest, k + 1)[:-1]
    for token in block:
        v, _ = split_token(token)
        if not v.startswith(distinguished):
            raise FixtureInvalid(f"guest vertex {v!r} does not extend {distinguished!r}")
    out: List[str] = []
    for token in host:
        v, end = split_token(token)
        if end == 0 and v in copies:
            for g_token in block:
                g_v, g_end = split_token(g_token)
                out.append(f"{v}{g_v[len(distinguished):]}.{g_end}")
        else:
            out.append(token)
    return tuple(out)


def fixture_gs() -> Fixture:
    return load_fixture("gs")


def fixture_claim_a() -> Fixture:
    data = _manifest("claim_a")
    recipe = data["splice"]
    guest = fixture_gs()
    word = splice_copies(recipe["host"].split(), guest.model.word, recipe["distinguished"], recipe["copies"])
    model = CircularArcModel(word)
    return Fixture("claim_a", intersection_graph(model), model, _annotations(data)).validate()


def fixture_claim_b() -> Fixture:
    return load_fixture("claim_b")


def fixture_ce1() -> Fixture:
    return load_fixture("ce1")


@dataclass(frozen=True)
class Premise:
    text: str
    ok: bool
    evidence: Any = None

    def to_dict(self) -> dict:
        return {"text": self.text, "ok": self.ok, "evidence": self.evidence}


@dataclass
class ClaimReport:
    claim: str
    premises: List[Premise] = field(default_factory=list)
    refuted: bool = False
    elapsed_ms: float = 0.0
    # H1 is a property expected to survive the check
    expect_refuted: bool = True

    @property
    def premises_hold(self) -> bool:
        return all(p.ok for p in self.premises)

    @property
    def verified(self) -> bool:
        return self.premises_hold and self.refuted == self.expect_refuted

    def check(self, text: str, ok: bool, evidence: Any = None) -> bool:
        self.premises.append(Premise(text, bool(ok), evidence))
        if not ok:
            logger.warning("claim %s: premise failed: %s", self.claim, text)
        return bool(ok)

    def to_dict(self, timing: bool = True) -> dict:
        out = {"claim": self.claim, "premises": [p.to_dict() for p in self.premises],
               "refuted": self.refuted, "verified": self.verified}
        if timing:
            out["elapsed_ms"] = round(self.elapsed_ms, 1)
        return out

    def render(self) -> str:
        lines = [f"claim {self.claim}: {'refuted' if self.refuted else 'not refuted'}"
                 f" ({'verified' if self.verified else 'NOT verified'})"]
        for p in self.premises:
            lines.append(f"  [{'ok' if p.ok else 'FAIL'}] {p.text}")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report: ClaimReport):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed_ms = (time.perf_counter() - self.start) * 1000.0
        return False


def _finish(report: ClaimReport) -> ClaimReport:
    if not report.premises_hold:
        failed = [p.text for p in report.premises if not p.ok]
        raise FixtureInvalid(f"claim {report.claim}: premise(s) failed: {'; '.join(failed)}", report)
    logger.info("claim %s checked in %.1f ms: refuted=%s", report.claim, report.elapsed_ms, report.refuted)
    return report


def _join_of(fx: Fixture) -> Join:
    return Join.of(fx.part("V0"), fx.part("V1"), fx.part("V2"), fx.part("V3"))


def verify_gs(report: ClaimReport, gs: Fixture) -> None:
    cycle = sorted(gs.part("cycle"))
    ring = list(zip(cycle, cycle[1:] + cycle[:1]))
    sub = induced_subgraph(gs.graph, cycle)
    report.check("s1..s6 induce a 6-cycle in G^s",
                 len(sub.edges) == 6 and all(sub.adjacent(a, b) for a, b in ring))
    report.check("consecutive cycle pairs are strictly but not strongly adjacent",
                 all(classify_vertex_pair(gs.graph, a, b) is VertexPairRelation.STRICTLY_NOT_STRONGLY_ADJACENT
                     for a, b in ring))


def verify_claim_a(config: Config = DEFAULT_CONFIG) -> ClaimReport:
    report = ClaimReport("A")
    with _Timer(report):
        verify_gs(report, fixture_gs())
        fx = fixture_claim_a()
        s = fx.vertex("s")
        gc = build_gc(fx.graph)
        j = _join_of(fx)
        report.check("annotated V0..V3 is a join of G_c", not join_problems(gc, j), j.to_dict())
        a = report.check("G_c has no non-trivial module (pair closures span V)", is_s_inseparable(gc),
                         {"vertices": len(gc), "pairs": len(gc) * (len(gc) - 1) // 2})
        others = (j.v1 | j.v2) - {s}
        b = report.check(f"{s} is in V1 and adjacent in G_c to all of V1+V2 minus {s}",
                         s in j.v1 and others <= gc.neighbors(s), sorted(others))
        rest = remove_vertices(gc, [s])
        comps = connected_components(rest)
        c = report.check(f"G_c minus {s} is disconnected", len(comps) >= 2, [sorted(x) for x in comps])
        report.check(f"G_c minus {s} is not s-inseparable", not is_s_inseparable(rest))
        report.refuted = a and b and c
    return _finish(report)


def verify_claim_b(config: Config = DEFAULT_CONFIG) -> ClaimReport:
    report = ClaimReport("B")
    with _Timer(report):
        fx = fixture_claim_b()
        gc = build_gc(fx.graph)
        j = _join_of(fx)
        u, v, u3, v3 = fx.vertex("u"), fx.vertex("v"), fx.vertex("u3"), fx.vertex("v3")
        joined = report.check("annotated V0..V3 is a join of G_c", not join_problems(gc, j), j.to_dict())
        a = report.check("G_c is s-inseparable", is_s_inseparable(gc))
        middle = j.v1 | j.v2
        universal = sorted(x for x in middle if middle - {x} <= gc.neighbors(x))
        b = report.check("no vertex of V1+V2 is adjacent to all others of V1+V2", not universal, universal)
        c1 = c2 = False
        if joined:
            # H1's marker is named after v in V2, H2's after u in V1
            parts = decompose_by_join(gc, j, marker1=v, marker2=u)
            m1, m2 = frozenset({u3, v}), frozenset({u, v3})
            c1 = report.check(f"{{{u3},{v}}} is a non-trivial module of H1",
                              is_module(parts.h1, m1) and not is_trivial_module(parts.h1, m1))
            c2 = report.check(f"{{{u},{v3}}} is a non-trivial module of H2",
                              is_module(parts.h2, m2) and not is_trivial_module(parts.h2, m2))
            report.check("H1 and H2 are not s-inseparable",
                         not is_s_inseparable(parts.h1) and not is_s_inseparable(parts.h2))
        report.refuted = a and b and c1 and c2
    return _finish(report)


def verify_counterexample1(config: Config = DEFAULT_CONFIG) -> ClaimReport:
    report = ClaimReport("CE1")
    with _Timer(report):
        fx = fixture_ce1()
        g, model = fx.graph, fx.model
        # the fixture itself sets the enumeration size
        config = replace(config, arc_enum_cap=max(config.arc_enum_cap, len(g)),
                         chord_enum_cap=max(config.chord_enum_cap, len(g)))
        gc = build_gc(g)
        tree = build_md_tree(gc, cap=max(config.module_scan_cap, len(gc)))
        root = tree.root
        a = report.check("MD root of G_c is a neighbourhood node", root.label is NodeLabel.NEIGHBORHOOD,
                         root.label.value)
        groups = [fx.part(f"M{i}") for i in range(1, 5)]
        children = {c.vertices: c.label for c in root.children}
        b = report.check("children of the root are M1..M4, each parallel",
                         set(children) == set(groups) and all(children[m] is NodeLabel.PARALLEL for m in groups),
                         {"/".join(sorted(k)): lab.value for k, lab in sorted(children.items(), key=lambda kv: min(kv[0]))})
        d = to_chord_model(model)
        c = report.check("M1 and M4 are not consistent in the chord model of R",
                         is_module_consistent(d, groups[0]) is None and is_module_consistent(d, groups[3]) is None)
        report.check("M2 and M3 are consistent in the chord model of R",
                     is_module_consistent(d, groups[1]) is not None and is_module_consistent(d, groups[2]) is not None)
        normalized = enumerate_normalized_models(g, config)
        dd = report.check("exactly one reflection class of normalized models, holding R, with two labeled models",
                          normalized.count == 1 and normalized.labeled_count == 2
                          and canonical_form_labeled(model.word) in normalized.canonical_models,
                          normalized.to_dict(count_only=True))
        every = all(is_module_consistent(to_chord_model(CircularArcModel(w)), m) is None
                    for w in normalized.rotation_classes for m in (groups[0], groups[3]))
        report.check("M1 and M4 are inconsistent in every normalized model", every)
        chords = enumerate_chord_models(gc, config)
        non_conformal = sum(1 for w in chords.canonical_models
                            if not is_conformal(ChordModel(w), g, gc))
        report.check("G_c has chord models that are not conformal", non_conformal > 0,
                     {"chord_classes": chords.count, "non_conformal": non_conformal})
        report.check("conformal models of G_c match the chord models of normalized models",
                     compare_chord_classes(g, config).holds)
        report.refuted = a and b and c and dd and every
    return _finish(report)


def _ring(n: int) -> CircularArcModel:
    """n arcs, each overlapping only its two ring neighbours."""
    names = [f"r{i}" for i in range(n)]
    word: List[str] = []
    for i, v in enumerate(names):
        word += [head(v), tail(names[i - 1])]
    return CircularArcModel(tuple(word))


def verify_h1_on_primes(sample_count: int = 50, config: Config = DEFAULT_CONFIG, seed: int = 0,
                        max_n: int = 7) -> ClaimReport:
    """
    Spot-check that a graph with prime G_c has one conformal model up to reflection.

    Sizes are drawn from 5..max_n: no normalizable graph on four vertices has a
    prime G_c. The five-ring counts toward sample_count.
    """
    report = ClaimReport("H1", expect_refuted=False)
    with _Timer(report):
        rng = random.Random(seed)
        five = _ring(5)
        instances: List[Tuple[str, Graph]] = [("five-ring", intersection_graph(five))]
        seen = {instances[0][1].edges}
        for _ in range(sample_count * 400):
            if len(instances) >= sample_count:
                break
            drawn = sample_normalizable(rng.randint(5, max(5, max_n)), rng)
            if drawn is None:
                continue
            _, g = drawn
            if g.edges in seen:
                continue
            seen.add(g.edges)
            if is_s_inseparable(build_gc(g)):
                instances.append((f"sample{len(instances)}", g))
        counterexamples = []
        unfinished = []
        for name, g in instances:
            try:
                result = enumerate_conformal_models(g, config)
            except SizeCapExceeded as e:
                unfinished.append(name)
                logger.warning("H1 instance %s skipped: %s", name, e)
                continue
            if result.cap_hit:
                unfinished.append(name)
            if not unique_up_to_reflection(result):
                counterexamples.append({"instance": name, "vertices": list(g.vertices),
                                        "edges": [list(e) for e in g.sorted_edges()],
                                        "classes": result.count})
        try:
            claim_a = fixture_claim_a()
            result = enumerate_conformal_models(claim_a.graph, config)
            claim_a_status = "checked"
            if not unique_up_to_reflection(result):
                counterexamples.append({"instance": "claim_a", "classes": result.count})
        except SizeCapExceeded as e:
            claim_a_status = str(e)
            logger.info("H1 on the claim A fixture skipped: %s", e)
        report.check(f"found {sample_count} instances with prime G_c", len(instances) >= sample_count,
                     {"instances": len(instances), "max_n": max_n, "seed": seed})
        report.check("enumeration finished on every instance", not unfinished,
                     {"checked": len(instances) - len(unfinished), "unfinished": unfinished,
                      "claim_a_fixture": claim_a_status})
        report.refuted = bool(counterexamples)
        if counterexamples:
            logger.warning("H1 counterexample(s): %s", counterexamples)
            report.premises.append(Premise("instances with more than one conformal class", False, counterexamples))
    return report


VERIFIERS = {
    "A": verify_claim_a,
    "B": verify_claim_b,
    "CE1": verify_counterexample1,
    "H1": verify_h1_on_primes,
}
