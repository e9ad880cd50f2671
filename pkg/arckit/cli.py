# arckit/cli.py
"""
Command-line front end.

Exit codes: 0 on success, 2 when a verification fails (a claim premise or
refutation, check-normalized finding violations, a non-conformal model),
1 on usage, parse and precondition errors. Results go to stdout, all
diagnostics to stderr.
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional

from dotenv import find_dotenv, load_dotenv

from arckit.arc_model import (ChordModel, CircularArcModel, check_normalized,
                              format_model, normalize_with_certificate,
                              parse_model, to_chord_model)
from arckit.claims import CLAIM_IDS
from arckit.config import OUTPUT_FORMATS, Config
from arckit.conformal import build_gc, is_conformal, is_module_consistent
from arckit.coordinator import Coordinator
from arckit.decomposition import build_md_tree, find_join, find_join_exhaustive
from arckit.dot_export import chord_model_to_dot, graph_to_dot, join_to_dot, md_tree_to_dot
from arckit.enumeration import (enumerate_chord_models, enumerate_conformal_models,
                                enumerate_normalized_models)
from arckit.errors import ArckitError, FixtureInvalid
from arckit.graph_core import Graph, format_graph, parse_graph
from arckit.storage import load_runs

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

# claims run when --claim is not given; H1 is a property check, not a refutation
DEFAULT_CLAIMS = ("A", "B", "CE1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _setup_logging(level: Optional[str]) -> None:
    level = (level or os.getenv("ARCKIT_LOG_LEVEL") or "WARNING").upper()
    if not logging.getLogger().handlers:
        logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _graph(path: str) -> Graph:
    return parse_graph(_read(path), source=path)


def _arc_model(path: str) -> CircularArcModel:
    m = parse_model(_read(path), source=path)
    if not isinstance(m, CircularArcModel):
        raise UsageError(f"{path}: expected an arc model (v.0 / v.1 tokens)")
    return m


def _chord_model(path: str) -> ChordModel:
    m = parse_model(_read(path), source=path)
    return to_chord_model(m) if isinstance(m, CircularArcModel) else m


def _emit(args, text: str, data: Any) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_gc(args, config: Config) -> int:
    gc = build_gc(_graph(args.graph))
    if args.format == "dot":
        sys.stdout.write(graph_to_dot(gc, "G_c"))
    else:
        _emit(args, format_graph(gc), {"vertices": list(gc.vertices), "edges": [list(e) for e in gc.sorted_edges()]})
    return EXIT_OK


def cmd_mdtree(args, config: Config) -> int:
    g = _graph(args.graph)
    tree = build_md_tree(g, cap=args.cap or config.module_scan_cap)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(md_tree_to_dot(tree))
    _emit(args, tree.render(), tree.root.to_dict())
    return EXIT_OK


def cmd_join(args, config: Config) -> int:
    g = _graph(args.graph)
    j = find_join_exhaustive(g, cap=args.cap or 8) if args.exhaustive else find_join(g, cap=args.cap or config.join_scan_cap)
    if j is None:
        _emit(args, "no join: graph is j-inseparable", {"join": None})
    else:
        text = "\n".join(f"V{i}: {' '.join(sorted(p))}" for i, p in enumerate(j.parts))
        _emit(args, text, {"join": j.to_dict()})
    return EXIT_OK


def cmd_normalize(args, config: Config) -> int:
    g, m = _graph(args.graph), _arc_model(args.model)
    out, certificate = normalize_with_certificate(m, g)
    if args.format == "json":
        _emit(args, "", {"model": " ".join(out.word),
                         "extends": all(c.is_extension() for c in certificate.values())})
    else:
        sys.stdout.write(format_model(out))
    return EXIT_OK


def cmd_check_normalized(args, config: Config) -> int:
    g, m = _graph(args.graph), _arc_model(args.model)
    violations = check_normalized(m, g)
    text = "normalized" if not violations else "\n".join(v.describe() for v in violations)
    _emit(args, text, {"normalized": not violations, "violations": [
        {"pair": list(v.pair), "arcs": v.arc_relation.value, "vertices": v.vertex_relation.value,
         "expected": v.expected.value} for v in violations]})
    return EXIT_OK if not violations else EXIT_FAILED


def cmd_to_chords(args, config: Config) -> int:
    d = to_chord_model(_arc_model(args.model))
    if args.format == "dot":
        sys.stdout.write(chord_model_to_dot(d))
    else:
        _emit(args, format_model(d), {"chords": " ".join(d.word)})
    return EXIT_OK


def cmd_conformal(args, config: Config) -> int:
    g, d = _graph(args.graph), _chord_model(args.chords)
    result = is_conformal(d, g)
    text = "conformal" if result else "not conformal at: " + " ".join(result.violators)
    _emit(args, text, {"conformal": result.ok, "violators": list(result.violators)})
    return EXIT_OK if result else EXIT_FAILED


def cmd_consistent(args, config: Config) -> int:
    d = _chord_model(args.chords)
    module = [v for v in args.module.split(",") if v]
    witness = is_module_consistent(d, module)
    if witness is None:
        _emit(args, "not consistent", {"consistent": False})
    else:
        _emit(args, f"consistent: arcs at {list(witness.arc_a)} and {list(witness.arc_b)}",
              {"consistent": True, **witness.to_dict()})
    return EXIT_OK


_ENUMERATORS: Dict[str, Callable] = {
    "chords": enumerate_chord_models,
    "normalized": enumerate_normalized_models,
    "conformal": enumerate_conformal_models,
}


def cmd_enumerate(args, config: Config) -> int:
    g = _graph(args.graph)
    result = _ENUMERATORS[args.kind](g, config.with_enum_cap(args.cap))
    if args.count_only:
        text = f"{result.count} classes ({result.labeled_count} up to rotation only)"
    else:
        text = "\n".join(" ".join(w) for w in result.canonical_models) or "(none)"
    _emit(args, text, result.to_dict(count_only=args.count_only))
    return EXIT_OK


def cmd_verify_claims(args, config: Config) -> int:
    if args.all:
        claims = list(CLAIM_IDS)
    else:
        claims = args.claim or list(DEFAULT_CLAIMS)
    reports = Coordinator(config, workers=config.workers).run(claims)
    payload = [r.to_dict(timing=not args.no_timing) for r in reports]
    if args.json:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w", encoding="utf-8") as f:
                f.write(text)
    if args.json != "-":
        _emit(args, "\n".join(r.render() for r in reports), payload)
    failed = [r.claim for r in reports if not r.verified]
    if failed:
        logger.error("verification failed for claim(s): %s", ", ".join(failed))
        return EXIT_FAILED
    return EXIT_OK


def cmd_export_dot(args, config: Config) -> int:
    if args.what == "chords":
        if not args.chords:
            raise UsageError("export-dot chords needs -d")
        sys.stdout.write(chord_model_to_dot(_chord_model(args.chords)))
        return EXIT_OK
    if not args.graph:
        raise UsageError(f"export-dot {args.what} needs -g")
    g = _graph(args.graph)
    target = build_gc(g) if args.gc else g
    if args.what == "graph":
        sys.stdout.write(graph_to_dot(target))
    elif args.what == "mdtree":
        sys.stdout.write(md_tree_to_dot(build_md_tree(target, cap=config.module_scan_cap)))
    else:
        j = find_join(target, cap=config.join_scan_cap)
        if j is None:
            logger.error("no join to draw: graph is j-inseparable")
            return EXIT_FAILED
        sys.stdout.write(join_to_dot(target, j))
    return EXIT_OK


def cmd_history(args, config: Config) -> int:
    runs = load_runs(limit=args.limit, command=args.command_filter, db_path=config.db_path)
    text = "\n".join(f"{r['id']:>4}  {r['ts']}  {r['command']:<14} exit={r['exit_code']}  {json.dumps(r['args'])}"
                     for r in runs) or "(no runs recorded)"
    _emit(args, text, runs)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arckit", description="Normalized circular-arc models, G_c, conformal chord models.")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None,
                        help="output format (default from config)")
    # also accepted after the subcommand; SUPPRESS keeps a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS,
                        help="output format (default from config)")
    parser.add_argument("--log-level", default=None, help="overrides ARCKIT_LOG_LEVEL")
    parser.add_argument("--workers", type=int, default=None, help="processes for enumeration, threads for claims")
    parser.add_argument("--db", default=None, help="sqlite run ledger (overrides ARCKIT_DB)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, graph: bool = False, model: bool = False,
            chords: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        if graph:
            p.add_argument("-g", "--graph", required=True)
        if model:
            p.add_argument("-m", "--model", required=True)
        if chords:
            p.add_argument("-d", "--chords", required=True, help="chord model, or an arc model to convert")
        p.set_defaults(func=func)
        return p

    add("gc", cmd_gc, "print the circle graph G_c", graph=True)
    p = add("mdtree", cmd_mdtree, "modular decomposition tree", graph=True)
    p.add_argument("--dot", default=None, help="also write the tree as DOT to this file")
    p.add_argument("--cap", type=int, default=None)
    p = add("join", cmd_join, "find a join V0..V3", graph=True)
    p.add_argument("--exhaustive", action="store_true", help="scan all labelled partitions")
    p.add_argument("--cap", type=int, default=None)
    add("normalize", cmd_normalize, "extend arcs into a normalized model", graph=True, model=True)
    add("check-normalized", cmd_check_normalized, "list pairs violating normalization", graph=True, model=True)
    add("to-chords", cmd_to_chords, "chord model of an arc model", model=True)
    add("conformal", cmd_conformal, "is a chord model of G_c conformal", graph=True, chords=True)
    p = add("consistent", cmd_consistent, "is a module consistent in a chord model", chords=True)
    p.add_argument("--module", required=True, help="comma-separated vertices")
    p = add("enumerate", cmd_enumerate, "brute-force model enumeration", graph=True)
    p.add_argument("kind", choices=sorted(_ENUMERATORS))
    p.add_argument("--cap", type=int, default=None, help="overrides both enumeration caps")
    p.add_argument("--count-only", action="store_true")
    p = add("verify-claims", cmd_verify_claims, "run the claim verifiers")
    p.add_argument("--claim", action="append", choices=CLAIM_IDS, help="repeatable; default A, B and CE1")
    p.add_argument("--all", action="store_true", help="include H1")
    p.add_argument("--json", nargs="?", const="-", default=None, help="write the JSON report here ('-' for stdout)")
    p.add_argument("--no-timing", action="store_true", help="drop elapsed_ms for byte-stable reports")
    p = sub.add_parser("export-dot", help="Graphviz DOT export", parents=[common])
    p.add_argument("what", choices=("graph", "mdtree", "join", "chords"))
    p.add_argument("-g", "--graph", default=None)
    p.add_argument("-d", "--chords", default=None)
    p.add_argument("--gc", action="store_true", help="draw G_c of the graph instead")
    p.set_defaults(func=cmd_export_dot)
    p = add("history", cmd_history, "list recorded verification runs")
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--for", dest="command_filter", default=None, help="only runs of this command")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv(find_dotenv(usecwd=True))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    _setup_logging(args.log_level)
    try:
        config = Config.from_env(load_dotenv_file=False, workers=args.workers, db_path=args.db)
        if args.format is None:
            args.format = config.output_format
        return args.func(args, config)
    except FixtureInvalid as e:
        logger.error("%s", e)
        return EXIT_FAILED
    except (ArckitError, UsageError, ValueError) as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
