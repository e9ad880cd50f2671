# arckit/dot_export.py
"""
Graphviz DOT text for graphs, MD trees and joins.

Render with, for example:

    arckit export-dot -g ce1.graph mdtree > md.gv
    dot -Tpng -O md.gv
"""
from typing import Iterable, List

from arckit.arc_model import ChordModel
from arckit.decomposition import Join, MDNode, MDTree
from arckit.graph_core import Graph


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: Graph, name: str = "G", highlight: Iterable[str] = ()) -> str:
    marked = set(highlight)
    lines = [f"graph {_quote(name)} {{", "\tnode [shape=circle];"]
    for v in g.vertices:
        style = " [style=filled, fillcolor=lightgrey]" if v in marked else ""
        lines.append(f"\t{_quote(v)}{style};")
    for a, b in g.sorted_edges():
        lines.append(f"\t{_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def md_tree_to_dot(tree: MDTree, name: str = "md") -> str:
    lines = [f"digraph {_quote(name)} {{", "\tnode [shape=box];"]
    ids = {}

    def visit(node: MDNode) -> str:
        node_id = f"n{len(ids)}"
        ids[node_id] = node
        if node.is_leaf:
            lines.append(f"\t{node_id} [label={_quote(next(iter(node.vertices)))}, shape=circle];")
        else:
            lines.append(f"\t{node_id} [label={_quote(node.label.value)}];")
        for child in node.children:
            lines.append(f"\t{node_id} -> {visit(child)};")
        return node_id

    visit(tree.root)
    lines.append("}")
    return "\n".join(lines) + "\n"


def join_to_dot(g: Graph, j: Join, name: str = "join") -> str:
    """One cluster per part V0..V3; edges drawn once, after the clusters."""
    lines: List[str] = [f"graph {_quote(name)} {{", "\tnode [shape=circle];"]
    for i, part in enumerate(j.parts):
        lines.append(f"\tsubgraph cluster_V{i} {{")
        lines.append(f"\t\tlabel={_quote(f'V{i}')};")
        for v in sorted(part):
            lines.append(f"\t\t{_quote(v)};")
        lines.append("\t}")
    for a, b in g.sorted_edges():
        lines.append(f"\t{_quote(a)} -- {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def chord_model_to_dot(d: ChordModel, name: str = "chords") -> str:
    """Endpoints as a cycle of small nodes, each chord as an edge between its two endpoints."""
    lines = [f"graph {_quote(name)} {{", "\tlayout=circo;", "\tnode [shape=point];"]
    for i, v in enumerate(d.word):
        lines.append(f"\tp{i} [xlabel={_quote(v)}];")
    for i in range(d.size):
        lines.append(f"\tp{i} -- p{(i + 1) % d.size} [color=grey];")
    for v in d.vertices:
        a, b = d.positions(v)
        lines.append(f"\tp{a} -- p{b} [label={_quote(v)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
