"""DOT text for face posets, dual complexes and metrized graphs."""

from typing import Any, Dict, List

import networkx as nx

from adictrop.degeneration.dual_complex import DualComplex
from adictrop.degeneration.metrized import MetrizedComplex


def _quote(value: Any) -> str:
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{text}"'


def _attrs(data: Dict[str, Any]) -> str:
    items = [f"{k}={_quote(v)}" for k, v in sorted(data.items()) if v is not None]
    return f" [{', '.join(items)}]" if items else ""


def graph_to_dot(graph: nx.Graph, name: str = "G") -> str:
    """Serialize a networkx graph; nodes and edges in sorted order."""
    directed = graph.is_directed()
    keyword, arrow = ("digraph", "->") if directed else ("graph", "--")
    lines: List[str] = [f"{keyword} {_quote(name)} {{"]
    for node in sorted(graph.nodes, key=str):
        lines.append(f"  {_quote(node)}{_attrs(graph.nodes[node])};")
    edges = sorted(graph.edges(data=True), key=lambda e: (str(e[0]), str(e[1]), sorted(e[2].items())))
    for a, b, data in edges:
        lines.append(f"  {_quote(a)} {arrow} {_quote(b)}{_attrs(data)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(family, name: str = "faces") -> str:
    """Hasse diagram of a complex or fan, cells labelled by index and dimension."""
    g = nx.DiGraph()
    for i in family.poset.nodes:
        g.add_node(i, label=f"{i}: dim {family.cells[i].dim}")
    g.add_edges_from(family.poset.edges)
    return graph_to_dot(g, name)


def dual_complex_to_dot(dual: DualComplex, name: str = "special_fiber") -> str:
    g = nx.Graph()
    for i, comp in enumerate(dual.components):
        g.add_node(i, label=f"{comp.kind} @ {comp.vertex}")
    for a, b, cell in dual.edges:
        g.add_edge(a, b, label=f"cell {cell}")
    return graph_to_dot(g, name)


def metrized_to_dot(mc: MetrizedComplex, name: str = "metrized") -> str:
    g = nx.MultiGraph()
    for i, (v, dec) in enumerate(zip(mc.vertices, mc.decorations)):
        g.add_node(i, label=f"{v}: {dec}")
    for k, e in enumerate(mc.edges):
        if e.is_leg:
            g.add_node(f"leg{k}", shape="point")
            g.add_edge(e.source, f"leg{k}", label="inf")
        else:
            g.add_edge(e.source, e.target, label=str(e.length))
    return graph_to_dot(g, name)
