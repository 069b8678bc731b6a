"""Disjoint representatives through a maximum-flow formulation."""

from typing import Dict, Hashable, List, Optional, Sequence, Set

import networkx as nx
import structlog

logger = structlog.get_logger()

SOURCE = ("source",)
SINK = ("sink",)


def build_flow_graph(family: Sequence[Set[Hashable]], demands: Sequence[int]) -> nx.DiGraph:
    """source -> set i (capacity demand_i) -> element (1) -> sink (1)."""
    graph = nx.DiGraph()
    graph.add_node(SOURCE)
    graph.add_node(SINK)
    for i, (members, demand) in enumerate(zip(family, demands)):
        set_node = ("set", i)
        graph.add_edge(SOURCE, set_node, capacity=demand)
        for g in members:
            elt = ("elt", g)
            graph.add_edge(set_node, elt, capacity=1)
            if not graph.has_edge(elt, SINK):
                graph.add_edge(elt, SINK, capacity=1)
    return graph


def disjoint_representatives(
    family: Sequence[Set[Hashable]], demands: Sequence[int]
) -> Optional[List[Set[Hashable]]]:
    """Pairwise disjoint B_i ⊆ A_i with |B_i| = demand_i, or None if none exist."""
    if len(family) != len(demands):
        raise ValueError("one demand per set is required")
    needed = sum(demands)
    if any(d > len(a) for a, d in zip(family, demands)):
        return None
    if family and needed > len(set().union(*family)):
        return None
    graph = build_flow_graph(family, demands)
    value, flows = nx.maximum_flow(graph, SOURCE, SINK)
    logger.debug("Representative flow solved", sets=len(family), needed=needed, value=value)
    if value < needed:
        return None
    witnesses: List[Set[Hashable]] = []
    for i in range(len(family)):
        chosen: Dict[Hashable, int] = flows[("set", i)]
        witnesses.append({node[1] for node, f in chosen.items() if f > 0})
    return witnesses
