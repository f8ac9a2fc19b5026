"""
ICM over the segment graph with the size/distance-weighted prior
"""

from typing import Dict, List, Optional, Tuple

import structlog

from segraph.graph import GraphNode, SegmentGraph

logger = structlog.get_logger()


def _disagree(a: int, b: int) -> float:
    return ((a - b) / 2.0) ** 2


def node_likelihood(node: GraphNode, candidate: int) -> float:
    return ((candidate - node.mean_gray) / 2.0) ** 2


def node_sizes(graph: SegmentGraph) -> Dict[int, int]:
    return {n.segment_id: n.pixel_count for n in graph.nodes}


def node_prior_energy(node: GraphNode, candidate: int, graph: SegmentGraph,
                      labels: Optional[Dict[int, int]] = None,
                      sizes: Optional[Dict[int, int]] = None) -> float:
    """
    Σ over the node's neighbors of disagreement · (S_i / S_i') · (D / D_max)

    Large neighbors cost little to disagree with relative to the node's own
    size; big nodes resist small neighbors. D_max is the node's reach inside
    the frame, so a disagreement across a short gap costs less than one
    across the frame.
    """
    labels = labels if labels is not None else graph.labels()
    sizes = sizes if sizes is not None else node_sizes(graph)
    d_max = graph.d_max[node.segment_id]
    energy = 0.0
    for e in graph.edges[node.segment_id]:
        energy += (
            _disagree(candidate, labels[e.neighbor_id])
            * (node.pixel_count / sizes[e.neighbor_id])
            * (e.distance / d_max)
        )
    return energy


def node_energy(node: GraphNode, candidate: int, graph: SegmentGraph, beta_u: float,
                labels: Optional[Dict[int, int]] = None,
                sizes: Optional[Dict[int, int]] = None) -> float:
    prior = node_prior_energy(node, candidate, graph, labels, sizes)
    return node_likelihood(node, candidate) + beta_u * prior


def graph_energy(graph: SegmentGraph, beta_u: float) -> float:
    """
    Potential for graph ICM

    Σ_i c_i·likelihood_i + (β_u/2)·Σ_{i→j} disagreement·D_ij/(S_i·S_j), with
    c_i = D_max,i / S_i². A node update changes it by c_i times the change
    of that node's energy whenever the node's kNN relations are mutual.
    """
    labels = graph.labels()
    sizes = node_sizes(graph)
    total = 0.0
    for node in graph.nodes:
        i = node.segment_id
        total += graph.d_max[i] / sizes[i] ** 2 * node_likelihood(node, node.label)
        for e in graph.edges[i]:
            total += (beta_u / 2.0) * _disagree(node.label, labels[e.neighbor_id]) * (
                e.distance / (sizes[i] * sizes[e.neighbor_id])
            )
    return total


def icm_graph_trace(graph: SegmentGraph, beta_u: float = 1.0,
                    iterations: int = 2) -> Tuple[SegmentGraph, List[int]]:
    """Asynchronous node updates in ascending id order; ties keep the label"""
    if beta_u < 0:
        raise ValueError(f"beta_u must be >= 0, got {beta_u}")
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")

    labels = graph.labels()
    sizes = node_sizes(graph)
    flips: List[int] = []
    for _ in range(iterations):
        count = 0
        for node in sorted(graph.nodes, key=lambda n: n.segment_id):
            current = labels[node.segment_id]
            e_plus = node_energy(node, 1, graph, beta_u, labels, sizes)
            e_minus = node_energy(node, -1, graph, beta_u, labels, sizes)
            if e_plus < e_minus:
                best = 1
            elif e_minus < e_plus:
                best = -1
            else:
                best = current
            if best != current:
                labels[node.segment_id] = best
                count += 1
        flips.append(count)
        if count == 0:
            break

    logger.debug("Graph ICM finished", nodes=len(graph.nodes), flips=flips)
    return graph.with_labels(labels), flips


def icm_graph(graph: SegmentGraph, beta_u: float = 1.0, iterations: int = 2) -> SegmentGraph:
    return icm_graph_trace(graph, beta_u, iterations)[0]
