"""
Unstructured segment-graph layer
"""

from segraph.graph import GraphNode, SegmentGraph, build_knn_graph, dump_edges
from segraph.icm_graph import graph_energy, icm_graph, icm_graph_trace, node_prior_energy
from segraph.merge import merge_segments

__all__ = [
    "GraphNode",
    "SegmentGraph",
    "build_knn_graph",
    "dump_edges",
    "graph_energy",
    "icm_graph",
    "icm_graph_trace",
    "merge_segments",
    "node_prior_energy",
]
