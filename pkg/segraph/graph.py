"""
k-nearest-neighbor graph over segments
"""

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from imaging.components import Segment
from mrf.fields import DataField

DISTANCE_FLOOR = 1e-6


@dataclass(frozen=True)
class GraphNode:
    """One segment as seen by the unstructured layer"""
    segment_id: int
    label: int
    pixel_count: int
    centroid: Tuple[float, float]
    mean_gray: float


@dataclass(frozen=True)
class Edge:
    neighbor_id: int
    distance: float


@dataclass(frozen=True)
class SegmentGraph:
    """
    Directed kNN graph: `edges[i]` lists node i's neighbors by ascending
    distance (ties by lower id). `d_max[i]` is the largest distance any
    neighbor of i could have inside the frame, i.e. the distance from its
    centroid to the farthest frame corner.
    """
    nodes: Tuple[GraphNode, ...]
    edges: Dict[int, Tuple[Edge, ...]]
    d_max: Dict[int, float]
    k: int
    frame_shape: Tuple[int, int] = (0, 0)

    def node(self, segment_id: int) -> GraphNode:
        return self.nodes[self._index()[segment_id]]

    def _index(self) -> Dict[int, int]:
        return {n.segment_id: i for i, n in enumerate(self.nodes)}

    def labels(self) -> Dict[int, int]:
        return {n.segment_id: n.label for n in self.nodes}

    def with_labels(self, labels: Dict[int, int]) -> "SegmentGraph":
        nodes = tuple(replace(n, label=int(labels[n.segment_id])) for n in self.nodes)
        return replace(self, nodes=nodes)

    def undirected_pairs(self) -> List[Tuple[int, int]]:
        """Each kNN adjacency once as (lower id, higher id)"""
        pairs = set()
        for i, edges in self.edges.items():
            for e in edges:
                pairs.add((min(i, e.neighbor_id), max(i, e.neighbor_id)))
        return sorted(pairs)


def segment_mean_gray(segment: Segment, gray: Optional[DataField]) -> float:
    """Mean normalized gray over the segment; the field label without data"""
    if gray is None:
        return float(segment.label)
    xs, ys = segment.pixels[:, 0], segment.pixels[:, 1]
    return float(gray.values[ys, xs].mean())


def frame_extent(segments: Sequence[Segment]) -> Tuple[int, int]:
    """(height, width) spanned from the origin by the segments' pixels"""
    parts = [s.pixels for s in segments if s.pixel_count]
    if not parts:
        return (1, 1)
    pixels = np.concatenate(parts)
    return (int(pixels[:, 1].max()) + 1, int(pixels[:, 0].max()) + 1)


def farthest_corner_distance(centroids: np.ndarray, shape: Tuple[int, int]) -> np.ndarray:
    """Per centroid (x, y), the distance to the farthest pixel corner of the frame"""
    h, w = shape
    corners = np.array([[0, 0], [w - 1, 0], [0, h - 1], [w - 1, h - 1]], dtype=np.float64)
    return cdist(centroids, corners).max(axis=1)


def build_knn_graph(segments: Sequence[Segment], k: int = 3,
                    gray: Optional[DataField] = None,
                    frame_shape: Optional[Tuple[int, int]] = None) -> SegmentGraph:
    """
    Connect every segment to its k nearest segments by centroid distance

    The frame is taken from `gray`, then `frame_shape`, then the extent of
    the segments themselves.
    """
    if not segments:
        raise ValueError("build_knn_graph needs at least one segment")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    ordered = sorted(segments, key=lambda s: s.id)
    if gray is not None:
        frame_shape = gray.shape
    elif frame_shape is None:
        frame_shape = frame_extent(ordered)
    nodes = tuple(
        GraphNode(s.id, int(s.label), s.pixel_count, s.centroid, segment_mean_gray(s, gray))
        for s in ordered
    )
    ids = np.array([n.segment_id for n in nodes])
    centroids = np.array([n.centroid for n in nodes], dtype=np.float64)
    distances = np.maximum(cdist(centroids, centroids), DISTANCE_FLOOR)
    reach = farthest_corner_distance(centroids, frame_shape)

    count = min(k, len(nodes) - 1)
    edges: Dict[int, Tuple[Edge, ...]] = {}
    d_max: Dict[int, float] = {}
    for i, node in enumerate(nodes):
        others = np.flatnonzero(np.arange(len(nodes)) != i)
        order = others[np.lexsort((ids[others], distances[i, others]))][:count]
        edges[node.segment_id] = tuple(Edge(int(ids[j]), float(distances[i, j])) for j in order)
        longest = float(distances[i, order].max()) if count else 0.0
        d_max[node.segment_id] = max(float(reach[i]), longest, DISTANCE_FLOOR)

    return SegmentGraph(nodes=nodes, edges=edges, d_max=d_max, k=k,
                        frame_shape=(int(frame_shape[0]), int(frame_shape[1])))


def dump_edges(graph: SegmentGraph, stream: TextIO) -> None:
    """Plain-text edge list: node_id neighbor_id distance S_ratio"""
    sizes = {n.segment_id: n.pixel_count for n in graph.nodes}
    stream.write("# node_id neighbor_id distance s_ratio\n")
    for node in graph.nodes:
        for e in graph.edges[node.segment_id]:
            ratio = sizes[node.segment_id] / sizes[e.neighbor_id]
            stream.write(f"{node.segment_id} {e.neighbor_id} {e.distance:.6f} {ratio:.6f}\n")
