"""
Merge segments that agree in label and are kNN-adjacent
"""

from typing import Dict, List, Sequence

import numpy as np
import structlog
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as graph_components

from imaging.components import Segment, renumber
from segraph.graph import SegmentGraph

logger = structlog.get_logger()


def _relabel(segment: Segment, label: int) -> Segment:
    tier = None if segment.tier is None else (segment.tier[0], 1 if label == 1 else 0)
    return Segment(segment.id, segment.pixels, label, tier)


def merge_segments(graph: SegmentGraph, segments: Sequence[Segment]) -> List[Segment]:
    """
    Union segments joined by an undirected kNN edge whose ends share a label

    Labels come from the graph. Output ids are reassigned in raster order.
    """
    by_id: Dict[int, Segment] = {s.id: s for s in segments}
    labels = graph.labels()
    ids = sorted(by_id)
    index = {sid: i for i, sid in enumerate(ids)}

    rows, cols = [], []
    for a, b in graph.undirected_pairs():
        if a in index and b in index and labels[a] == labels[b]:
            rows.append(index[a])
            cols.append(index[b])
    n = len(ids)
    adjacency = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    count, membership = graph_components(adjacency, directed=False)

    groups: Dict[int, List[Segment]] = {}
    for sid in ids:
        groups.setdefault(int(membership[index[sid]]), []).append(
            _relabel(by_id[sid], labels.get(sid, by_id[sid].label))
        )

    merged = [
        parts[0] if len(parts) == 1 else Segment.union(parts[0].id, parts)
        for parts in groups.values()
    ]
    logger.debug("Segments merged", before=n, after=count)
    return renumber(merged)
