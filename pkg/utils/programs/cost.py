from typing import Dict

from utils.errors import GraphArgumentError
from utils.graph.graph import Graph
from utils.partitioner.layout import PartitionLayout

ALGORITHMS = ('pr', 'bfs')


def expected_vertex_cost(g: Graph, layout: PartitionLayout, algo: str = 'pr') -> int:
    """
    vertex 모델의 superstep 당 예상 비용
    모든 정점이 활성이라고 보고, core (= 파티션) 마다 Σ(1 + deg(v)) 중 최대값
    BFS 는 한 superstep 에 이보다 적은 정점만 활성화되므로 상한이 된다.
    """
    if algo not in ALGORITHMS:
        raise GraphArgumentError(f"unknown algorithm {algo!r}, expected pr or bfs")
    per_core: Dict[int, int] = {}
    for v, pid in enumerate(layout.vertex_to_partition):
        per_core[pid] = per_core.get(pid, 0) + 1 + g.degree(v)
    return max(per_core.values(), default=0)
