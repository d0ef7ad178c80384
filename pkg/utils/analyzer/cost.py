from dataclasses import dataclass
from typing import Dict

from utils import settings
from utils.errors import GraphArgumentError
from utils.metagraph.metagraph import MetaGraph
from utils.programs.cost import ALGORITHMS


@dataclass(frozen=True)
class ExpectedCost:
    """
    meta-graph 만 보고 예측한 비용

    :param per_superstep: 가장 무거운 meta-vertex 의 superstep 당 비용
    :param total: per_superstep * supersteps
    :param wave_caveat: 앞쪽 superstep 은 예측보다 가볍다 (BFS 는 전선이 퍼지는 동안 일부만 활성)
    """
    algo: str
    per_superstep: int
    supersteps: int
    total: int
    wave_caveat: bool


def expected_cost(mg: MetaGraph, algo: str = 'pr', supersteps: int = settings.DEFAULT_ITERATIONS) -> ExpectedCost:
    """
    pr: max over meta-vertex (weight_V + weight_E + 나가는 meta-edge weight 합)
    bfs: max over meta-vertex (weight_V + weight_E)
    """
    if algo not in ALGORITHMS:
        raise GraphArgumentError(f"unknown algorithm {algo!r}, expected pr or bfs")
    if mg.q == 0:
        raise GraphArgumentError("expected cost needs a non-empty meta-graph")
    outgoing: Dict[int, int] = {}
    for e in mg.meta_edges:
        outgoing[e.src] = outgoing.get(e.src, 0) + e.weight

    if algo == 'pr':
        per_superstep = max(s.weight_v + s.weight_e + outgoing.get(s.id, 0) for s in mg.subgraphs)
    else:
        per_superstep = max(s.weight_v + s.weight_e for s in mg.subgraphs)
    return ExpectedCost(algo, per_superstep, supersteps, per_superstep * supersteps, algo == 'bfs')
