import logging
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

import pandas as pd

from utils import settings
from utils.errors import GraphArgumentError
from utils.graph.components import connected_components
from utils.graph.degree import DegreeCdf, cdf_from_degrees
from utils.graph.distance import eccentricity
from utils.graph.graph import Graph
from utils.metagraph.metagraph import LOCAL, MetaGraph, build_metagraph
from utils.partitioner.layout import STRATEGIES, ClusterSpec, PartitionLayout
from utils.partitioner.metrics import edge_cut, machine_edge_cut
from utils.partitioner.strategies import build_layout

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ['Strategy', 'Parts', '|V̂|', 'WCC%', 'dia', '|Ê|', 'Cut%']


@dataclass(frozen=True)
class MetaStats:
    """
    분할 하나에 대한 meta-graph 요약

    :param wcc_pct: 가장 큰 p 개 subgraph 에 들어간 정점 비율
    :param meta_diameter: 가장 큰 meta 연결 요소의 (무방향) 지름
    :param meta_components: meta-graph 의 연결 요소 수
    """
    strategy: str
    machines: int
    p: int
    q: int
    meta_edge_count: int
    wcc_pct: float
    meta_diameter: int
    cut_pct: float
    meta_components: int
    meta_radius: int
    local_meta_edges: int
    remote_meta_edges: int
    machine_cut: int

    def table_row(self) -> dict:
        return {
            'Strategy': self.strategy,
            'Parts': self.p,
            '|V̂|': self.q,
            'WCC%': self.wcc_pct,
            'dia': self.meta_diameter,
            '|Ê|': self.meta_edge_count,
            'Cut%': self.cut_pct,
        }


def __largest_meta_component(mg: MetaGraph):
    if mg.q == 0:
        raise GraphArgumentError("meta-graph has no meta-vertices")
    meta = mg.undirected_graph()
    return meta, connected_components(meta)


def meta_eccentricity(mg: MetaGraph, meta_vertex: int) -> int:
    """
    meta-vertex 에서 같은 meta 연결 요소 안의 가장 먼 meta-vertex 까지의 hop 수
    """
    if not 0 <= meta_vertex < mg.q:
        raise GraphArgumentError(f"meta-vertex {meta_vertex} out of range for q={mg.q}")
    return eccentricity(mg.undirected_graph(), meta_vertex)


def meta_diameter(mg: MetaGraph) -> int:
    """
    가장 큰 meta 연결 요소에서 모든 meta-vertex BFS 로 구한 정확한 지름
    """
    meta, components = __largest_meta_component(mg)
    return max(eccentricity(meta, v) for v in components[0])


def meta_radius(mg: MetaGraph) -> int:
    meta, components = __largest_meta_component(mg)
    return min(eccentricity(meta, v) for v in components[0])


def meta_degree_cdf(mg: MetaGraph) -> DegreeCdf:
    """
    무방향 meta-degree 의 누적 분포
    """
    return cdf_from_degrees(mg.undirected_graph().degrees())


def meta_stats(g: Graph, mg: MetaGraph, layout: PartitionLayout) -> MetaStats:
    meta, components = __largest_meta_component(mg)
    eccentricities = [eccentricity(meta, v) for v in components[0]]
    sizes = sorted((s.weight_v for s in mg.subgraphs), reverse=True)
    _, cut_fraction = edge_cut(g, layout)
    local_edges = sum(1 for e in mg.meta_edges if e.locality == LOCAL)
    return MetaStats(
        strategy=layout.strategy,
        machines=layout.cluster.k,
        p=layout.p,
        q=mg.q,
        meta_edge_count=len(mg.meta_edges),
        wcc_pct=sum(sizes[:layout.p]) / g.n if g.n else 0.0,
        meta_diameter=max(eccentricities),
        cut_pct=cut_fraction,
        meta_components=len(components),
        meta_radius=min(eccentricities),
        local_meta_edges=local_edges,
        remote_meta_edges=len(mg.meta_edges) - local_edges,
        machine_cut=machine_edge_cut(g, layout),
    )


def stats_frame(rows: Sequence[MetaStats], full: bool = False) -> pd.DataFrame:
    """
    :param full: True 면 MetaStats 모든 필드, False 면 표 형식 컬럼만
    """
    if full:
        return pd.DataFrame([asdict(r) for r in rows])
    return pd.DataFrame([r.table_row() for r in rows], columns=TABLE_COLUMNS)


def strategy_table(g: Graph,
                   clusters: Sequence[ClusterSpec],
                   seed: int = 0,
                   balance_factor: float = settings.DEFAULT_BALANCE_FACTOR,
                   strategies: Optional[Sequence[str]] = None) \
        -> List[MetaStats]:
    """
    클러스터 크기마다 DP, FP, HP, HA 로 나눠 meta-graph 요약을 만든다.
    """
    rows = []
    for cluster in clusters:
        for strategy in strategies or STRATEGIES:
            layout = build_layout(g, strategy, cluster, seed, balance_factor)
            mg = build_metagraph(g, layout)
            rows.append(meta_stats(g, mg, layout))
            logger.info("table row %s k=%d: q=%d |E^|=%d", strategy, cluster.k, rows[-1].q,
                        rows[-1].meta_edge_count)
    return rows
