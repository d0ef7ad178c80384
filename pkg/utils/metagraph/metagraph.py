import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple

from utils.errors import IntegrityError
from utils.graph.components import wcc
from utils.graph.graph import Graph
from utils.partitioner.layout import PartitionLayout

logger = logging.getLogger(__name__)

LOCAL = 'local'
REMOTE = 'remote'


@dataclass(frozen=True)
class Subgraph:
    """
    파티션 내부 간선으로 이어진 연결 요소 하나 (subgraph-centric 계산 단위)

    :param vertices: 정렬된 정점 id
    :param internal_arc_count: 내부 방향 arc 수 (무방향 간선 하나당 2)
    :param remote_arcs: (내 정점, 다른 파티션 정점, 그 정점의 subgraph id)
    """
    id: int
    partition: int
    machine: int
    vertices: Tuple[int, ...]
    internal_arc_count: int
    remote_arcs: Tuple[Tuple[int, int, int], ...]

    @property
    def weight_v(self) -> int:
        return len(self.vertices)

    @property
    def weight_e(self) -> int:
        return self.internal_arc_count


@dataclass(frozen=True)
class MetaVertex:
    id: int
    weight_v: int
    weight_e: int
    partition: int
    machine: int


@dataclass(frozen=True)
class MetaEdge:
    """
    subgraph src -> dst 방향 meta-edge, weight 는 src 에서 dst 로 가는 arc 수
    """
    src: int
    dst: int
    weight: int
    locality: str


@dataclass(frozen=True)
class MetaGraph:
    subgraphs: Tuple[Subgraph, ...]
    meta_edges: Tuple[MetaEdge, ...]
    vertex_to_subgraph: Tuple[int, ...]
    graph_fingerprint: str
    layout_fingerprint: str

    @property
    def q(self) -> int:
        return len(self.subgraphs)

    @property
    def meta_vertices(self) -> List[MetaVertex]:
        return [MetaVertex(s.id, s.weight_v, s.weight_e, s.partition, s.machine) for s in self.subgraphs]

    def out_edges(self) -> Dict[int, List[MetaEdge]]:
        out: Dict[int, List[MetaEdge]] = {s.id: [] for s in self.subgraphs}
        for e in self.meta_edges:
            out[e.src].append(e)
        return out

    def undirected_graph(self) -> Graph:
        """
        대칭 meta-edge 쌍을 무방향 간선 하나로 본 meta-graph
        """
        return Graph.from_edges(self.q, ((e.src, e.dst) for e in self.meta_edges))

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.graph_fingerprint}:{self.layout_fingerprint};".encode('ascii'))
        for s in self.subgraphs:
            h.update(f"{s.id}/{s.partition}/{s.machine}/{','.join(map(str, s.vertices))};".encode('ascii'))
        for e in self.meta_edges:
            h.update(f"{e.src}>{e.dst}={e.weight};".encode('ascii'))
        return h.hexdigest()


def __partition_components(g: Graph, part: Tuple[int, ...], members: List[int]) -> List[List[int]]:
    if not members:
        return []
    pid = part[members[0]]
    arcs = [(u, w) for u in members for w in g.adjacency[u] if u < w and part[w] == pid]
    return wcc(members, arcs)


def build_metagraph(g: Graph, layout: PartitionLayout, threads: int = 1) -> MetaGraph:
    """
    파티션마다 내부 간선의 연결 요소를 subgraph 로 만들고, subgraph 사이 arc 수로 meta-edge 를 만든다.
    subgraph id 는 (파티션 오름차순, 요소 순서) 로 매긴다. 요소 순서는 크기 내림차순, 최소 정점 id 오름차순.

    :param threads: 파티션별 연결 요소 계산에 쓸 thread 수 (결과는 같다)
    :exception IntegrityError: 분할과 그래프의 정점 수가 다른 경우
    """
    if layout.n != g.n:
        raise IntegrityError(f"layout covers {layout.n} vertices but graph has {g.n}")
    part = layout.vertex_to_partition
    members = layout.partition_members()

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_partition = list(pool.map(lambda m: __partition_components(g, part, m), members))
    else:
        per_partition = [__partition_components(g, part, m) for m in members]

    vertex_to_subgraph = [-1] * g.n
    owners: List[Tuple[int, List[int]]] = []
    for pid, components in enumerate(per_partition):
        for component in components:
            sid = len(owners)
            for v in component:
                vertex_to_subgraph[v] = sid
            owners.append((pid, component))

    subgraphs: List[Subgraph] = []
    weights: Dict[Tuple[int, int], int] = {}
    for sid, (pid, component) in enumerate(owners):
        internal = 0
        remote: List[Tuple[int, int, int]] = []
        for u in component:
            for w in g.adjacency[u]:
                if part[w] == pid:
                    internal += 1
                else:
                    target = vertex_to_subgraph[w]
                    remote.append((u, w, target))
                    weights[(sid, target)] = weights.get((sid, target), 0) + 1
        subgraphs.append(Subgraph(
            id=sid,
            partition=pid,
            machine=layout.partition_to_machine[pid],
            vertices=tuple(sorted(component)),
            internal_arc_count=internal,
            remote_arcs=tuple(remote),
        ))

    meta_edges = []
    for (src, dst), weight in sorted(weights.items()):
        same = subgraphs[src].machine == subgraphs[dst].machine
        meta_edges.append(MetaEdge(src, dst, weight, LOCAL if same else REMOTE))

    mg = MetaGraph(
        subgraphs=tuple(subgraphs),
        meta_edges=tuple(meta_edges),
        vertex_to_subgraph=tuple(vertex_to_subgraph),
        graph_fingerprint=g.fingerprint,
        layout_fingerprint=layout.fingerprint,
    )
    logger.info("meta-graph: p=%d q=%d meta-edges=%d", layout.p, mg.q, len(meta_edges))
    return mg
