import collections
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from utils.bsp.engine import run
from utils.bsp.program import Context, Message, SubgraphProgram, VertexProgram
from utils.bsp.records import SimMetrics
from utils.errors import GraphArgumentError
from utils.graph.graph import Graph
from utils.metagraph.metagraph import MetaGraph, build_metagraph
from utils.partitioner.layout import PartitionLayout

logger = logging.getLogger(__name__)


@dataclass
class BfsState:
    """
    :param dist: 정점별 hop 거리, 도달 못하면 None
    :param frontier_hist: i 번째 값 = 거리 i 인 정점 수
    """
    dist: List[Optional[int]]
    source: int
    frontier_hist: List[int] = field(default_factory=list)

    def finish(self):
        hist: List[int] = []
        for d in self.dist:
            if d is None:
                continue
            if d >= len(hist):
                hist.extend([0] * (d + 1 - len(hist)))
            hist[d] += 1
        self.frontier_hist = hist

    @property
    def reached(self) -> int:
        return sum(1 for d in self.dist if d is not None)


@dataclass
class BfsRun:
    """
    :param revisit_count: subgraph 가 처음 이후 다시 활성화된 횟수 (vertex 모델은 0)
    """
    state: BfsState
    metrics: SimMetrics
    revisit_count: int = 0


class BfsVertex(VertexProgram):
    """
    정점은 처음 메시지를 받을 때 (또는 source 일 때) 한번만 활성화되어 거리 + 1 을 모든 이웃에 보내고 halt
    """
    name = 'bfs'

    def __init__(self, source: int):
        self.source = source

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self.state = BfsState(dist=[None] * g.n, source=self.source)

    def initial_active(self):
        return [self.source]

    def compute(self, unit: int, messages: List[Message], ctx: Context) -> bool:
        ctx.vote_to_halt()
        dist = self.state.dist
        if dist[unit] is not None:
            return False
        dist[unit] = min(m.payload for m in messages) if messages else 0
        for w in self.g.adjacency[unit]:
            ctx.send(w, dist[unit] + 1)
        return True

    def result(self) -> BfsState:
        self.state.finish()
        return self.state


class BfsSubgraph(SubgraphProgram):
    """
    활성 subgraph 는 거리가 줄어든 정점들을 seed 로 내부 간선만 따라 다중 출발 BFS 를 하고,
    이번 superstep 에 거리가 바뀐 정점의 remote arc 로만 후보 거리를 보낸다.
    받은 후보가 어떤 정점의 거리도 줄이지 못하면 활성화되지 않는다.
    """
    name = 'bfs'

    def __init__(self, source: int):
        self.source = source

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self.state = BfsState(dist=[None] * g.n, source=self.source)
        self.activations = [0] * mg.q
        self.remote_by_vertex: List[Dict[int, List[int]]] = []
        for sg in mg.subgraphs:
            by_vertex: Dict[int, List[int]] = {}
            for u, w, _ in sg.remote_arcs:
                by_vertex.setdefault(u, []).append(w)
            self.remote_by_vertex.append(by_vertex)

    def initial_active(self):
        return [self.mg.vertex_to_subgraph[self.source]]

    def compute(self, unit: int, messages: List[Message], ctx: Context) -> bool:
        ctx.vote_to_halt()
        dist = self.state.dist
        seeds: Dict[int, int] = {}
        if ctx.superstep == 1 and dist[self.source] is None and self.mg.vertex_to_subgraph[self.source] == unit:
            seeds[self.source] = 0
        for msg in messages:
            current = dist[msg.target]
            best = seeds.get(msg.target, current)
            if best is None or msg.payload < best:
                seeds[msg.target] = msg.payload
        if not seeds:
            return False

        owner = self.mg.vertex_to_subgraph
        adjacency = self.g.adjacency
        for v, d in seeds.items():
            dist[v] = d
        changed = set(seeds)

        # 거리순 seed 큐와 BFS 큐를 합쳐가며 꺼낸다. (가중치가 모두 1 이라 선형)
        pending = collections.deque(sorted(seeds, key=lambda v: (seeds[v], v)))
        frontier: collections.deque = collections.deque()
        popped, scanned = 0, 0
        while pending or frontier:
            if frontier and (not pending or dist[frontier[0]] <= dist[pending[0]]):
                u = frontier.popleft()
            else:
                u = pending.popleft()
            popped += 1
            scanned += len(adjacency[u])
            du = dist[u] + 1
            for w in adjacency[u]:
                if owner[w] != unit:
                    continue
                if dist[w] is None or du < dist[w]:
                    dist[w] = du
                    changed.add(w)
                    frontier.append(w)

        remote = self.remote_by_vertex[unit]
        for u in sorted(changed):
            for w in remote.get(u, ()):
                ctx.send(w, dist[u] + 1)
        ctx.charge(popped + scanned)
        self.activations[unit] += 1
        return True

    @property
    def revisit_count(self) -> int:
        return sum(max(0, a - 1) for a in self.activations)

    def result(self) -> BfsState:
        self.state.finish()
        return self.state


def __check_source(g: Graph, source: int):
    if not 0 <= source < g.n:
        raise GraphArgumentError(f"source {source} out of range for n={g.n}")


def bfs_vertex(g: Graph,
               layout: PartitionLayout,
               source: int,
               mg: Optional[MetaGraph] = None,
               threads: int = 1) \
        -> BfsRun:
    __check_source(g, source)
    mg = mg or build_metagraph(g, layout)
    metrics, state = run(BfsVertex(source), g, layout, mg, g.n + 1, threads)
    return BfsRun(state, metrics)


def bfs_subgraph(g: Graph,
                 layout: PartitionLayout,
                 mg: MetaGraph,
                 source: int,
                 threads: int = 1) \
        -> BfsRun:
    __check_source(g, source)
    program = BfsSubgraph(source)
    metrics, state = run(program, g, layout, mg, g.n + 1, threads)
    logger.info("bfs from %d: %d subgraph revisits", source, program.revisit_count)
    return BfsRun(state, metrics, program.revisit_count)


@dataclass
class BfsSweepRow:
    source: int
    vertex: BfsRun
    subgraph: BfsRun


def bfs_sweep(g: Graph,
              layout: PartitionLayout,
              mg: MetaGraph,
              sources: Sequence[int],
              threads: int = 1) \
        -> List[BfsSweepRow]:
    """
    source 마다 두 모델을 모두 돌린 결과, 평균을 내지 않고 그대로 돌려준다.
    """
    return [BfsSweepRow(s, bfs_vertex(g, layout, s, mg, threads), bfs_subgraph(g, layout, mg, s, threads))
            for s in sources]
