import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from utils import settings
from utils.bsp.engine import run
from utils.bsp.program import Context, Message, SubgraphProgram, VertexProgram
from utils.bsp.records import SimMetrics
from utils.errors import GraphArgumentError
from utils.graph.graph import Graph
from utils.metagraph.metagraph import MetaGraph, build_metagraph
from utils.partitioner.layout import PartitionLayout

logger = logging.getLogger(__name__)


@dataclass
class PrState:
    """
    :param rank: 정점별 rank, 합이 n 이 되도록 둔다 (초기값 1.0)
    :param mass_history: superstep 이 끝날 때마다의 rank 합
    """
    rank: List[float]
    damping: float
    iterations: int
    mass_history: List[float] = field(default_factory=list)


@dataclass
class PrRun:
    state: PrState
    metrics: SimMetrics


def __check_args(iterations: int, damping: float):
    if iterations < 1:
        raise GraphArgumentError(f"iterations must be >= 1, got {iterations}")
    if not 0.0 < damping < 1.0:
        raise GraphArgumentError(f"damping must be in (0, 1), got {damping}")


class _PageRankMixin:
    """
    superstep 1..iterations: 자기 rank / 차수를 이웃에게 보낸다. (superstep 2 부터는 먼저 rank 갱신)
    superstep iterations + 1: 마지막으로 받은 값으로 갱신만 하고 halt
    결국 rank 갱신은 정확히 iterations 번
    """
    state: PrState

    def _init_state(self, n: int, iterations: int, damping: float):
        self.state = PrState(rank=[1.0] * n, damping=damping, iterations=iterations)

    def initial_active(self):
        return range(self._unit_total())

    def after_superstep(self, record):
        self.state.mass_history.append(sum(self.state.rank))

    def result(self) -> PrState:
        return self.state


class PageRankVertex(_PageRankMixin, VertexProgram):
    name = 'pagerank'

    def __init__(self, iterations: int, damping: float):
        self.iterations = iterations
        self.damping = damping

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self._init_state(g.n, self.iterations, self.damping)

    def _unit_total(self) -> int:
        return self.g.n

    def compute(self, unit: int, messages: List[Message], ctx: Context) -> bool:
        rank = self.state.rank
        d = self.damping
        if ctx.superstep > 1:
            total = 0.0
            for msg in messages:
                total += msg.payload
            rank[unit] = (1.0 - d) + d * total

        if ctx.superstep <= self.iterations:
            neighbors = self.g.adjacency[unit]
            if neighbors:
                share = rank[unit] / len(neighbors)
                for w in neighbors:
                    ctx.send(w, share)
        else:
            ctx.vote_to_halt()
        return True


class PageRankSubgraph(_PageRankMixin, SubgraphProgram):
    """
    내부 이웃의 기여는 직전 rank 에서 바로 읽고, 다른 subgraph 이웃의 기여만 메시지로 받는다.
    기여는 정점마다 이웃 id 오름차순으로 더한다. (vertex 모델과 같은 순서)
    """
    name = 'pagerank'

    def __init__(self, iterations: int, damping: float):
        self.iterations = iterations
        self.damping = damping

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self._init_state(g.n, self.iterations, self.damping)

    def _unit_total(self) -> int:
        return self.mg.q

    def compute(self, unit: int, messages: List[Message], ctx: Context) -> bool:
        sg = self.mg.subgraphs[unit]
        owner = self.mg.vertex_to_subgraph
        adjacency = self.g.adjacency
        rank = self.state.rank
        d = self.damping

        if ctx.superstep > 1:
            incoming: Dict[Tuple[int, int], float] = {}
            for msg in messages:
                source, share = msg.payload
                incoming[(source, msg.target)] = share
            updated = []
            for v in sg.vertices:
                total = 0.0
                for w in adjacency[v]:
                    if owner[w] == unit:
                        total += rank[w] / len(adjacency[w])
                    else:
                        total += incoming[(w, v)]
                updated.append((1.0 - d) + d * total)
            for v, value in zip(sg.vertices, updated):
                rank[v] = value

        if ctx.superstep <= self.iterations:
            for u, w, _ in sg.remote_arcs:
                ctx.send(w, (u, rank[u] / len(adjacency[u])))
        else:
            ctx.vote_to_halt()
        ctx.charge(sg.weight_v + sg.weight_e + len(sg.remote_arcs))
        return True


def pr_vertex(g: Graph,
              layout: PartitionLayout,
              mg: Optional[MetaGraph] = None,
              iterations: int = settings.DEFAULT_ITERATIONS,
              damping: float = settings.DEFAULT_DAMPING,
              threads: int = 1) \
        -> PrRun:
    __check_args(iterations, damping)
    mg = mg or build_metagraph(g, layout)
    metrics, state = run(PageRankVertex(iterations, damping), g, layout, mg, iterations + 1, threads)
    return PrRun(state, metrics)


def pr_subgraph(g: Graph,
                layout: PartitionLayout,
                mg: Optional[MetaGraph] = None,
                iterations: int = settings.DEFAULT_ITERATIONS,
                damping: float = settings.DEFAULT_DAMPING,
                threads: int = 1) \
        -> PrRun:
    __check_args(iterations, damping)
    mg = mg or build_metagraph(g, layout)
    metrics, state = run(PageRankSubgraph(iterations, damping), g, layout, mg, iterations + 1, threads)
    return PrRun(state, metrics)
