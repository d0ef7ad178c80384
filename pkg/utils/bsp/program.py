from abc import ABCMeta, abstractmethod
from typing import Any, Iterable, List, NamedTuple, Optional

from utils.graph.graph import Graph
from utils.metagraph.metagraph import MetaGraph
from utils.partitioner.layout import PartitionLayout

VERTEX = 'vertex'
SUBGRAPH = 'subgraph'


class Message(NamedTuple):
    """
    :param sender: 보낸 unit id (vertex 모델은 정점 id, subgraph 모델은 subgraph id)
    :param target: 받는 정점 id
    """
    sender: int
    target: int
    payload: Any


class Context:
    """
    compute 한번 동안 쓰는 창구, 메시지 전송/비용 기록/halt 투표
    """
    superstep: int
    outbox: List[Message]
    cost: int
    halted: bool

    def __init__(self, superstep: int, unit: int):
        self.superstep = superstep
        self.unit = unit
        self.outbox = []
        self.cost = 0
        self.halted = False

    def send(self, target: int, payload: Any):
        self.outbox.append(Message(self.unit, target, payload))

    def charge(self, units: int):
        self.cost += units

    def vote_to_halt(self):
        self.halted = True


class Program(metaclass=ABCMeta):
    """
    BSP 프로그램 인터페이스
    halt 투표를 하지 않은 unit 은 다음 superstep 에도 호출되고, halt 한 unit 은 메시지를 받으면 다시 호출된다.
    """
    name: str = 'program'
    model: str

    g: Optional[Graph] = None
    layout: Optional[PartitionLayout] = None
    mg: Optional[MetaGraph] = None

    def setup(self, g: Graph, layout: PartitionLayout, mg: MetaGraph):
        self.g = g
        self.layout = layout
        self.mg = mg

    @abstractmethod
    def initial_active(self) -> Iterable[int]:
        pass

    @abstractmethod
    def compute(self, unit: int, messages: List[Message], ctx: Context) -> bool:
        """
        :param messages: (보낸 unit, 받는 정점) 순으로 정렬된 메시지
        :return: 이 unit 이 이번 superstep 에 일을 했는지 (active 로 셀지)
        """
        pass

    def after_superstep(self, record):
        pass

    def result(self) -> Any:
        return None


class VertexProgram(Program, metaclass=ABCMeta):
    """
    unit = 정점, 비용은 엔진이 1 + deg(v) 로 매긴다.
    """
    model = VERTEX


class SubgraphProgram(Program, metaclass=ABCMeta):
    """
    unit = subgraph, 비용은 프로그램이 ctx.charge 로 직접 기록한다.
    """
    model = SUBGRAPH
