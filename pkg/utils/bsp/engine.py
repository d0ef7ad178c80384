import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Tuple

from utils.errors import GraphArgumentError, IntegrityError, SimulationError
from utils.graph.graph import Graph
from utils.metagraph.metagraph import MetaGraph
from utils.partitioner.layout import PartitionLayout
from utils.bsp.program import SUBGRAPH, VERTEX, Context, Message, Program
from utils.bsp.records import SimMetrics, SuperstepRecord

logger = logging.getLogger(__name__)


def subgraph_cores(mg: MetaGraph, c: int) -> List[int]:
    """
    머신마다 subgraph 를 weight_V 내림차순 (같으면 id 오름차순) 으로 c 개 core 에 번갈아 나눠준다.
    :return: subgraph id -> 머신 안의 core 번호
    """
    by_machine: Dict[int, List[int]] = {}
    for s in sorted(mg.subgraphs, key=lambda s: (-s.weight_v, s.id)):
        by_machine.setdefault(s.machine, []).append(s.id)
    cores = [0] * mg.q
    for subgraph_ids in by_machine.values():
        for position, sid in enumerate(subgraph_ids):
            cores[sid] = position % c
    return cores


class BspEngine:
    """
    superstep 시뮬레이터

    매 superstep 마다
    1. 예약된 unit (halt 안 한 unit + 메시지를 받은 unit) 을 id 순으로 compute
    2. barrier 에서 보낸 메시지를 (보낸 unit, 받는 정점) 순으로 정렬해 다음 superstep 에 전달
    3. 메시지/비용 카운터를 SuperstepRecord 로 남긴다.
    """
    g: Graph
    layout: PartitionLayout
    mg: MetaGraph
    threads: int

    def __init__(self, g: Graph, layout: PartitionLayout, mg: MetaGraph, threads: int = 1):
        if layout.n != g.n or len(mg.vertex_to_subgraph) != g.n:
            raise IntegrityError("graph, layout and meta-graph do not describe the same vertex set")
        if mg.layout_fingerprint and mg.layout_fingerprint != layout.fingerprint:
            raise IntegrityError("meta-graph was built from a different partition layout")
        self.g = g
        self.layout = layout
        self.mg = mg
        self.threads = max(1, threads)

    def __unit_count(self, model: str) -> int:
        return self.g.n if model == VERTEX else self.mg.q

    def __machine_of_unit(self, model: str, unit: int) -> int:
        if model == VERTEX:
            return self.layout.machine_of_vertex(unit)
        return self.mg.subgraphs[unit].machine

    def __core_of_unit(self, model: str, unit: int, sg_cores: List[int]) -> Tuple[int, int]:
        if model == VERTEX:
            return self.layout.machine_of_vertex(unit), self.layout.vertex_to_partition[unit]
        return self.mg.subgraphs[unit].machine, sg_cores[unit]

    def __recipient(self, model: str, target: int) -> int:
        if not 0 <= target < self.g.n:
            raise IntegrityError(f"message addressed to unknown vertex {target}")
        return target if model == VERTEX else self.mg.vertex_to_subgraph[target]

    def __compute_one(self, program: Program, superstep: int, unit: int, inbox: List[Message]) \
            -> Tuple[bool, Context]:
        ctx = Context(superstep, unit)
        try:
            activated = program.compute(unit, inbox, ctx)
        except Exception as e:
            raise SimulationError(superstep, unit, e) from e
        return bool(activated), ctx

    def run(self, program: Program, max_supersteps: int) \
            -> Tuple[SimMetrics, Any]:
        """
        :return: (카운터, program.result())
        :exception SimulationError: 프로그램 compute 에서 예외가 난 경우
        """
        if max_supersteps < 1:
            raise GraphArgumentError(f"max_supersteps must be >= 1, got {max_supersteps}")
        model = program.model
        if model not in (VERTEX, SUBGRAPH):
            raise GraphArgumentError(f"unknown execution model {model!r}")

        program.setup(self.g, self.layout, self.mg)
        metrics = SimMetrics(
            program=program.name,
            model=model,
            graph_fingerprint=self.g.fingerprint,
            layout_fingerprint=self.layout.fingerprint,
            metagraph_fingerprint=self.mg.fingerprint,
        )
        units = self.__unit_count(model)
        sg_cores = subgraph_cores(self.mg, self.layout.cluster.c) if model == SUBGRAPH else []
        machines = self.layout.cluster.k

        awake = set(program.initial_active())
        if any(not 0 <= u < units for u in awake):
            raise IntegrityError("initial active unit out of range")
        inbox: Dict[int, List[Message]] = {}

        superstep = 0
        while awake or inbox:
            if superstep == max_supersteps:
                metrics.truncated = True
                logger.warning("%s truncated after %d supersteps", program.name, superstep)
                break
            superstep += 1
            scheduled = sorted(awake.union(inbox))

            if self.threads > 1:
                with ThreadPoolExecutor(max_workers=self.threads) as pool:
                    results = list(pool.map(
                        lambda u: self.__compute_one(program, superstep, u, inbox.get(u, [])), scheduled))
            else:
                results = [self.__compute_one(program, superstep, u, inbox.get(u, [])) for u in scheduled]

            core_cost: Dict[Tuple[int, int], int] = {}
            active = 0
            awake = set()
            outgoing: List[Tuple[int, Message]] = []
            for unit, (activated, ctx) in zip(scheduled, results):
                if not ctx.halted:
                    awake.add(unit)
                for msg in ctx.outbox:
                    outgoing.append((self.__recipient(model, msg.target), msg))
                if not activated:
                    continue
                active += 1
                cost = 1 + self.g.degree(unit) if model == VERTEX else ctx.cost
                core = self.__core_of_unit(model, unit, sg_cores)
                core_cost[core] = core_cost.get(core, 0) + cost

            local, remote = 0, 0
            pairs = set()
            for recipient, msg in outgoing:
                if self.__machine_of_unit(model, msg.sender) == self.__machine_of_unit(model, recipient):
                    local += 1
                else:
                    remote += 1
                pairs.add((msg.sender, recipient))
            physical = local + remote if model == VERTEX else len(pairs)

            # 정렬은 안정 정렬, 같은 (보낸 unit, 받는 정점) 사이에서는 보낸 순서 유지
            outgoing.sort(key=lambda item: (item[1].sender, item[1].target))
            inbox = {}
            for recipient, msg in outgoing:
                inbox.setdefault(recipient, []).append(msg)

            per_machine = [0] * machines
            for (machine, _), cost in core_cost.items():
                per_machine[machine] = max(per_machine[machine], cost)

            record = SuperstepRecord(
                index=superstep,
                active_units=active,
                invoked_units=len(scheduled),
                logical_msgs_local=local,
                logical_msgs_remote=remote,
                physical_msgs=physical,
                compute_cost_per_machine=tuple(per_machine),
            )
            metrics.supersteps.append(record)
            program.after_superstep(record)
            logger.debug("superstep %d: active=%d invoked=%d logical=%d physical=%d max_cost=%d",
                         superstep, active, len(scheduled), local + remote, physical, record.machine_max_cost)

        logger.info("%s/%s: %d supersteps, %d logical, %d physical, makespan %d",
                    program.name, model, metrics.total_supersteps, metrics.total_logical,
                    metrics.total_physical, metrics.makespan_estimate)
        return metrics, program.result()


def run(program: Program,
        g: Graph,
        layout: PartitionLayout,
        mg: MetaGraph,
        max_supersteps: int,
        threads: int = 1) \
        -> Tuple[SimMetrics, Any]:
    return BspEngine(g, layout, mg, threads).run(program, max_supersteps)
