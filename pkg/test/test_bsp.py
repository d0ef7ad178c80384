from typing import List

import pytest

from utils.bsp import BspEngine, Context, Message, SubgraphProgram, VertexProgram, run, subgraph_cores
from utils.errors import GraphArgumentError, IntegrityError, SimulationError
from utils.graph import Graph, connected_components, generate_path, generate_powerlaw, generate_star
from utils.metagraph import build_metagraph
from utils.partitioner import ClusterSpec, build_layout, partition_hash


class Idle(VertexProgram):
    name = 'idle'

    def initial_active(self):
        return []

    def compute(self, unit, messages, ctx):
        return True


class NeverHalts(VertexProgram):
    name = 'never-halts'

    def initial_active(self):
        return [0]

    def compute(self, unit, messages, ctx):
        return True


class Broken(VertexProgram):
    name = 'broken'

    def initial_active(self):
        return [0]

    def compute(self, unit, messages, ctx):
        if ctx.superstep == 2:
            raise KeyError('boom')
        ctx.send(1, 'x')
        ctx.vote_to_halt()
        return True


class MinLabel(VertexProgram):
    """
    연결 요소마다 가장 작은 정점 id 를 퍼뜨린다.
    """
    name = 'min-label'

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self.label = list(range(g.n))
        self.seen: List[List[Message]] = [[] for _ in range(g.n)]

    def initial_active(self):
        return range(self.g.n)

    def compute(self, unit, messages, ctx):
        self.seen[unit].extend(messages)
        ctx.vote_to_halt()
        best = min((m.payload for m in messages), default=self.label[unit])
        if ctx.superstep > 1 and best >= self.label[unit]:
            return False
        self.label[unit] = min(best, self.label[unit])
        for w in self.g.neighbors(unit):
            ctx.send(w, self.label[unit])
        return True

    def result(self):
        return self.label


class Gather(SubgraphProgram):
    """
    subgraph 0 이 모든 정점에 한번씩 메시지를 보내고, 받은 쪽은 비용 2 를 기록한다.
    """
    name = 'gather'

    def setup(self, g, layout, mg):
        super().setup(g, layout, mg)
        self.received = {}

    def initial_active(self):
        return [0]

    def compute(self, unit, messages, ctx: Context):
        ctx.vote_to_halt()
        if ctx.superstep == 1:
            for v in reversed(range(self.g.n)):
                ctx.send(v, v)
            ctx.charge(1)
            return True
        self.received[unit] = [m.target for m in messages]
        ctx.charge(2)
        return True

    def result(self):
        return self.received


@pytest.fixture
def p4_setup():
    g = generate_path(4)
    layout = build_layout(g, 'DP', ClusterSpec(k=2, c=2))
    return g, layout, build_metagraph(g, layout)


@pytest.fixture
def star_setup():
    g = generate_star(6)
    layout = partition_hash(g, ClusterSpec(k=2, c=1))
    return g, layout, build_metagraph(g, layout)


def test_no_active_units(p4_setup):
    metrics, _ = run(Idle(), *p4_setup, max_supersteps=5)
    assert metrics.supersteps == []
    assert metrics.total_supersteps == 0
    assert not metrics.truncated


def test_truncation(p4_setup):
    metrics, _ = run(NeverHalts(), *p4_setup, max_supersteps=3)
    assert metrics.truncated
    assert metrics.total_supersteps == 3
    assert [r.active_units for r in metrics.supersteps] == [1, 1, 1]


def test_bad_max_supersteps(p4_setup):
    with pytest.raises(GraphArgumentError):
        run(Idle(), *p4_setup, max_supersteps=0)


def test_program_error_is_wrapped(p4_setup):
    with pytest.raises(SimulationError) as e:
        run(Broken(), *p4_setup, max_supersteps=5)
    assert e.value.superstep == 2
    assert e.value.unit == 1
    assert isinstance(e.value.__cause__, KeyError)


def test_layout_mismatch(p4_setup):
    g, layout, mg = p4_setup
    other = build_layout(g, 'HA', ClusterSpec(k=2, c=1))
    with pytest.raises(IntegrityError):
        BspEngine(g, other, mg)


def test_vertex_costs_and_messages(p4_setup):
    """
    P4, DP {0,1}|{2,3}: 첫 superstep 에 모든 정점이 이웃에게 보낸다.
    """
    metrics, labels = run(MinLabel(), *p4_setup, max_supersteps=10)
    assert labels == [0, 0, 0, 0]
    first = metrics.supersteps[0]
    assert first.active_units == 4
    assert first.compute_cost_per_machine == (5, 5)
    assert first.logical_msgs == 6
    assert first.logical_msgs_remote == 2
    assert first.physical_msgs == 6
    assert not metrics.truncated


def test_min_label_matches_components():
    g = Graph.from_edges(9, [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7), (7, 8)])
    layout = partition_hash(g, ClusterSpec(k=3, c=1))
    metrics, labels = run(MinLabel(), g, layout, build_metagraph(g, layout), max_supersteps=20)
    for component in connected_components(g):
        assert {labels[v] for v in component} == {min(component)}


def test_inactive_wakeups_not_counted(p4_setup):
    metrics, _ = run(MinLabel(), *p4_setup, max_supersteps=10)
    last = metrics.supersteps[-1]
    # 마지막 superstep 은 메시지만 받고 아무도 label 을 바꾸지 않는다
    assert last.active_units == 0
    assert last.invoked_units > 0
    assert metrics.total_supersteps == len(metrics.supersteps) - 1


def test_threads_same_counters():
    g = generate_powerlaw(300, 2, seed=4)
    layout = build_layout(g, 'FP', ClusterSpec(k=2, c=2), seed=1)
    mg = build_metagraph(g, layout)
    sequential, labels = run(MinLabel(), g, layout, mg, max_supersteps=50)
    threaded, threaded_labels = run(MinLabel(), g, layout, mg, max_supersteps=50, threads=4)
    assert sequential.to_dict() == threaded.to_dict()
    assert labels == threaded_labels


def test_subgraph_messages_sorted_and_physical(star_setup):
    g, layout, mg = star_setup
    metrics, received = run(Gather(), g, layout, mg, max_supersteps=5)
    # subgraph 0 = {0,2,4,6}, 잎 1, 3, 5 는 각자 subgraph
    assert received == {0: [0, 2, 4, 6], 1: [1], 2: [3], 3: [5]}
    first = metrics.supersteps[0]
    assert first.logical_msgs == 7
    assert first.physical_msgs == 4
    assert metrics.supersteps[1].active_units == 4


def test_subgraph_cores(star_setup):
    _, _, mg = star_setup
    # 머신 0: subgraph 0 하나, 머신 1: 1, 2, 3 을 core 하나에
    assert subgraph_cores(mg, 1) == [0, 0, 0, 0]
    assert subgraph_cores(mg, 2) == [0, 0, 1, 0]


def test_subgraph_cost_uses_charge(star_setup):
    metrics, _ = run(Gather(), *star_setup, max_supersteps=5)
    assert metrics.supersteps[0].compute_cost_per_machine == (1, 0)
    # 머신 1 에는 core 가 하나라 subgraph 3 개 비용이 더해진다
    assert metrics.supersteps[1].compute_cost_per_machine == (2, 6)
    assert metrics.makespan_estimate == 1 + 6


def test_metrics_export(tmp_path, p4_setup):
    metrics, _ = run(MinLabel(), *p4_setup, max_supersteps=10)
    metrics.save_csv(str(tmp_path / 'm.csv'))
    metrics.save_json(str(tmp_path / 'm.json'))
    frame = metrics.to_frame()
    assert list(frame['index']) == list(range(1, len(metrics.supersteps) + 1))
    assert (tmp_path / 'm.json').read_text(encoding='utf-8').startswith('{')
