import numpy as np
import pytest

from utils.errors import GraphArgumentError
from utils.graph import Graph, bfs_distances, eccentricity, generate_cycle, generate_grid, generate_path, \
    generate_powerlaw, generate_star
from utils.metagraph import build_metagraph, meta_eccentricity
from utils.partitioner import ClusterSpec, PartitionLayout, build_layout
from utils.programs import bfs_subgraph, bfs_sweep, bfs_vertex, expected_vertex_cost, pr_subgraph, pr_vertex

CLUSTER = ClusterSpec(k=2, c=2)

GRAPHS = {
    'grid8': lambda: generate_grid(8, 8),
    'grid16': lambda: generate_grid(16, 16),
    'powerlaw500': lambda: generate_powerlaw(500, 2, seed=21),
    'path20': lambda: generate_path(20),
    'cycle15': lambda: generate_cycle(15),
    'star10': lambda: generate_star(10),
}


def revisit_fixture():
    """
    source 0 의 subgraph 에서 B={1,2,3} 에 먼저 긴 경로로 도착하고, 한 superstep 뒤 C={4} 를 거쳐 더 짧은 거리가 온다.
    """
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)])
    layout = PartitionLayout(
        strategy='FP',
        cluster=ClusterSpec(k=1, c=3),
        p=3,
        vertex_to_partition=(0, 1, 1, 1, 2),
        partition_to_machine=(0, 0, 0),
        balance_factor=3.0,
        graph_fingerprint=g.fingerprint,
    )
    return g, layout, build_metagraph(g, layout)


def pagerank_oracle(g: Graph, iterations: int, damping: float) -> np.ndarray:
    transfer = np.zeros((g.n, g.n))
    for u, adj in enumerate(g.adjacency):
        for w in adj:
            transfer[w, u] = 1.0 / len(adj)
    rank = np.ones(g.n)
    for _ in range(iterations):
        rank = (1.0 - damping) + damping * transfer @ rank
    return rank


def check_bfs_run(g, layout, mg, source):
    expected = bfs_distances(g, source)
    vertex = bfs_vertex(g, layout, source, mg)
    subgraph = bfs_subgraph(g, layout, mg, source)
    assert vertex.state.dist == expected
    assert subgraph.state.dist == expected

    lower = meta_eccentricity(mg, mg.vertex_to_subgraph[source]) + 1
    assert lower <= subgraph.metrics.total_supersteps <= vertex.metrics.total_supersteps
    assert vertex.metrics.total_supersteps == eccentricity(g, source) + 1

    reached_degree = sum(g.degree(v) for v, d in enumerate(expected) if d is not None)
    assert vertex.metrics.total_logical == reached_degree
    assert not vertex.metrics.truncated and not subgraph.metrics.truncated
    return vertex, subgraph


@pytest.mark.parametrize('graph_name', sorted(GRAPHS))
@pytest.mark.parametrize('strategy', ['DP', 'FP', 'HP', 'HA'])
def test_bfs_equivalence_matrix(graph_name, strategy):
    g = GRAPHS[graph_name]()
    layout = build_layout(g, strategy, CLUSTER, seed=13)
    mg = build_metagraph(g, layout)
    for source in (0, g.n - 1):
        check_bfs_run(g, layout, mg, source)


@pytest.mark.parametrize('strategy', ['DP', 'HP'])
def test_bfs_large_inputs(strategy):
    for g in (generate_grid(64, 64), generate_powerlaw(5000, 2, seed=3)):
        layout = build_layout(g, strategy, CLUSTER, seed=1)
        check_bfs_run(g, layout, build_metagraph(g, layout), g.n // 2)


def test_bfs_connected_sends_every_arc():
    g = generate_grid(6, 6)
    layout = build_layout(g, 'FP', CLUSTER, seed=2)
    run = bfs_vertex(g, layout, 5)
    assert run.metrics.total_logical == g.directed_edge_count


def test_bfs_revisit_fixture():
    g, layout, mg = revisit_fixture()
    vertex, subgraph = check_bfs_run(g, layout, mg, 0)
    assert subgraph.state.dist == [0, 1, 2, 2, 1]
    assert subgraph.revisit_count == 1
    assert subgraph.metrics.total_supersteps == 3
    assert vertex.revisit_count == 0


def test_bfs_unreachable_vertices():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4)])
    layout = build_layout(g, 'HA', ClusterSpec(k=2, c=1))
    mg = build_metagraph(g, layout)
    subgraph = bfs_subgraph(g, layout, mg, 0)
    assert subgraph.state.dist == [0, 1, 2, None, None, None]
    assert subgraph.state.reached == 3
    assert subgraph.state.frontier_hist == [1, 1, 1]


def test_bfs_source_out_of_range():
    g = generate_path(4)
    layout = build_layout(g, 'DP', CLUSTER)
    with pytest.raises(GraphArgumentError):
        bfs_vertex(g, layout, 4)


def test_bfs_sweep_rows():
    g = generate_grid(5, 5)
    layout = build_layout(g, 'HP', CLUSTER, seed=3)
    mg = build_metagraph(g, layout)
    rows = bfs_sweep(g, layout, mg, [0, 12, 24])
    assert [r.source for r in rows] == [0, 12, 24]
    assert rows[1].vertex.state.dist == rows[1].subgraph.state.dist


@pytest.mark.parametrize('graph_name', sorted(GRAPHS))
@pytest.mark.parametrize('strategy', ['DP', 'FP', 'HP', 'HA'])
def test_pagerank_identities(graph_name, strategy):
    g = GRAPHS[graph_name]()
    layout = build_layout(g, strategy, CLUSTER, seed=5)
    mg = build_metagraph(g, layout)
    vertex = pr_vertex(g, layout, mg, iterations=10)
    subgraph = pr_subgraph(g, layout, mg, iterations=10)

    assert vertex.state.rank == subgraph.state.rank
    # 메시지 superstep 10 번 + 마지막 collect superstep
    assert len(vertex.metrics.supersteps) == len(subgraph.metrics.supersteps) == 11
    assert vertex.metrics.total_supersteps == subgraph.metrics.total_supersteps == 11
    for record in vertex.metrics.supersteps[:10]:
        assert record.logical_msgs == g.directed_edge_count
    for record in subgraph.metrics.supersteps[:10]:
        assert record.physical_msgs == len(mg.meta_edges)
    assert vertex.metrics.supersteps[-1].logical_msgs == 0
    for mass in vertex.state.mass_history:
        assert mass == pytest.approx(g.n, abs=1e-6)


def test_pagerank_matches_numpy_iteration():
    g = generate_powerlaw(300, 2, seed=8)
    layout = build_layout(g, 'FP', CLUSTER, seed=4)
    run = pr_subgraph(g, layout, iterations=30)
    assert np.allclose(run.state.rank, pagerank_oracle(g, 30, 0.85), rtol=0, atol=1e-9)


def test_pagerank_star_fixed_point():
    g = generate_star(3)
    layout = build_layout(g, 'HA', ClusterSpec(k=2, c=1))
    run = pr_vertex(g, layout, iterations=30)
    assert np.allclose(run.state.rank, pagerank_oracle(g, 30, 0.85), rtol=0, atol=1e-12)
    converged = pr_vertex(g, layout, iterations=120)
    hub = (0.15 + 0.1275 * 3) / 0.2775
    leaf = 0.15 + 0.85 * hub / 3
    assert converged.state.rank[0] == pytest.approx(hub, abs=1e-6)
    assert converged.state.rank[1:] == pytest.approx([leaf] * 3, abs=1e-6)
    assert hub == pytest.approx(1.918919, abs=1e-6)
    assert leaf == pytest.approx(0.693694, abs=1e-6)


def test_pagerank_regular_graph_stays_uniform():
    g = generate_cycle(4)
    layout = build_layout(g, 'DP', CLUSTER)
    run = pr_subgraph(g, layout, iterations=30)
    assert run.state.rank == pytest.approx([1.0] * 4, abs=1e-12)


def test_pagerank_dangling_vertex():
    g = Graph.from_edges(4, [(0, 1), (1, 2)])
    layout = build_layout(g, 'HA', ClusterSpec(k=2, c=1))
    vertex = pr_vertex(g, layout, iterations=5)
    subgraph = pr_subgraph(g, layout, iterations=5)
    assert vertex.state.rank[3] == pytest.approx(0.15)
    assert vertex.state.rank == subgraph.state.rank


def test_pagerank_threads_same_result():
    g = generate_grid(10, 10)
    layout = build_layout(g, 'HP', CLUSTER, seed=2)
    mg = build_metagraph(g, layout)
    sequential = pr_subgraph(g, layout, mg, iterations=8)
    threaded = pr_subgraph(g, layout, mg, iterations=8, threads=4)
    assert sequential.state.rank == threaded.state.rank
    assert sequential.metrics.to_dict() == threaded.metrics.to_dict()


@pytest.mark.parametrize('iterations, damping', [(0, 0.85), (5, 0.0), (5, 1.0)])
def test_pagerank_arguments(iterations, damping):
    g = generate_path(4)
    layout = build_layout(g, 'DP', CLUSTER)
    with pytest.raises(GraphArgumentError):
        pr_vertex(g, layout, iterations=iterations, damping=damping)


def test_expected_vertex_cost():
    g = generate_path(4)
    layout = build_layout(g, 'DP', CLUSTER)
    assert expected_vertex_cost(g, layout, 'pr') == 5
    run = pr_vertex(g, layout, iterations=3)
    assert run.metrics.supersteps[0].machine_max_cost == 5
    with pytest.raises(GraphArgumentError):
        expected_vertex_cost(g, layout, 'sssp')


@pytest.mark.parametrize('run_bfs', ['vertex', 'subgraph'])
def test_bfs_frontier_histogram_on_path(run_bfs):
    g = generate_path(4)
    layout = build_layout(g, 'DP', CLUSTER, seed=1)
    if run_bfs == 'vertex':
        run = bfs_vertex(g, layout, 0)
    else:
        run = bfs_subgraph(g, layout, build_metagraph(g, layout), 0)
    assert run.state.frontier_hist == [1, 1, 1, 1]
