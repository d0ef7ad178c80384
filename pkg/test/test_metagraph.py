import json

import pytest

from utils.errors import IntegrityError
from utils.graph import Graph, generate_grid, generate_path, generate_powerlaw, generate_star
from utils.partitioner import ClusterSpec, build_layout, edge_cut, partition_hash
from utils.metagraph import LOCAL, REMOTE, build_metagraph, meta_degree_cdf, meta_diameter, meta_eccentricity, \
    meta_radius, meta_stats, read_metagraph_header, save_meta_stats, save_metagraph, stats_frame, strategy_table


@pytest.fixture
def p4():
    return generate_path(4)


@pytest.fixture
def p4_dp(p4):
    return build_layout(p4, 'DP', ClusterSpec(k=2, c=2))


def accounting_holds(g, mg) -> bool:
    weight_v = sum(s.weight_v for s in mg.subgraphs)
    arcs = sum(s.weight_e for s in mg.subgraphs) + sum(e.weight for e in mg.meta_edges)
    return weight_v == g.n and arcs == g.directed_edge_count


def test_p4_metagraph(p4, p4_dp):
    assert p4_dp.vertex_to_partition == (0, 0, 1, 1)
    mg = build_metagraph(p4, p4_dp)
    assert mg.q == 2
    assert [s.vertices for s in mg.subgraphs] == [(0, 1), (2, 3)]
    assert [(e.src, e.dst, e.weight, e.locality) for e in mg.meta_edges] == [(0, 1, 1, REMOTE), (1, 0, 1, REMOTE)]
    assert accounting_holds(p4, mg)


def test_p4_stats_row(tmp_path, p4, p4_dp):
    mg = build_metagraph(p4, p4_dp)
    path = tmp_path / 'metastats.csv'
    save_meta_stats([meta_stats(p4, mg, p4_dp)], str(path))
    lines = path.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'Strategy,Parts,|V̂|,WCC%,dia,|Ê|,Cut%'
    assert lines[1] == 'DP,2,2,1.000,1,2,0.333'


def test_grid_hash_columns():
    """
    4x4 격자를 p=4 로 해시하면 파티션 = 열, 열마다 subgraph 하나
    """
    g = generate_grid(4, 4)
    layout = partition_hash(g, ClusterSpec(k=2, c=2))
    mg = build_metagraph(g, layout)
    assert mg.q == 4
    assert all(s.weight_v == 4 and s.weight_e == 6 for s in mg.subgraphs)
    assert len(mg.meta_edges) == 6
    assert sum(1 for e in mg.meta_edges if e.locality == LOCAL) == 4
    assert meta_diameter(mg) == 3
    assert meta_radius(mg) == 2
    assert meta_eccentricity(mg, 0) == 3
    assert accounting_holds(g, mg)


def test_star_hash_splits_leaves():
    g = generate_star(6)
    layout = partition_hash(g, ClusterSpec(k=2, c=1))
    mg = build_metagraph(g, layout)
    assert [s.vertices for s in mg.subgraphs] == [(0, 2, 4, 6), (1,), (3,), (5,)]
    assert len(mg.meta_edges) == 6
    stats = meta_stats(g, mg, layout)
    assert stats.wcc_pct == pytest.approx(5 / 7)
    assert stats.meta_diameter == 2
    cdf = meta_degree_cdf(mg)
    assert cdf.rows == ((1, 0.75), (3, 1.0))


@pytest.mark.parametrize('strategy', ['DP', 'FP', 'HP', 'HA'])
def test_accounting_and_symmetry(strategy):
    g = generate_powerlaw(500, 2, seed=12)
    layout = build_layout(g, strategy, ClusterSpec(k=2, c=2), seed=3)
    mg = build_metagraph(g, layout)
    assert accounting_holds(g, mg)
    weights = {(e.src, e.dst): e.weight for e in mg.meta_edges}
    assert all(weights[(b, a)] == w for (a, b), w in weights.items())
    assert sum(weights.values()) == 2 * edge_cut(g, layout)[0]
    assert mg.q >= layout.p
    for e in mg.meta_edges:
        same = mg.subgraphs[e.src].machine == mg.subgraphs[e.dst].machine
        assert e.locality == (LOCAL if same else REMOTE)


def test_threads_same_metagraph():
    g = generate_powerlaw(400, 1, seed=1)
    layout = build_layout(g, 'FP', ClusterSpec(k=2, c=3), seed=2)
    assert build_metagraph(g, layout, threads=4) == build_metagraph(g, layout)


def test_layout_mismatch(p4_dp):
    with pytest.raises(IntegrityError):
        build_metagraph(generate_path(5), p4_dp)


def test_disconnected_partition_yields_several_subgraphs():
    g = Graph.from_edges(4, [(0, 2), (1, 3)])
    layout = partition_hash(g, ClusterSpec(k=1, c=2))
    mg = build_metagraph(g, layout)
    # 파티션 {0, 2} 와 {1, 3} 은 각각 연결, meta-edge 없음
    assert mg.q == 2
    assert mg.meta_edges == ()


def test_save_metagraph_json(tmp_path, p4, p4_dp):
    mg = build_metagraph(p4, p4_dp)
    path = str(tmp_path / 'metagraph.json')
    save_metagraph(mg, path)
    data = read_metagraph_header(path)
    assert data['fingerprint'] == mg.fingerprint
    assert data['layout_fingerprint'] == p4_dp.fingerprint
    assert [v['weight_v'] for v in data['meta_vertices']] == [2, 2]
    assert len(data['meta_edges']) == 2
    with open(path, encoding='utf-8') as r:
        assert json.load(r) == data


def assert_table_trends(grid_side: int, powerlaw_n: int):
    """
    공간 그래프가 powerlaw 그래프보다 cut 비율이 낮고, DP 의 meta-edge 수가 가장 적다.
    """
    cluster = ClusterSpec(k=2, c=2)
    spatial = {r.strategy: r for r in strategy_table(generate_grid(grid_side, grid_side), [cluster], seed=1)}
    powerlaw = {r.strategy: r for r in strategy_table(generate_powerlaw(powerlaw_n, 2, seed=1), [cluster], seed=1)}
    for strategy in ('DP', 'FP', 'HP', 'HA'):
        assert spatial[strategy].cut_pct < powerlaw[strategy].cut_pct
    for rows in (spatial, powerlaw):
        assert rows['DP'].meta_edge_count <= rows['FP'].meta_edge_count
        assert rows['DP'].meta_edge_count <= rows['HP'].meta_edge_count
    for strategy in ('DP', 'FP', 'HP'):
        assert spatial[strategy].q <= 2 * spatial[strategy].p
    return spatial


def test_strategy_table_trends():
    spatial = assert_table_trends(32, 2000)
    frame = stats_frame(list(spatial.values()))
    assert list(frame['Strategy']) == ['DP', 'FP', 'HP', 'HA']


@pytest.mark.slow
def test_strategy_table_trends_full_scale():
    assert_table_trends(64, 5000)
