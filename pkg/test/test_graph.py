import networkx as nx
import pytest

from utils.errors import EdgeListParseError, EmptyGraphError, GraphArgumentError, SizeCapError
from utils.graph import Graph, bfs_distances, connected_components, degree_cdf, diameter, eccentricity, \
    fit_powerlaw, generate_complete, generate_cycle, generate_from_spec, generate_grid, generate_path, \
    generate_powerlaw, generate_random, generate_star, largest_component, load_edge_list, permute, \
    save_edge_list, wcc


@pytest.fixture
def edge_file(tmp_path):
    def __write(text: str) -> str:
        path = tmp_path / 'graph.edges'
        path.write_text(text, encoding='utf-8')
        return str(path)

    return __write


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


def test_load_snap_edge_list(edge_file):
    """
    주석/빈 줄은 무시하고, id 는 처음 등장한 순서대로 다시 매긴다.
    """
    g = load_edge_list(edge_file("# comment\n\n10 20\n20 30\n30 10\n10 20\n"))
    assert g.n == 3
    assert g.original_ids == (10, 20, 30)
    assert g.edge_count == 3
    assert g.directed_edge_count == 6


def test_load_drops_self_loops(edge_file):
    g = load_edge_list(edge_file("1 1\n1 2\n"))
    assert g.n == 2
    assert g.edge_count == 1


def test_load_bad_line(edge_file):
    with pytest.raises(EdgeListParseError) as e:
        load_edge_list(edge_file("0 1\n1 x\n"))
    assert e.value.line_no == 2


def test_load_empty(edge_file):
    with pytest.raises(EmptyGraphError):
        load_edge_list(edge_file("# nothing here\n"))


def test_save_round_trip_path(tmp_path):
    g = generate_path(6)
    path = str(tmp_path / 'p.edges')
    save_edge_list(g, path)
    reloaded = load_edge_list(path)
    assert reloaded.adjacency == g.adjacency
    assert reloaded.fingerprint == g.fingerprint


@pytest.mark.parametrize('g', [
    generate_grid(4, 4),
    generate_grid(5, 3),
    Graph.from_edges(7, [(0, 5), (5, 2), (2, 6)]),
    generate_random(50, 20, seed=3),
    generate_powerlaw(120, 2, seed=4),
], ids=['grid4x4', 'grid5x3', 'isolated', 'random-sparse', 'powerlaw'])
def test_save_load_keeps_graph(tmp_path, g):
    """
    고립 정점과 id 순서까지 그대로 돌아온다.
    """
    path = str(tmp_path / 'g.edges')
    save_edge_list(g, path)
    reloaded = load_edge_list(path)
    assert reloaded == g
    assert reloaded.adjacency == g.adjacency
    assert reloaded.original_ids == tuple(range(g.n))
    assert reloaded.fingerprint == g.fingerprint


def test_save_load_keeps_isolated_vertices(tmp_path):
    g = generate_random(50, 20, seed=3)
    path = tmp_path / 'random.edges'
    save_edge_list(g, str(path))
    assert path.read_text(encoding='utf-8').splitlines()[0] == "# n=50 m=20"
    reloaded = load_edge_list(str(path))
    assert reloaded.n == 50
    assert reloaded.degrees() == g.degrees()


def test_save_load_keeps_original_ids(tmp_path, edge_file):
    g = load_edge_list(edge_file("30 10\n10 20\n"))
    assert g.original_ids == (30, 10, 20)
    path = str(tmp_path / 'again.edges')
    save_edge_list(g, path)
    reloaded = load_edge_list(path)
    assert reloaded == g
    assert reloaded.original_ids == (30, 10, 20)


def test_header_rejects_undeclared_id(edge_file):
    with pytest.raises(EdgeListParseError) as e:
        load_edge_list(edge_file("# n=3 m=1\n0 7\n"))
    assert e.value.line_no == 2
    with pytest.raises(EdgeListParseError):
        load_edge_list(edge_file("# n=3 m=1\n# ids 4 5\n4 5\n"))


def test_generators_sizes():
    assert generate_grid(4, 3).edge_count == 3 * 3 + 4 * 2
    assert generate_star(5).degree(0) == 5
    assert generate_cycle(5).edge_count == 5
    assert generate_complete(4).edge_count == 6
    assert generate_path(1).edge_count == 0
    assert generate_random(30, 40, seed=1).edge_count == 40


def test_powerlaw_edge_count_and_determinism():
    g = generate_powerlaw(200, 2, seed=3)
    assert g.edge_count == 2 * (200 - 2) + 1
    assert g == generate_powerlaw(200, 2, seed=3)


@pytest.mark.parametrize('spec', ['grid:0x3', 'cycle:2', 'powerlaw:3:3', 'wat:3', 'grid:3'])
def test_bad_generator_spec(spec):
    with pytest.raises(GraphArgumentError):
        generate_from_spec(spec, seed=0)


def test_generator_spec():
    assert generate_from_spec('grid:3x2', seed=0) == generate_grid(3, 2)
    assert generate_from_spec('star:4', seed=0) == generate_star(4)


def test_bfs_matches_networkx():
    g = generate_powerlaw(300, 2, seed=11)
    expected = nx.single_source_shortest_path_length(to_networkx(g), 0)
    dist = bfs_distances(g, 0)
    assert {v: d for v, d in enumerate(dist) if d is not None} == dict(expected)


def test_bfs_unreachable():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert bfs_distances(g, 0) == [0, 1, None, None]


def test_components_order():
    g = Graph.from_edges(6, [(4, 5), (0, 1), (1, 2)])
    assert connected_components(g) == [[0, 1, 2], [4, 5], [3]]
    assert largest_component(g) == [0, 1, 2]
    assert wcc([7, 8, 9], [(8, 9)]) == [[8, 9], [7]]


def test_diameter_exact_and_estimate():
    g = generate_grid(6, 4)
    exact = diameter(g)
    assert exact.value == nx.diameter(to_networkx(g)) == 8
    assert not exact.is_lower_bound
    estimate = diameter(g, 'estimate')
    assert estimate.is_lower_bound
    assert estimate.value <= exact.value
    assert eccentricity(g, 0) == 8


def test_diameter_threads_same_result():
    g = generate_powerlaw(150, 1, seed=5)
    assert diameter(g, threads=4).value == diameter(g).value


def test_diameter_cap():
    with pytest.raises(SizeCapError):
        diameter(generate_path(30), 'exact', cap=10)


def test_degree_cdf_star():
    cdf = degree_cdf(generate_star(4))
    assert cdf.rows == ((1, 0.8), (4, 1.0))
    assert cdf.mean_degree == pytest.approx(8 / 5)
    assert cdf.fraction_at(2) == 0.8


def test_powerlaw_fit_is_decreasing():
    params = fit_powerlaw(generate_powerlaw(3000, 2, seed=7))
    assert params.exponent_beta < -1.0
    assert params.scale_alpha > 0


def test_permute_keeps_structure():
    g = generate_grid(5, 5)
    shuffled = permute(g, seed=2)
    assert shuffled.edge_count == g.edge_count
    assert sorted(shuffled.degrees()) == sorted(g.degrees())
