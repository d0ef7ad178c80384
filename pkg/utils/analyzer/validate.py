import logging
from typing import Dict, List, Optional, Sequence, Tuple

from utils import settings
from utils.algorithms.seeding import derive_seed
from utils.analyzer.cost import expected_cost
from utils.analyzer.report import BoundsReport, Check
from utils.bsp.records import SimMetrics
from utils.errors import ProvenanceError
from utils.graph.components import connected_components
from utils.graph.distance import bfs_distances, diameter_auto, eccentricity
from utils.graph.generators import permute
from utils.graph.graph import Graph
from utils.metagraph.metagraph import LOCAL, REMOTE, MetaGraph
from utils.metagraph.stats import meta_diameter, meta_eccentricity
from utils.partitioner.layout import PartitionLayout, max_part_size
from utils.partitioner.metrics import donath_bound, donath_bound_printed, edge_cut, machine_edge_cut, partition_sizes
from utils.partitioner.strategies import partition_hash
from utils.programs.bfs import BfsSweepRow
from utils.programs.pagerank import PrRun

logger = logging.getLogger(__name__)

PLUMBING = 'plumbing'
ANCHOR_META = 'meta-graph accounting'
ANCHOR_DIAMETER = 'meta-graph diameter relation'
ANCHOR_CUT = 'edge cut bounds'
ANCHOR_BFS = 'BFS superstep and message bounds'
ANCHOR_PR = 'PageRank message identities'
ANCHOR_COST = 'cost prediction from the largest meta-vertex'


def check_provenance(g: Graph, layout: PartitionLayout, mg: MetaGraph, runs: Sequence[SimMetrics]):
    """
    모든 입력이 같은 그래프 + 분할에서 나왔는지 fingerprint 로 확인한다.
    :exception ProvenanceError: 하나라도 다른 경우
    """
    if layout.graph_fingerprint and layout.graph_fingerprint != g.fingerprint:
        raise ProvenanceError("partition layout was computed for a different graph")
    if mg.graph_fingerprint != g.fingerprint or mg.layout_fingerprint != layout.fingerprint:
        raise ProvenanceError("meta-graph was built from a different graph or layout")
    for metrics in runs:
        if (metrics.graph_fingerprint, metrics.layout_fingerprint, metrics.metagraph_fingerprint) != \
                (g.fingerprint, layout.fingerprint, mg.fingerprint):
            raise ProvenanceError(f"{metrics.program}/{metrics.model} run was simulated on different inputs")


def __metagraph_checks(report: BoundsReport, g: Graph, layout: PartitionLayout, mg: MetaGraph):
    weight_v = sum(s.weight_v for s in mg.subgraphs)
    weight_e = sum(s.weight_e for s in mg.subgraphs)
    meta_weight = sum(e.weight for e in mg.meta_edges)
    cut, _ = edge_cut(g, layout)
    report.add(Check.of('meta_weight_v_sum', ANCHOR_META, weight_v, '==', g.n))
    report.add(Check.of('meta_arc_accounting', ANCHOR_META, weight_e + meta_weight, '==', g.directed_edge_count))
    report.add(Check.of('meta_edge_cut', ANCHOR_META, meta_weight, '==', 2 * cut))

    weights = {(e.src, e.dst): e.weight for e in mg.meta_edges}
    asymmetric = sum(1 for (a, b), w in weights.items() if weights.get((b, a)) != w)
    report.add(Check.of('meta_edge_symmetry', ANCHOR_META, asymmetric, '==', 0,
                        notes='meta-edges without an equal-weight reverse'))

    wrong = 0
    for e in mg.meta_edges:
        same = mg.subgraphs[e.src].machine == mg.subgraphs[e.dst].machine
        if e.locality != (LOCAL if same else REMOTE):
            wrong += 1
    report.add(Check.of('meta_locality', ANCHOR_META, wrong, '==', 0,
                        notes='meta-edges whose locality disagrees with machine placement'))

    non_empty = sum(1 for size in partition_sizes(layout) if size > 0)
    report.add(Check.of('q_ge_partitions', ANCHOR_META, mg.q, '>=', non_empty))

    sizes = sorted((s.weight_v for s in mg.subgraphs), reverse=True)
    wcc_pct = sum(sizes[:layout.p]) / g.n
    report.add(Check.of('wcc_pct_range', PLUMBING, wcc_pct, '<=', 1.0,
                        notes=f"largest {layout.p} subgraphs hold {wcc_pct:.4f} of the vertices"))


def __partition_checks(report: BoundsReport, g: Graph, layout: PartitionLayout, seed: int):
    sizes = partition_sizes(layout)
    cut, _ = edge_cut(g, layout)

    if layout.strategy == 'HA':
        spread = max(abs(size - g.n / layout.p) for size in sizes)
        report.add(Check.of('balance', ANCHOR_CUT, spread, '<=', 1.0,
                            notes='largest deviation of a hash partition from n/p'))
    else:
        limit = max_part_size(g.n, layout.p, layout.balance_factor)
        largest = max(sizes)
        check = Check.of('balance', ANCHOR_CUT, largest, '<=', limit)
        if not check.passed and layout.over_balance:
            check = Check(check.claim_id, check.anchor, check.subject, check.lhs, check.relation, check.rhs,
                          True, 'over_balance flag set by the partitioner')
        report.add(check)

    if g.n > settings.DONATH_CAP:
        report.add(Check.skipped('donath_le_cut', ANCHOR_CUT, f"n={g.n} above {settings.DONATH_CAP}"))
    elif layout.over_balance or min(sizes) == 0:
        report.add(Check.skipped('donath_le_cut', ANCHOR_CUT, 'layout breaks the balance cap or has empty parts'))
    else:
        balance = layout.balance_factor if layout.strategy != 'HA' else 1.0
        bound = donath_bound(g, layout.p, balance)
        report.add(Check.of('donath_le_cut', ANCHOR_CUT, bound, '<=', cut, tolerance=1e-9))

    if g.n <= settings.DONATH_CAP and layout.p <= g.n:
        report.add(Check.of('donath_printed', ANCHOR_CUT, donath_bound_printed(g, layout.p), 'report', cut,
                            notes='(n/p) x sum of the p largest Laplacian eigenvalues, shown next to the cut'))

    if layout.strategy == 'HA':
        if g.edge_count < settings.HASH_CHECK_MIN_EDGES:
            report.add(Check.skipped('hash_expected_cut', ANCHOR_CUT,
                                     f"m={g.edge_count} below {settings.HASH_CHECK_MIN_EDGES}"))
        else:
            mean, expected = hash_cut_expectation(g, layout, seed)
            report.add(Check.of('hash_expected_cut', ANCHOR_CUT, mean, '==', expected,
                                tolerance=settings.HASH_CHECK_TOLERANCE * expected,
                                notes=f"mean cut fraction over {settings.HASH_CHECK_SEEDS} relabelings"))


def hash_cut_expectation(g: Graph, layout: PartitionLayout, seed: int,
                         seeds: int = settings.HASH_CHECK_SEEDS) \
        -> Tuple[float, float]:
    """
    무작위로 id 를 다시 매긴 그래프를 해시 분할했을 때의 평균 cut 비율과 기대값 1 - 1/p
    """
    fractions = []
    for i in range(seeds):
        relabeled = permute(g, derive_seed(seed, f'hash-relabel:{i}'))
        _, fraction = edge_cut(relabeled, partition_hash(relabeled, layout.cluster))
        fractions.append(fraction)
    return sum(fractions) / len(fractions), 1.0 - 1.0 / layout.p


def __diameter_checks(report: BoundsReport, g: Graph, mg: MetaGraph,
                      companions: Dict[str, Tuple[PartitionLayout, MetaGraph]]):
    connected = len(connected_components(g)) == 1
    if not connected:
        report.add(Check.skipped('meta_diameter_le_graph', ANCHOR_DIAMETER, 'graph is not connected'))
    else:
        graph_diameter = diameter_auto(g, settings.EXACT_DIAMETER_CAP)
        meta_dia = meta_diameter(mg)
        if graph_diameter.is_lower_bound and meta_dia > graph_diameter.value:
            # double sweep 값은 하한이라 넘어도 위반이 아니다
            report.add(Check.skipped('meta_diameter_le_graph', ANCHOR_DIAMETER,
                                     f"n={g.n} above the exact diameter cap and the double-sweep bound "
                                     f"{graph_diameter.value} is below {meta_dia}"))
        else:
            notes = 'graph diameter from a double sweep' if graph_diameter.is_lower_bound else ''
            report.add(Check.of('meta_diameter_le_graph', ANCHOR_DIAMETER, meta_dia, '<=', graph_diameter.value,
                                notes=notes))

    dp, hp = companions.get('DP'), companions.get('HP')
    if dp is None or hp is None:
        report.add(Check.skipped('dp_le_hp_meta_diameter', ANCHOR_DIAMETER, 'needs both DP and HP layouts'))
        report.add(Check.skipped('hp_machine_cut_eq_dp', ANCHOR_DIAMETER, 'needs both DP and HP layouts'))
        return
    (dp_layout, dp_mg), (hp_layout, hp_mg) = dp, hp
    same_first_level = all(dp_layout.machine_of_vertex(v) == hp_layout.machine_of_vertex(v) for v in range(g.n))
    report.add(Check.of('hp_machine_cut_eq_dp', ANCHOR_DIAMETER, machine_edge_cut(g, hp_layout), '==',
                        machine_edge_cut(g, dp_layout)))
    if same_first_level:
        report.add(Check.of('dp_le_hp_meta_diameter', ANCHOR_DIAMETER, meta_diameter(dp_mg), '<=',
                            meta_diameter(hp_mg)))
    else:
        report.add(Check.skipped('dp_le_hp_meta_diameter', ANCHOR_DIAMETER,
                                 "HP's machine assignment differs from DP's partition map"))


def __bfs_checks(report: BoundsReport, g: Graph, mg: MetaGraph, row: BfsSweepRow):
    src = row.source
    subject = f"source={src}"
    vertex, subgraph = row.vertex, row.subgraph
    oracle = bfs_distances(g, src)
    mismatches = sum(1 for a, b, c in zip(oracle, vertex.state.dist, subgraph.state.dist) if not a == b == c)
    report.add(Check.of('bfs_dist_equivalence', PLUMBING, mismatches, '==', 0, subject=subject,
                        notes='vertices where vertex, subgraph and sequential distances differ'))

    meta_src = mg.vertex_to_subgraph[src]
    lower = meta_eccentricity(mg, meta_src) + 1
    sub_steps = subgraph.metrics.total_supersteps
    vertex_steps = vertex.metrics.total_supersteps
    report.add(Check.of('bfs_superstep_sandwich', ANCHOR_BFS, lower, '<=', sub_steps, subject=f"{subject} lower"))
    report.add(Check.of('bfs_superstep_sandwich', ANCHOR_BFS, sub_steps, '<=', vertex_steps,
                        subject=f"{subject} upper"))
    report.add(Check.of('bfs_superstep_sandwich', ANCHOR_BFS, vertex_steps, '==', eccentricity(g, src) + 1,
                        subject=f"{subject} vertex"))

    reached_degree = sum(g.degree(v) for v, d in enumerate(oracle) if d is not None)
    report.add(Check.of('bfs_vertex_messages', ANCHOR_BFS, vertex.metrics.total_logical, '==', reached_degree,
                        subject=subject))

    reached_meta = len({mg.vertex_to_subgraph[v] for v, d in enumerate(oracle) if d is not None})
    physical = subgraph.metrics.total_physical
    meta_edges = len(mg.meta_edges)
    report.add(Check.of('bfs_message_sandwich', ANCHOR_BFS, reached_meta - 1, '<=', physical,
                        subject=f"{subject} lower"))
    report.add(Check.of('bfs_message_sandwich', ANCHOR_BFS, physical, '<=', sub_steps * meta_edges,
                        subject=f"{subject} upper"))
    busiest = max((r.physical_msgs for r in subgraph.metrics.supersteps), default=0)
    report.add(Check.of('bfs_physical_le_meta_edges', ANCHOR_BFS, busiest, '<=', meta_edges, subject=subject))
    alpha = physical / meta_edges if meta_edges else 0.0
    report.add(Check.of('bfs_alpha', ANCHOR_BFS, alpha, 'report', 1.0, subject=subject,
                        notes=f"{subgraph.revisit_count} subgraph revisits"))


def __pr_checks(report: BoundsReport, g: Graph, mg: MetaGraph,
                pr_vertex_run: Optional[PrRun], pr_subgraph_run: Optional[PrRun]):
    if pr_vertex_run is not None:
        steps = pr_vertex_run.metrics.supersteps[:pr_vertex_run.state.iterations]
        off = sum(1 for r in steps if r.logical_msgs != g.directed_edge_count)
        report.add(Check.of('pr_logical_eq_arcs', ANCHOR_PR, off, '==', 0,
                            notes=f"messaging supersteps whose logical count differs from {g.directed_edge_count}"))
    if pr_subgraph_run is not None:
        steps = pr_subgraph_run.metrics.supersteps[:pr_subgraph_run.state.iterations]
        off = sum(1 for r in steps if r.physical_msgs != len(mg.meta_edges))
        report.add(Check.of('pr_physical_eq_meta_edges', ANCHOR_PR, off, '==', 0,
                            notes=f"messaging supersteps whose physical count differs from {len(mg.meta_edges)}"))
        predicted = expected_cost(mg, 'pr', pr_subgraph_run.state.iterations)
        report.add(Check.of('pr_expected_cost', ANCHOR_COST, predicted.total, 'report',
                            pr_subgraph_run.metrics.makespan_estimate,
                            notes='predicted total cost vs simulated makespan'))

    runs = [r for r in (pr_vertex_run, pr_subgraph_run) if r is not None]
    if runs and min(g.degrees(), default=0) == 0:
        report.add(Check.skipped('pr_mass_conservation', ANCHOR_PR, 'graph has dangling vertices'))
    elif runs:
        drift = max(abs(mass - g.n) for r in runs for mass in r.state.mass_history)
        report.add(Check.of('pr_mass_conservation', ANCHOR_PR, drift, '<=', settings.PR_MASS_TOLERANCE))

    if pr_vertex_run is not None and pr_subgraph_run is not None:
        gap = max((abs(a - b) for a, b in zip(pr_vertex_run.state.rank, pr_subgraph_run.state.rank)), default=0.0)
        report.add(Check.of('pr_model_equivalence', PLUMBING, gap, '<=', settings.PR_EQUIVALENCE_TOLERANCE))


def __counter_checks(report: BoundsReport, runs: Sequence[SimMetrics]):
    if not runs:
        return
    broken = 0
    for metrics in runs:
        for r in metrics.supersteps:
            if r.physical_msgs > r.logical_msgs or r.active_units > r.invoked_units:
                broken += 1
        active = [r for r in metrics.supersteps if r.active_units > 0]
        if metrics.total_supersteps != len(active):
            broken += 1
        if metrics.makespan_estimate != sum(r.machine_max_cost for r in active):
            broken += 1
    report.add(Check.of('counter_consistency', PLUMBING, broken, '==', 0,
                        notes=f"inconsistent counters across {len(runs)} runs"))


def validate(g: Graph,
             layout: PartitionLayout,
             mg: MetaGraph,
             pr_vertex_run: Optional[PrRun] = None,
             pr_subgraph_run: Optional[PrRun] = None,
             bfs_rows: Sequence[BfsSweepRow] = (),
             companions: Optional[Dict[str, Tuple[PartitionLayout, MetaGraph]]] = None,
             seed: Optional[int] = None) \
        -> BoundsReport:
    """
    meta-graph, 분할, 시뮬레이션 결과에 대해 모든 검사를 돌린다.

    :param companions: 전략 이름 -> (layout, meta-graph), DP 와 HP 비교에 쓴다. 입력 layout 은 자동으로 포함
    :param seed: 해시 cut 기대값 검사의 relabeling seed (없으면 layout.seed, 그것도 없으면 0)
    :exception ProvenanceError: 입력들의 출처가 다른 경우
    """
    runs: List[SimMetrics] = [r.metrics for r in (pr_vertex_run, pr_subgraph_run) if r is not None]
    for row in bfs_rows:
        runs.extend((row.vertex.metrics, row.subgraph.metrics))
    check_provenance(g, layout, mg, runs)

    companions = dict(companions or {})
    companions.setdefault(layout.strategy, (layout, mg))
    for other_layout, other_mg in companions.values():
        if other_layout.graph_fingerprint and other_layout.graph_fingerprint != g.fingerprint:
            raise ProvenanceError(f"{other_layout.strategy} layout was computed for a different graph")
        if other_mg.layout_fingerprint != other_layout.fingerprint:
            raise ProvenanceError(f"{other_layout.strategy} meta-graph does not belong to its layout")

    report = BoundsReport()
    __metagraph_checks(report, g, layout, mg)
    __partition_checks(report, g, layout, seed if seed is not None else (layout.seed or 0))
    __diameter_checks(report, g, mg, companions)
    for row in bfs_rows:
        __bfs_checks(report, g, mg, row)
    __pr_checks(report, g, mg, pr_vertex_run, pr_subgraph_run)
    __counter_checks(report, runs)

    failures = report.failures()
    logger.info("validate: %d checks, %d failing", len(report.checks), len(failures))
    for check in failures:
        logger.warning("claim %s %s failed: %s %s %s", check.claim_id, check.subject, check.lhs, check.relation,
                       check.rhs)
    return report
