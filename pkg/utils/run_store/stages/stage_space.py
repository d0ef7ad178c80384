import json
import logging
from abc import ABCMeta, abstractmethod
from typing import Any, Dict, List, Tuple

from libs.resource_access import RawFileWrite
from utils import settings
from utils.algorithms.seeding import derive_seed
from utils.analyzer.correlation import CorrelationReport, correlation_report, correlation_suite
from utils.analyzer.report import BoundsReport
from utils.analyzer.validate import validate
from utils.errors import ProvenanceError
from utils.graph.degree import degree_cdf
from utils.graph.generators import generate_from_spec
from utils.graph.graph import Graph
from utils.graph.io import load_edge_list, save_edge_list, write_vertex_values
from utils.metagraph.export import read_metagraph_header, save_meta_stats, save_metagraph
from utils.metagraph.metagraph import MetaGraph, build_metagraph
from utils.metagraph.stats import MetaStats, meta_degree_cdf, meta_stats, stats_frame, strategy_table
from utils.partitioner.layout import ClusterSpec, PartitionLayout, load_layout, save_layout
from utils.partitioner.strategies import build_layout
from utils.run_store.config import RunConfig
from utils.run_store.stages.simulation import SimulationBundle, read_bundle_json, simulate
from utils.run_store.store import RunStore, file_sha256

logger = logging.getLogger(__name__)


class StageSpace(metaclass=ABCMeta):
    """
    파이프라인 실행 단위

    앞 단계 결과는 inputs 로 넘겨받고, 없으면 (단독 실행) 출력 디렉토리의 artifact 에서 읽는다.

    :param stage_name: stage 이름
    :param inputs: 앞 stage 이름 -> 그 stage 의 결과
    """
    stage_name: str
    config: RunConfig
    store: RunStore
    inputs: Dict[str, Any]

    def __init__(self, config: RunConfig, store: RunStore):
        self.config = config
        self.store = store
        self.inputs = {}

    def __str__(self):
        return self.stage_name

    def input_artifact(self, stage_name: str, value: Any):
        self.inputs[stage_name] = value

    @property
    def seed(self) -> int:
        return self.config.seed

    def stage_seed(self, stage: str) -> int:
        return derive_seed(self.seed, stage)

    def graph(self) -> Graph:
        if 'generate' in self.inputs:
            return self.inputs['generate']
        return load_edge_list(self.store.require(settings.GRAPH_FILE))

    def layout(self, g: Graph) -> PartitionLayout:
        if 'partition' in self.inputs:
            return self.inputs['partition']
        layout = load_layout(self.store.require(settings.PARTITION_MAP_FILE),
                             self.store.require(settings.PARTITION_SIDECAR_FILE))
        if layout.graph_fingerprint != g.fingerprint:
            raise ProvenanceError(f"{settings.PARTITION_MAP_FILE} was not computed for {settings.GRAPH_FILE}")
        return layout

    def metagraph(self, g: Graph, layout: PartitionLayout) -> MetaGraph:
        if 'metagraph' in self.inputs:
            return self.inputs['metagraph']
        header = read_metagraph_header(self.store.require(settings.METAGRAPH_FILE))
        mg = build_metagraph(g, layout, self.config.threads)
        if header.get('fingerprint') != mg.fingerprint:
            raise ProvenanceError(f"{settings.METAGRAPH_FILE} does not match the stored graph and partition")
        return mg

    def simulation_settings(self) -> Dict[str, Any]:
        return {
            'algorithm': self.config.algorithm,
            'model': self.config.model,
            'sources': list(self.config.sources),
            'iterations': self.config.iterations,
            'damping': self.config.damping,
        }

    def record(self, config: Dict[str, Any], inputs: List[str], outputs: List[str],
               derived: Dict[str, int] = None):
        self.store.record_stage(self.stage_name, config, inputs, outputs, self.seed, derived)

    @abstractmethod
    def run(self) -> Any:
        """
        단일 stage 실행
        :return: 다음 stage 에 넘겨줄 결과
        """
        pass


class GenerateStage(StageSpace):
    """
    그래프 생성 또는 읽기

    메모리의 그래프를 그대로 넘긴다. graph.edges 는 다시 읽어도 같은 그래프가 되도록 저장된다.
    """
    stage_name = 'generate'

    def run(self) -> Graph:
        config = {'graph_spec': self.config.graph_spec, 'input_path': self.config.input_path}
        derived = {}
        if self.config.input_path is not None:
            g = load_edge_list(self.config.input_path)
            config['input_sha256'] = file_sha256(self.config.input_path)
        else:
            derived['generate'] = self.stage_seed('generate')
            g = generate_from_spec(self.config.graph_spec, derived['generate'])
        save_edge_list(g, self.store.path(settings.GRAPH_FILE))
        degree_cdf(g).save_csv(self.store.path(settings.DEGREE_CDF_FILE))
        self.record(config, [], [settings.GRAPH_FILE, settings.DEGREE_CDF_FILE], derived)
        logger.info("graph ready: n=%d m=%d", g.n, g.edge_count)
        return g


class PartitionStage(StageSpace):
    stage_name = 'partition'

    def run(self) -> PartitionLayout:
        g = self.graph()
        partition_seed = self.stage_seed('partition')
        layout = build_layout(g, self.config.strategy, ClusterSpec(self.config.k, self.config.c),
                              partition_seed, self.config.balance_factor)
        save_layout(layout, self.store.path(settings.PARTITION_MAP_FILE),
                    self.store.path(settings.PARTITION_SIDECAR_FILE))
        self.record(
            {'strategy': self.config.strategy, 'k': self.config.k, 'c': self.config.c,
             'balance_factor': self.config.balance_factor},
            [settings.GRAPH_FILE],
            [settings.PARTITION_MAP_FILE, settings.PARTITION_SIDECAR_FILE],
            {'partition': partition_seed},
        )
        return layout


class MetaGraphStage(StageSpace):
    stage_name = 'metagraph'

    def run(self) -> MetaGraph:
        g = self.graph()
        layout = self.layout(g)
        mg = build_metagraph(g, layout, self.config.threads)
        save_metagraph(mg, self.store.path(settings.METAGRAPH_FILE))
        save_meta_stats([meta_stats(g, mg, layout)], self.store.path(settings.METASTATS_FILE))
        meta_degree_cdf(mg).save_csv(self.store.path(settings.META_DEGREE_CDF_FILE))
        self.record({}, [settings.GRAPH_FILE, settings.PARTITION_MAP_FILE, settings.PARTITION_SIDECAR_FILE],
                    [settings.METAGRAPH_FILE, settings.METASTATS_FILE, settings.META_DEGREE_CDF_FILE])
        return mg


class SimulateStage(StageSpace):
    stage_name = 'simulate'

    def run(self) -> SimulationBundle:
        g = self.graph()
        layout = self.layout(g)
        mg = self.metagraph(g, layout)
        bundle = simulate(g, layout, mg, self.simulation_settings(), self.config.threads)
        bundle.save_json(self.store.path(settings.METRICS_JSON_FILE))
        bundle.save_csv(self.store.path(settings.METRICS_CSV_FILE))

        outputs = [settings.METRICS_JSON_FILE, settings.METRICS_CSV_FILE]
        ranks = bundle.pr_vertex or bundle.pr_subgraph
        if ranks is not None:
            write_vertex_values(self.store.path(settings.RANKS_FILE), ranks.state.rank)
            outputs.append(settings.RANKS_FILE)
        runs = bundle.bfs_vertex or bundle.bfs_subgraph
        for source, result in sorted(runs.items()):
            name = settings.DIST_FILE.format(source=source)
            write_vertex_values(self.store.path(name), result.state.dist)
            outputs.append(name)

        self.record(self.simulation_settings(), [settings.METAGRAPH_FILE], outputs)
        return bundle


class ValidateStage(StageSpace):
    """
    단독 실행이면 metrics.json 에 남은 설정으로 시뮬레이션을 다시 돌리고, 저장된 카운터와 같은지 먼저 확인한다.
    """
    stage_name = 'validate'

    def __bundle(self, g: Graph, layout: PartitionLayout, mg: MetaGraph) -> SimulationBundle:
        if 'simulate' in self.inputs:
            return self.inputs['simulate']
        stored = read_bundle_json(self.store.require(settings.METRICS_JSON_FILE))
        bundle = simulate(g, layout, mg, stored['settings'], self.config.threads)
        if json.loads(json.dumps(bundle.to_dict())) != stored:
            raise ProvenanceError(f"{settings.METRICS_JSON_FILE} does not match a fresh simulation of these inputs")
        return bundle

    def __companions(self, g: Graph, layout: PartitionLayout) -> Dict[str, Tuple[PartitionLayout, MetaGraph]]:
        """
        DP 와 HP 비교를 위해 반대쪽 분할을 같은 seed 로 만든다.
        """
        other = {'DP': 'HP', 'HP': 'DP'}.get(layout.strategy)
        if other is None:
            return {}
        other_layout = build_layout(g, other, layout.cluster, layout.seed, layout.balance_factor)
        return {other: (other_layout, build_metagraph(g, other_layout, self.config.threads))}

    def run(self) -> BoundsReport:
        g = self.graph()
        layout = self.layout(g)
        mg = self.metagraph(g, layout)
        bundle = self.__bundle(g, layout, mg)
        report = validate(g, layout, mg,
                          pr_vertex_run=bundle.pr_vertex,
                          pr_subgraph_run=bundle.pr_subgraph,
                          bfs_rows=bundle.bfs_rows(),
                          companions=self.__companions(g, layout),
                          seed=self.seed)
        report.save_json(self.store.path(settings.BOUNDS_JSON_FILE))
        report.save_text(self.store.path(settings.BOUNDS_TEXT_FILE))
        self.record({}, [settings.METAGRAPH_FILE, settings.METRICS_JSON_FILE],
                    [settings.BOUNDS_JSON_FILE, settings.BOUNDS_TEXT_FILE])
        return report


class ReportStage(StageSpace):
    """
    전략별 요약 표 (machines k, 2k) 와 예측 비용/시뮬레이션 makespan 의 순위 상관
    """
    stage_name = 'report'

    def run(self) -> Tuple[List[MetaStats], CorrelationReport]:
        g = self.graph()
        clusters = [ClusterSpec(self.config.k, self.config.c), ClusterSpec(2 * self.config.k, self.config.c)]
        partition_seed = self.stage_seed('partition')
        rows = strategy_table(g, clusters, partition_seed, self.config.balance_factor)

        table_name = f"{settings.TABLE_FILE}.{self.config.report_format}"
        table_path = self.store.path(table_name)
        if self.config.report_format == 'json':
            with RawFileWrite(table_path) as w:
                frame = stats_frame(rows, full=True)
                json.dump(frame.to_dict(orient='records'), w, indent=2, sort_keys=True)
                w.write('\n')
        else:
            with RawFileWrite(table_path) as w:
                stats_frame(rows).to_csv(w, index=False, float_format=settings.TABLE_FLOAT_FORMAT)

        runs = []
        for cluster in clusters:
            runs.extend(correlation_suite([(f"k={cluster.k}", g)], ('DP', 'FP', 'HP', 'HA'), cluster,
                                          partition_seed, self.config.iterations, self.config.threads))
        correlation = correlation_report(runs)
        correlation.save_csv(self.store.path(settings.CORRELATION_FILE))

        self.record({'machines': [c.k for c in clusters], 'cores': self.config.c,
                     'format': self.config.report_format},
                    [settings.GRAPH_FILE], [table_name, settings.CORRELATION_FILE],
                    {'partition': partition_seed})
        return rows, correlation
