import collections
from dataclasses import replace
import logging
from typing import Any, Deque, Dict, List

from utils.algorithms.topological_sort import topological_sort
from utils.run_store.config import RunConfig
from utils.run_store.stages.stage_space import GenerateStage, MetaGraphStage, PartitionStage, ReportStage, \
    SimulateStage, StageSpace, ValidateStage
from utils.run_store.store import RunStore

logger = logging.getLogger(__name__)

STAGE_CLASSES = {
    'generate': GenerateStage,
    'partition': PartitionStage,
    'metagraph': MetaGraphStage,
    'simulate': SimulateStage,
    'validate': ValidateStage,
    'report': ReportStage,
}

"""
stage 이름 -> 결과를 넘겨받는 다음 stage 들
"""
PIPELINE_GRAPH: Dict[str, List[str]] = {
    'generate': ['partition', 'metagraph', 'simulate', 'validate', 'report'],
    'partition': ['metagraph', 'simulate', 'validate'],
    'metagraph': ['simulate', 'validate'],
    'simulate': ['validate'],
    'validate': ['report'],
    'report': [],
}


def resolve_seed(config: RunConfig, store: RunStore) -> RunConfig:
    """
    --seed 가 없으면 출력 디렉토리 manifest 의 seed, 그것도 없으면 새로 뽑는다.
    """
    if config.seed is not None:
        return config
    recorded = store.recorded_seed()
    if recorded is not None:
        return replace(config, seed=recorded)
    return config.resolved()


class StageWorker:
    """
    stage 그래프를 위상 정렬 순서로 실행하고, 각 stage 결과를 다음 stage 에 넘겨준다.

    :param stage_dictionary: stage 이름으로 StageSpace 를 찾는다.
    :param graph: stage 그래프
    :param results: 실행을 마친 stage 결과
    """
    stage_dictionary: Dict[str, StageSpace]
    graph: Dict[str, List[str]]
    results: Dict[str, Any]

    def __init__(self, config: RunConfig, graph: Dict[str, List[str]] = None):
        store = RunStore(config.out_dir)
        config = resolve_seed(config, store)
        self.graph = graph if graph is not None else PIPELINE_GRAPH
        self.stage_dictionary = {name: STAGE_CLASSES[name](config, store) for name in self.graph}
        self.results = {}

    def __call__(self) -> Dict[str, Any]:
        stage_queue: Deque[str] = collections.deque(topological_sort(self.graph))
        while stage_queue:
            stage_name = stage_queue.popleft()
            logger.info("stage %s", stage_name)
            result = self.stage_dictionary[stage_name].run()
            self.results[stage_name] = result
            # 다음 stage 들에 결과 넘겨주기
            for next_stage_name in self.graph[stage_name]:
                self.stage_dictionary[next_stage_name].input_artifact(stage_name, result)
        return self.results


def run_stage(config: RunConfig, stage_name: str) -> Any:
    """
    stage 하나만 단독으로 실행한다. 앞 단계 결과는 출력 디렉토리에서 읽는다.
    """
    return StageWorker(config, {stage_name: []})()[stage_name]
