import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from libs.resource_access import RawFileWrite
from utils import settings
from utils.analyzer.cost import expected_cost
from utils.errors import SizeCapError
from utils.graph.graph import Graph
from utils.metagraph.metagraph import build_metagraph
from utils.partitioner.layout import ClusterSpec
from utils.partitioner.strategies import build_layout
from utils.programs.pagerank import pr_subgraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrelationRun:
    """
    :param predicted: expected_cost 의 총 비용
    :param makespan: 시뮬레이션 makespan_estimate
    """
    label: str
    strategy: str
    predicted: int
    makespan: int


@dataclass(frozen=True)
class CorrelationReport:
    frame: pd.DataFrame
    rho: float
    target: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.rho) and self.rho >= self.target)

    def save_csv(self, path: str):
        with RawFileWrite(path) as w:
            self.frame.to_csv(w, index=False)
            w.write(f"# spearman_rho={self.rho:.6f} target={self.target}\n")


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """
    순위 상관, 동점은 평균 순위
    한쪽이 모두 같은 값이면 정의되지 않으므로 nan
    """
    rx = pd.Series(list(xs), dtype='float64').rank(method='average').to_numpy()
    ry = pd.Series(list(ys), dtype='float64').rank(method='average').to_numpy()
    if np.ptp(rx) == 0 or np.ptp(ry) == 0:
        return float('nan')
    return float(np.corrcoef(rx, ry)[0, 1])


def correlation_report(runs: Sequence[CorrelationRun], target: float = settings.SPEARMAN_TARGET) \
        -> CorrelationReport:
    """
    :exception SizeCapError: run 이 CORRELATION_MIN_RUNS 개보다 적은 경우
    """
    if len(runs) < settings.CORRELATION_MIN_RUNS:
        raise SizeCapError(f"rank correlation needs at least {settings.CORRELATION_MIN_RUNS} runs, "
                           f"got {len(runs)}; add more (graph, strategy) pairs")
    frame = pd.DataFrame([{
        'label': r.label,
        'strategy': r.strategy,
        'predicted': r.predicted,
        'makespan': r.makespan,
    } for r in runs], columns=['label', 'strategy', 'predicted', 'makespan'])
    rho = spearman(frame['predicted'], frame['makespan'])
    logger.info("cost correlation over %d runs: rho=%.4f", len(runs), rho)
    return CorrelationReport(frame, rho, target)


def correlation_suite(graphs: Sequence[Tuple[str, Graph]],
                      strategies: Sequence[str],
                      cluster: ClusterSpec,
                      seed: int = 0,
                      iterations: int = settings.DEFAULT_ITERATIONS,
                      threads: int = 1) \
        -> List[CorrelationRun]:
    """
    (그래프, 전략) 마다 subgraph PageRank 를 돌려 예측 비용과 makespan 을 모은다.
    """
    runs = []
    for label, g in graphs:
        for strategy in strategies:
            layout = build_layout(g, strategy, cluster, seed)
            mg = build_metagraph(g, layout)
            predicted = expected_cost(mg, 'pr', iterations).total
            result = pr_subgraph(g, layout, mg, iterations, threads=threads)
            runs.append(CorrelationRun(label, strategy, predicted, result.metrics.makespan_estimate))
    return runs
