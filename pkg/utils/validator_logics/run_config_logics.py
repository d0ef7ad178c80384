from typing import Optional, Sequence

from utils.graph.generators import GENERATOR_KINDS
from utils.partitioner.layout import STRATEGIES

ALGORITHM_CHOICES = ('pr', 'bfs', 'both')
MODEL_CHOICES = ('vertex', 'subgraph', 'both')


def validate_single_input(graph_spec: Optional[str], input_path: Optional[str]) \
        -> bool:
    """
    입력은 생성기 문자열과 파일 중 정확히 하나
    """
    return (graph_spec is None) != (input_path is None)


def validate_graph_spec(graph_spec: Optional[str]) \
        -> bool:
    """
    생성기 종류만 확인한다. 크기 인자는 생성할 때 검사된다.
    """
    if graph_spec is None:
        return True
    kind = graph_spec.partition(':')[0]
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"unknown generator {kind!r}")
    return True


def validate_strategy(strategy: str) \
        -> bool:
    return strategy in STRATEGIES


def validate_cluster(k: int, c: int) \
        -> bool:
    return k >= 1 and c >= 1


def validate_balance_factor(balance_factor: float) \
        -> bool:
    return balance_factor >= 1.0


def validate_algorithm(algorithm: str, model: str) \
        -> bool:
    return algorithm in ALGORITHM_CHOICES and model in MODEL_CHOICES


def validate_iterations(iterations: int, damping: float) \
        -> bool:
    return iterations >= 1 and 0.0 < damping < 1.0


def validate_sources(sources: Sequence[int]) \
        -> bool:
    return len(sources) > 0 and all(s >= 0 for s in sources)


def validate_seed(seed: Optional[int]) \
        -> bool:
    return seed is None or 0 <= seed < 2 ** 63


def validate_threads(threads: int) \
        -> bool:
    return threads >= 1


def validate_report_format(report_format: str) \
        -> bool:
    return report_format in ('csv', 'json')
