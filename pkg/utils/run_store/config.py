from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Optional, Tuple

from utils import settings
from utils.algorithms.seeding import fresh_seed
from utils.errors import ConfigError
from utils.validator_chains import get_run_config_validator_chain


@dataclass(frozen=True)
class RunConfig:
    """
    파이프라인 한번의 설정

    :param graph_spec: 생성기 문자열 (grid:16x16 등), input_path 와 둘 중 하나
    :param input_path: SNAP edge list 파일
    :param seed: 없으면 resolved() 에서 새로 뽑아 manifest 에 남긴다.
    :param sources: BFS source 정점들
    """
    out_dir: str
    graph_spec: Optional[str] = None
    input_path: Optional[str] = None
    strategy: str = 'DP'
    k: int = 2
    c: int = 2
    balance_factor: float = settings.DEFAULT_BALANCE_FACTOR
    seed: Optional[int] = None
    algorithm: str = 'both'
    model: str = 'both'
    sources: Tuple[int, ...] = field(default=(0,))
    iterations: int = settings.DEFAULT_ITERATIONS
    damping: float = settings.DEFAULT_DAMPING
    threads: int = 1
    report_format: str = 'csv'

    def resolved(self) -> 'RunConfig':
        return self if self.seed is not None else replace(self, seed=fresh_seed())

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['sources'] = list(self.sources)
        # 출력 위치는 결과에 영향이 없어서 manifest 비교에서 뺀다.
        del data['out_dir']
        return data


def validate_run_config(config: RunConfig, needs_input: bool = True) -> RunConfig:
    """
    :exception ConfigError: 규칙 하나라도 깨진 경우, 깨진 규칙 이름 포함
    """
    ok, rule, err = get_run_config_validator_chain(needs_input).first_failure(config)
    if not ok:
        raise ConfigError(rule, err or ValueError('validate failed'))
    return config
