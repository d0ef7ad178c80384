import functools
from typing import Callable

import click

from utils import settings
from utils.errors import ConfigError, EdgeListParseError, EmptyGraphError, GraphArgumentError, MetaSketchError, \
    MissingArtifactError, ProvenanceError, SizeCapError
from utils.partitioner.layout import STRATEGIES
from utils.run_store.config import RunConfig, validate_run_config
from utils.validator_logics.run_config_logics import ALGORITHM_CHOICES, MODEL_CHOICES

"""
exit 2 로 보내는 에러 (잘못된 사용법, 앞 단계 결과물 없음)
"""
USAGE_ERRORS = (MissingArtifactError, ConfigError, GraphArgumentError, ProvenanceError, EdgeListParseError,
                EmptyGraphError, SizeCapError)

INPUT_OPTIONS = [
    click.option('--generate', 'graph_spec', default=None,
                 help='생성기 문자열: grid:WxH | powerlaw:N:A | random:N:M | path:N | cycle:N | star:N | complete:N'),
    click.option('--input', 'input_path', default=None, type=click.Path(dir_okay=False),
                 help='SNAP 형식 edge list 파일'),
]

PARTITION_OPTIONS = [
    click.option('--strategy', type=click.Choice(STRATEGIES, case_sensitive=False), default='DP', show_default=True),
    click.option('--machines', 'k', type=int, default=2, show_default=True),
    click.option('--cores', 'c', type=int, default=2, show_default=True),
    click.option('--balance-factor', type=float, default=settings.DEFAULT_BALANCE_FACTOR, show_default=True),
]

SIMULATION_OPTIONS = [
    click.option('--algo', 'algorithm', type=click.Choice(ALGORITHM_CHOICES), default='both', show_default=True),
    click.option('--model', type=click.Choice(MODEL_CHOICES), default='both', show_default=True),
    click.option('--source', 'sources', type=int, multiple=True, default=(0,), show_default=True,
                 help='BFS source 정점, 여러번 줄 수 있다.'),
    click.option('--iterations', type=int, default=settings.DEFAULT_ITERATIONS, show_default=True),
    click.option('--damping', type=float, default=settings.DEFAULT_DAMPING, show_default=True),
]

COMMON_OPTIONS = [
    click.option('--out', 'out_dir', required=True, envvar=settings.OUTPUT_DIR_ENV,
                 type=click.Path(file_okay=False), help=f'출력 디렉토리 (환경변수 {settings.OUTPUT_DIR_ENV})'),
    click.option('--seed', type=int, default=None, help='없으면 manifest 의 seed, 그것도 없으면 새로 뽑는다.'),
    click.option('--threads', type=int, default=1, show_default=True),
    click.option('--format', 'report_format', type=click.Choice(['csv', 'json']), default='csv',
                 show_default=True),
]


def __apply(options, fn: Callable) -> Callable:
    for option in reversed(options):
        fn = option(fn)
    return fn


def config_options(needs_input: bool = False) -> Callable:
    """
    subcommand 에 RunConfig 옵션을 붙이고, 인자들을 검사된 RunConfig 하나로 묶어 넘긴다.

    :param needs_input: --generate / --input 중 하나가 있어야 하는지
    """
    options = (INPUT_OPTIONS if needs_input else []) + PARTITION_OPTIONS + SIMULATION_OPTIONS + COMMON_OPTIONS

    def decorator(fn: Callable) -> Callable:
        @functools.wraps(fn)
        def wrapper(**kwargs):
            kwargs['sources'] = tuple(kwargs['sources'])
            kwargs['strategy'] = kwargs['strategy'].upper()
            with UsageErrors():
                config = validate_run_config(RunConfig(**kwargs), needs_input)
            return fn(config)

        return __apply(options, wrapper)

    return decorator


class UsageErrors:
    """
    툴킷 에러를 click 에러로 바꾼다.
    사용법/앞 단계 문제는 UsageError (exit 2), 나머지 툴킷 에러는 ClickException (exit 1)
    """

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_val is None:
            return False
        if isinstance(exc_val, USAGE_ERRORS):
            raise click.UsageError(str(exc_val)) from exc_val
        if isinstance(exc_val, MetaSketchError):
            raise click.ClickException(str(exc_val)) from exc_val
        return False
