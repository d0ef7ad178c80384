from libs.validator import AutomaticValidator, ValidatorChain
from utils.validator_logics.run_config_logics import *


def get_run_config_validator_chain(needs_input: bool = True) \
        -> ValidatorChain:
    """
    RunConfig 유효성을 검사하기 위한 ValidatorChain
    validator 이름이 곧 실패한 규칙 이름이 된다.

    :param needs_input: 그래프 입력 (생성기 또는 파일) 이 있어야 하는지, generate 와 pipeline 만 True
    """
    validator_chain = ValidatorChain()
    if needs_input:
        validator_chain.add_validator(
            AutomaticValidator(validate_single_input, 'single-input'),
            lambda config: (config.graph_spec, config.input_path)
        )
    validator_chain.add_validator(
        AutomaticValidator(validate_graph_spec, 'generator'),
        lambda config: (config.graph_spec,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_strategy, 'strategy'),
        lambda config: (config.strategy,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_cluster, 'machines/cores'),
        lambda config: (config.k, config.c)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_balance_factor, 'balance-factor'),
        lambda config: (config.balance_factor,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_algorithm, 'algo/model'),
        lambda config: (config.algorithm, config.model)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_iterations, 'iterations/damping'),
        lambda config: (config.iterations, config.damping)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_sources, 'source'),
        lambda config: (config.sources,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_seed, 'seed'),
        lambda config: (config.seed,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_threads, 'threads'),
        lambda config: (config.threads,)
    )
    validator_chain.add_validator(
        AutomaticValidator(validate_report_format, 'format'),
        lambda config: (config.report_format,)
    )
    return validator_chain
