import pytest

from libs.validator import AutomaticValidator, ValidatorChain
from utils.algorithms import topological_sort
from utils.errors import ConfigError
from utils.run_store import PIPELINE_GRAPH, RunConfig, validate_run_config
from utils.validator_chains import get_run_config_validator_chain


@pytest.fixture
def config(tmp_path):
    return RunConfig(out_dir=str(tmp_path), graph_spec='grid:4x4', seed=1)


def test_pipeline_order():
    assert topological_sort(PIPELINE_GRAPH) == ['generate', 'partition', 'metagraph', 'simulate', 'validate',
                                                'report']


def test_no_over_two_graph():
    """
    끝 stage 가 둘이면 (그래프가 두개로 쪼개져 있으면) 안된다.
    """
    with pytest.raises(ValueError):
        topological_sort({'a': ['b'], 'b': [], 'c': ['d'], 'd': []})


def test_cycle():
    with pytest.raises(ValueError):
        topological_sort({'a': ['b'], 'b': ['c'], 'c': ['b'], 'd': []})


def test_double_edge_and_unknown_stage():
    with pytest.raises(ValueError):
        topological_sort({'a': ['b', 'b'], 'b': []})
    with pytest.raises(ValueError):
        topological_sort({'a': ['x'], 'b': []})


def test_single_stage():
    assert topological_sort({'validate': []}) == ['validate']


def test_automatic_validator_name():
    validator = AutomaticValidator(lambda x: x > 0, 'positive')
    assert validator(1) == (True, None)
    ok, err = validator(-1)
    assert not ok and 'positive' in str(err)
    with pytest.raises(TypeError):
        AutomaticValidator('not callable')


def test_chain_reports_first_failure():
    chain = ValidatorChain()
    chain.add_validator(AutomaticValidator(lambda x: x > 0, 'positive'))
    chain.add_validator(AutomaticValidator(lambda x: x < 10, 'small'))
    assert chain(5) == (True, None)
    ok, rule, _ = chain.first_failure(50)
    assert not ok and rule == 'small'


def test_valid_config(config):
    assert validate_run_config(config) is config
    ok, _ = get_run_config_validator_chain()(config)
    assert ok


@pytest.mark.parametrize('changes, rule', [
    ({'graph_spec': None}, 'single-input'),
    ({'input_path': 'g.edges'}, 'single-input'),
    ({'graph_spec': 'lattice:3'}, 'generator'),
    ({'strategy': 'XP'}, 'strategy'),
    ({'k': 0}, 'machines/cores'),
    ({'balance_factor': 0.5}, 'balance-factor'),
    ({'model': 'edge'}, 'algo/model'),
    ({'iterations': 0}, 'iterations/damping'),
    ({'damping': 1.0}, 'iterations/damping'),
    ({'sources': ()}, 'source'),
    ({'sources': (-1,)}, 'source'),
    ({'seed': -3}, 'seed'),
    ({'threads': 0}, 'threads'),
    ({'report_format': 'xml'}, 'format'),
])
def test_broken_rule_is_named(config, changes, rule):
    broken = RunConfig(**{**config.to_dict(), 'out_dir': config.out_dir, **changes})
    with pytest.raises(ConfigError) as e:
        validate_run_config(broken)
    assert e.value.rule == rule


def test_input_optional_for_downstream_stages(config):
    downstream = RunConfig(out_dir=config.out_dir)
    validate_run_config(downstream, needs_input=False)
    with pytest.raises(ConfigError):
        validate_run_config(downstream, needs_input=True)
