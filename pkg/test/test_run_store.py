import json
import os

import pandas as pd
import pytest

from utils import settings
from utils.algorithms import derive_seed
from utils.errors import MissingArtifactError, ProvenanceError
from utils.graph import generate_grid, load_edge_list, save_edge_list
from utils.run_store import RunConfig, RunStore, StageWorker, file_sha256, resolve_seed, run_stage


@pytest.fixture
def out_dir(tmp_path):
    return str(tmp_path / 'run')


@pytest.fixture
def config(out_dir):
    return RunConfig(out_dir=out_dir, graph_spec='grid:8x8', strategy='HP', seed=7, algorithm='both',
                     model='both', sources=(0, 63), iterations=5)


def test_one_store_per_directory(out_dir):
    assert RunStore(out_dir) is RunStore(os.path.join(out_dir, '.'))


def test_require_names_missing_path(out_dir):
    with pytest.raises(MissingArtifactError) as e:
        RunStore(out_dir).require(settings.GRAPH_FILE)
    assert e.value.path.endswith(settings.GRAPH_FILE)


def test_record_stage_hashes(out_dir):
    store = RunStore(out_dir)
    save_edge_list(generate_grid(3, 3), store.path(settings.GRAPH_FILE))
    store.record_stage('generate', {'graph_spec': 'grid:3x3'}, outputs=[settings.GRAPH_FILE], seed=11,
                       derived_seeds={'generate': derive_seed(11, 'generate')})
    manifest = store.read_manifest()
    assert manifest['seed'] == 11 == store.recorded_seed()
    sha = file_sha256(store.path(settings.GRAPH_FILE))
    assert manifest['artifacts'][settings.GRAPH_FILE] == sha
    assert manifest['stages']['generate']['outputs'] == {settings.GRAPH_FILE: sha}
    assert manifest['derived_seeds']['generate'] == derive_seed(11, 'generate')


def test_derive_seed_stable():
    assert derive_seed(7, 'partition') == derive_seed(7, 'partition')
    assert derive_seed(7, 'partition') != derive_seed(7, 'generate')
    assert 0 <= derive_seed(7, 'fp-deal') < 2 ** 32


def test_resolve_seed(out_dir):
    store = RunStore(out_dir)
    fresh = resolve_seed(RunConfig(out_dir=out_dir), store)
    assert fresh.seed is not None
    save_edge_list(generate_grid(2, 2), store.path(settings.GRAPH_FILE))
    store.record_stage('generate', {}, outputs=[settings.GRAPH_FILE], seed=42)
    assert resolve_seed(RunConfig(out_dir=out_dir), store).seed == 42
    assert resolve_seed(RunConfig(out_dir=out_dir, seed=3), store).seed == 3


def test_pipeline_artifacts(config, out_dir):
    results = StageWorker(config)()
    assert list(results) == ['generate', 'partition', 'metagraph', 'simulate', 'validate', 'report']
    assert results['validate'].passed, results['validate'].to_text()
    for name in (settings.GRAPH_FILE, settings.PARTITION_MAP_FILE, settings.PARTITION_SIDECAR_FILE,
                 settings.METAGRAPH_FILE, settings.METASTATS_FILE, settings.METRICS_JSON_FILE,
                 settings.METRICS_CSV_FILE, settings.BOUNDS_JSON_FILE, settings.BOUNDS_TEXT_FILE,
                 'table.csv', settings.CORRELATION_FILE, settings.RANKS_FILE, 'dist_0.tsv', 'dist_63.tsv',
                 settings.MANIFEST_FILE):
        assert os.path.isfile(os.path.join(out_dir, name)), name

    manifest = RunStore(out_dir).read_manifest()
    assert manifest['seed'] == 7
    assert manifest['derived_seeds']['partition'] == derive_seed(7, 'partition')
    assert set(manifest['stages']) == set(results)
    with open(os.path.join(out_dir, 'dist_63.tsv'), encoding='utf-8') as r:
        lines = r.readlines()
    assert len(lines) == 64 and lines[63] == '63\t0\n'
    assert lines[0] == '0\t14\n'


def test_pipeline_is_deterministic(tmp_path):
    outputs = []
    for name in ('a', 'b'):
        out_dir = str(tmp_path / name)
        StageWorker(RunConfig(out_dir=out_dir, graph_spec='powerlaw:200:2', strategy='FP', seed=5,
                              iterations=4))()
        files = sorted(os.listdir(out_dir))
        outputs.append({f: open(os.path.join(out_dir, f), 'rb').read() for f in files})
    assert outputs[0] == outputs[1]


def test_standalone_stages_match_pipeline(tmp_path, config):
    StageWorker(config)()
    piped = json.loads(open(os.path.join(config.out_dir, settings.METRICS_JSON_FILE), encoding='utf-8').read())

    out_dir = str(tmp_path / 'stages')
    staged_config = RunConfig(**{**config.to_dict(), 'out_dir': out_dir})
    for stage in ('generate', 'partition', 'metagraph', 'simulate'):
        run_stage(staged_config, stage)
    staged = json.loads(open(os.path.join(out_dir, settings.METRICS_JSON_FILE), encoding='utf-8').read())
    assert staged == piped
    assert run_stage(staged_config, 'validate').passed


def test_validate_detects_tampered_metrics(config):
    StageWorker(config)()
    path = os.path.join(config.out_dir, settings.METRICS_JSON_FILE)
    data = json.loads(open(path, encoding='utf-8').read())
    data['runs']['pr/vertex']['total_physical'] += 1
    with open(path, 'w', encoding='utf-8') as w:
        json.dump(data, w)
    with pytest.raises(ProvenanceError):
        run_stage(config, 'validate')


def test_partition_of_other_graph_is_rejected(config):
    run_stage(config, 'generate')
    run_stage(config, 'partition')
    # 분할 후 그래프 파일이 바뀌면 다음 단계가 거부한다
    save_edge_list(generate_grid(9, 9), RunStore(config.out_dir).path(settings.GRAPH_FILE))
    with pytest.raises(ProvenanceError):
        run_stage(config, 'metagraph')


def test_generate_from_input_file(tmp_path):
    source = tmp_path / 'input.edges'
    source.write_text('# snap\n5 9\n9 12\n', encoding='utf-8')
    out_dir = str(tmp_path / 'out')
    g = run_stage(RunConfig(out_dir=out_dir, input_path=str(source), seed=1), 'generate')
    assert g.n == 3 and g.original_ids == (5, 9, 12)
    manifest = RunStore(out_dir).read_manifest()
    assert manifest['stages']['generate']['config']['input_sha256'] == file_sha256(str(source))
    assert load_edge_list(os.path.join(out_dir, settings.GRAPH_FILE)).original_ids == (5, 9, 12)


def test_generated_graph_reaches_later_stages_unchanged(tmp_path):
    config = RunConfig(out_dir=str(tmp_path / 'sparse'), graph_spec='random:50:20', strategy='DP', seed=3)
    results = StageWorker(config, {'generate': ['partition'], 'partition': []})()
    g = results['generate']
    assert g.n == 50
    assert results['partition'].n == 50

    stored = load_edge_list(RunStore(config.out_dir).path(settings.GRAPH_FILE))
    assert stored == g
    assert run_stage(config, 'metagraph').graph_fingerprint == g.fingerprint


def test_metrics_export_frontier_histogram(config):
    StageWorker(config)()
    diagonal = list(range(1, 9)) + list(range(7, 0, -1))
    data = json.loads(open(os.path.join(config.out_dir, settings.METRICS_JSON_FILE), encoding='utf-8').read())
    for model in ('vertex', 'subgraph'):
        assert data['runs'][f'bfs/{model}/0']['frontier_hist'] == diagonal
        assert sum(data['runs'][f'bfs/{model}/63']['frontier_hist']) == 64
    assert 'frontier_hist' not in data['runs']['pr/vertex']

    frame = pd.read_csv(os.path.join(config.out_dir, settings.METRICS_CSV_FILE), keep_default_na=False)
    for model in ('vertex', 'subgraph'):
        rows = frame[frame['run'] == f'bfs/{model}/0']
        assert len(rows) > 0
        assert all(json.loads(v) == diagonal for v in rows['frontier_hist'])
    assert set(frame[frame['run'] == 'pr/subgraph']['frontier_hist']) == {''}
