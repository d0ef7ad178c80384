from utils.run_store.config import RunConfig, validate_run_config
from utils.run_store.store import RunStore, file_sha256
from utils.run_store.stages import SimulationBundle, simulate, StageSpace, StageWorker, PIPELINE_GRAPH, \
    resolve_seed, run_stage
