from utils.run_store.stages.simulation import *
from utils.run_store.stages.stage_space import *
from utils.run_store.stages.stage_worker import *
