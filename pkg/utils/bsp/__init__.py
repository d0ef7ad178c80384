from utils.bsp.records import SuperstepRecord, SimMetrics
from utils.bsp.program import VERTEX, SUBGRAPH, Message, Context, Program, VertexProgram, SubgraphProgram
from utils.bsp.engine import BspEngine, subgraph_cores, run
