"""
툴킷 전역 설정값
"""

# graph-core
EXACT_DIAMETER_CAP = 20_000

# partitioner
DEFAULT_BALANCE_FACTOR = 1.03
REFINEMENT_PASS_CAP = 10
COARSEN_FLOOR = 200
COARSEN_PER_PART = 30
INITIAL_PARTITION_TRIALS = 4
DONATH_CAP = 2_000
ORACLE_CAP = 14

# algorithms
DEFAULT_DAMPING = 0.85
DEFAULT_ITERATIONS = 30
PR_EQUIVALENCE_TOLERANCE = 1e-12
PR_MASS_TOLERANCE = 1e-6

# analyzer
HASH_CHECK_MIN_EDGES = 1_000
HASH_CHECK_SEEDS = 30
HASH_CHECK_TOLERANCE = 0.05
CORRELATION_MIN_RUNS = 5
SPEARMAN_TARGET = 0.8

# output
OUTPUT_DIR_ENV = 'METASKETCH_OUT_DIR'
GRAPH_FILE = 'graph.edges'
PARTITION_MAP_FILE = 'partition.tsv'
PARTITION_SIDECAR_FILE = 'partition.json'
METAGRAPH_FILE = 'metagraph.json'
METASTATS_FILE = 'metastats.csv'
DEGREE_CDF_FILE = 'degree_cdf.csv'
META_DEGREE_CDF_FILE = 'meta_degree_cdf.csv'
METRICS_JSON_FILE = 'metrics.json'
METRICS_CSV_FILE = 'metrics.csv'
BOUNDS_JSON_FILE = 'bounds.json'
BOUNDS_TEXT_FILE = 'bounds.txt'
TABLE_FILE = 'table'
CORRELATION_FILE = 'correlation.csv'
MANIFEST_FILE = 'manifest.json'
RANKS_FILE = 'ranks.tsv'
DIST_FILE = 'dist_{source}.tsv'
TABLE_FLOAT_FORMAT = '%.3f'
