from utils.partitioner.layout import STRATEGIES, ClusterSpec, PartitionLayout, max_part_size, save_layout, load_layout
from utils.partitioner.multilevel import BalancedPartition, partition_balanced
from utils.partitioner.strategies import partition_hash, strategy_dp, strategy_fp, strategy_hp, build_layout
from utils.partitioner.metrics import edge_cut, machine_edge_cut, partition_sizes, laplacian, donath_bound, \
    donath_bound_printed, mincut_oracle
