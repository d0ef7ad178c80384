from utils.metagraph.metagraph import LOCAL, REMOTE, Subgraph, MetaVertex, MetaEdge, MetaGraph, build_metagraph
from utils.metagraph.stats import TABLE_COLUMNS, MetaStats, meta_stats, meta_diameter, meta_radius, \
    meta_eccentricity, meta_degree_cdf, stats_frame, strategy_table
from utils.metagraph.export import metagraph_to_dict, save_metagraph, read_metagraph_header, save_meta_stats
