from utils.programs.pagerank import PrState, PrRun, PageRankVertex, PageRankSubgraph, pr_vertex, pr_subgraph
from utils.programs.bfs import BfsState, BfsRun, BfsVertex, BfsSubgraph, BfsSweepRow, bfs_vertex, bfs_subgraph, \
    bfs_sweep
from utils.programs.cost import ALGORITHMS, expected_vertex_cost
