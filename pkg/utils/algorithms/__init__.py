from utils.algorithms.topological_sort import topological_sort
from utils.algorithms.union_find import UnionFind
from utils.algorithms.seeding import derive_seed, fresh_seed
