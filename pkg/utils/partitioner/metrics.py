import logging
from typing import List, Tuple

import numpy as np

from utils import settings
from utils.errors import GraphArgumentError, IntegrityError, SizeCapError
from utils.graph.graph import Graph
from utils.partitioner.layout import PartitionLayout, max_part_size

logger = logging.getLogger(__name__)


def __check_cover(g: Graph, layout: PartitionLayout):
    if layout.n != g.n:
        raise IntegrityError(f"layout covers {layout.n} vertices but graph has {g.n}")


def edge_cut(g: Graph, layout: PartitionLayout) -> Tuple[int, float]:
    """
    :return: (끝점이 서로 다른 파티션에 있는 무방향 간선 수, 그 비율)
    """
    __check_cover(g, layout)
    part = layout.vertex_to_partition
    cut = sum(1 for u, v in g.edges() if part[u] != part[v])
    m = g.edge_count
    return cut, (cut / m if m else 0.0)


def machine_edge_cut(g: Graph, layout: PartitionLayout) -> int:
    """
    끝점이 서로 다른 머신에 있는 무방향 간선 수 (네트워크를 타는 간선)
    """
    __check_cover(g, layout)
    return sum(1 for u, v in g.edges() if layout.machine_of_vertex(u) != layout.machine_of_vertex(v))


def partition_sizes(layout: PartitionLayout) -> List[int]:
    return layout.sizes()


def laplacian(g: Graph) -> np.ndarray:
    """
    L = D - A (dense)
    """
    lap = np.zeros((g.n, g.n), dtype=np.float64)
    for u, adj in enumerate(g.adjacency):
        lap[u, u] = len(adj)
        for v in adj:
            lap[u, v] = -1.0
    return lap


def __spectrum(g: Graph) -> np.ndarray:
    if g.n > settings.DONATH_CAP:
        raise SizeCapError(f"eigenvalue bound needs a dense {g.n}x{g.n} solve; "
                           f"limit is n <= {settings.DONATH_CAP}, partition a smaller graph")
    return np.linalg.eigvalsh(laplacian(g))


def __check_p(g: Graph, p: int):
    if p < 1 or p > g.n:
        raise GraphArgumentError(f"need 1 <= p <= n, got p={p} n={g.n}")


def donath_bound(g: Graph, p: int, balance_factor: float = 1.0) -> float:
    """
    edge cut 의 하한 (Laplacian 고유값 기반)

    파티션 크기를 m_1 >= m_2 >= ... >= m_p (균형 상한까지 앞에서부터 채움) 로 두고
    가장 작은 p 개의 고유값 λ_1 <= ... <= λ_p 와 짝지어 ½ Σ m_i λ_i 를 돌려준다.
    p 가 n 을 나누고 balance_factor = 1 이면 (n / 2p) Σ λ_i 와 같다.

    :exception SizeCapError: n > DONATH_CAP
    """
    __check_p(g, p)
    if p == 1:
        return 0.0
    eigenvalues = __spectrum(g)[:p]
    cap = max_part_size(g.n, p, balance_factor)
    remaining = g.n
    sizes = []
    for i in range(p):
        size = min(cap, remaining - (p - 1 - i))
        sizes.append(size)
        remaining -= size
    bound = 0.5 * float(np.dot(np.asarray(sizes, dtype=np.float64), eigenvalues))
    # 고유값 오차로 0 아래로 내려가는 경우
    return max(bound, 0.0)


def donath_bound_printed(g: Graph, p: int) -> float:
    """
    (n / p) * (가장 큰 p 개 고유값의 합)
    보고서에서 하한과 나란히 보여주기 위한 값, 하한으로 쓰지 않는다.
    """
    __check_p(g, p)
    eigenvalues = __spectrum(g)
    return g.n / p * float(np.sum(eigenvalues[-p:]))


def mincut_oracle(g: Graph, p: int, balance_factor: float = 1.0) -> int:
    """
    모든 배정을 나열해 구한 정확한 최소 cut
    파티션은 비어있지 않고 크기가 ceil(balance_factor * n / p) 이하여야 한다.
    정점 0 은 파티션 0 에 고정 (파티션 이름 대칭)

    :exception SizeCapError: n > ORACLE_CAP 또는 p 가 2, 3 이 아님
    """
    n = g.n
    if n > settings.ORACLE_CAP or p not in (2, 3):
        raise SizeCapError(f"exhaustive min cut supports n <= {settings.ORACLE_CAP} and p in (2, 3), "
                           f"got n={n} p={p}")
    __check_p(g, p)
    cap = max_part_size(n, p, balance_factor)

    codes = np.arange(p ** (n - 1), dtype=np.int64)
    assign = np.zeros((codes.size, n), dtype=np.int8)
    for v in range(1, n):
        assign[:, v] = codes % p
        codes //= p

    feasible = np.ones(assign.shape[0], dtype=bool)
    for part in range(p):
        size = (assign == part).sum(axis=1)
        feasible &= (size >= 1) & (size <= cap)

    cuts = np.zeros(assign.shape[0], dtype=np.int32)
    for u, v in g.edges():
        cuts += assign[:, u] != assign[:, v]

    best = int(cuts[feasible].min())
    logger.debug("oracle n=%d p=%d cap=%d: %d feasible, min cut %d", n, p, cap, int(feasible.sum()), best)
    return best
