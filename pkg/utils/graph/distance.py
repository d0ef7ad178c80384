import collections
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from utils import settings
from utils.errors import GraphArgumentError, SizeCapError
from utils.graph.components import largest_component
from utils.graph.graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiameterResult:
    value: int
    is_lower_bound: bool
    mode: str


def bfs_distances(g: Graph, source: int) -> List[Optional[int]]:
    """
    순차 BFS, 도달 못한 정점은 None
    """
    if not 0 <= source < g.n:
        raise GraphArgumentError(f"source {source} out of range for n={g.n}")
    dist: List[Optional[int]] = [None] * g.n
    dist[source] = 0
    q = collections.deque([source])
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for w in g.adjacency[u]:
            if dist[w] is None:
                dist[w] = du
                q.append(w)
    return dist


def __farthest(g: Graph, source: int) -> Tuple[int, int]:
    """
    (source 의 eccentricity, 가장 먼 정점 중 id 가 가장 작은 것)
    """
    dist = bfs_distances(g, source)
    best_d, best_v = 0, source
    for v, d in enumerate(dist):
        if d is not None and d > best_d:
            best_d, best_v = d, v
    return best_d, best_v


def eccentricity(g: Graph, v: int) -> int:
    """
    v 가 속한 연결 요소 안에서의 최대 hop 거리
    """
    return __farthest(g, v)[0]


def diameter(g: Graph,
             mode: str = 'exact',
             cap: int = settings.EXACT_DIAMETER_CAP,
             threads: int = 1) -> DiameterResult:
    """
    가장 큰 연결 요소의 지름

    exact: 모든 정점에서 BFS (정점 수가 cap 이하일 때만)
    estimate: double sweep 하한 (임의 정점 -> 가장 먼 정점 -> 다시 가장 먼 정점)

    :exception SizeCapError: exact 인데 정점 수가 cap 을 넘는 경우
    """
    if g.n == 0:
        return DiameterResult(0, False, mode)
    component = largest_component(g)

    if mode == 'exact':
        if g.n > cap:
            raise SizeCapError(
                f"exact diameter refused for n={g.n} > cap {cap}; use mode='estimate'")
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                value = max(pool.map(lambda v: eccentricity(g, v), component))
        else:
            value = max(eccentricity(g, v) for v in component)
        return DiameterResult(value, False, mode)

    if mode == 'estimate':
        _, far = __farthest(g, component[0])
        value, _ = __farthest(g, far)
        logger.debug("double sweep from %d via %d -> %d", component[0], far, value)
        return DiameterResult(value, True, mode)

    raise GraphArgumentError(f"unknown diameter mode {mode!r}")


def diameter_auto(g: Graph, cap: int = settings.EXACT_DIAMETER_CAP) -> DiameterResult:
    """
    cap 이하면 exact, 아니면 estimate
    """
    return diameter(g, 'exact' if g.n <= cap else 'estimate', cap)
