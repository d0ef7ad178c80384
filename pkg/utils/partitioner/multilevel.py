import heapq
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from utils import settings
from utils.errors import GraphArgumentError
from utils.graph.graph import Graph
from utils.partitioner.layout import max_part_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BalancedPartition:
    """
    partition_balanced 결과
    :param assignment: 정점 -> 파티션
    :param max_size: 허용된 최대 파티션 크기
    :param over_balance: 최대 크기를 끝내 지키지 못했는지
    :param cut: 무방향 edge cut
    """
    assignment: Tuple[int, ...]
    p: int
    max_size: int
    over_balance: bool
    cut: int


class _Level:
    """
    coarsening 한 단계의 가중치 그래프
    cmap 은 이 단계 정점이 한 단계 더 거친 그래프의 어느 정점으로 합쳐졌는지
    """
    vwgt: List[int]
    adj: List[Dict[int, int]]
    cmap: Optional[List[int]]

    def __init__(self, vwgt: List[int], adj: List[Dict[int, int]]):
        self.vwgt = vwgt
        self.adj = adj
        self.cmap = None

    @property
    def n(self) -> int:
        return len(self.vwgt)

    @classmethod
    def from_graph(cls, g: Graph) -> '_Level':
        return cls([1] * g.n, [{w: 1 for w in g.adjacency[u]} for u in range(g.n)])


def _cut(level: _Level, assign: List[int]) -> int:
    total = 0
    for u in range(level.n):
        a = assign[u]
        for v, w in level.adj[u].items():
            if u < v and assign[v] != a:
                total += w
    return total


def _coarsen(level: _Level, rng: np.random.Generator, max_vwgt: int) -> _Level:
    """
    heavy-edge matching
    정점을 무작위 순서로 돌면서, 아직 짝이 없는 이웃 중 간선 가중치가 가장 큰 (같으면 id 가 작은) 정점과 합친다.
    """
    n = level.n
    match = [-1] * n
    for u in (int(x) for x in rng.permutation(n)):
        if match[u] != -1:
            continue
        best, best_w = u, 0
        for v, w in level.adj[u].items():
            if match[v] != -1 or level.vwgt[u] + level.vwgt[v] > max_vwgt:
                continue
            if w > best_w or (w == best_w and v < best):
                best, best_w = v, w
        match[u] = best
        match[best] = u

    cmap = [-1] * n
    cn = 0
    for u in range(n):
        if cmap[u] == -1:
            cmap[u] = cn
            cmap[match[u]] = cn
            cn += 1

    vwgt = [0] * cn
    adj: List[Dict[int, int]] = [dict() for _ in range(cn)]
    for u in range(n):
        cu = cmap[u]
        vwgt[cu] += level.vwgt[u]
        for v, w in level.adj[u].items():
            cv = cmap[v]
            if cv != cu:
                adj[cu][cv] = adj[cu].get(cv, 0) + w
    level.cmap = cmap
    return _Level(vwgt, adj)


def _next_seed(level: _Level, assign: List[int]) -> int:
    """
    이미 배정된 영역과 맞닿은 미배정 정점 중 id 가 가장 작은 것, 없으면 미배정 정점 중 가장 작은 것
    """
    fallback = -1
    for u in range(level.n):
        if assign[u] != -1:
            continue
        if fallback == -1:
            fallback = u
        if any(assign[v] != -1 for v in level.adj[u]):
            return u
    return fallback


def _grow(level: _Level, p: int, max_size: int, start: int) -> List[int]:
    """
    greedy graph growing 으로 초기 p-way 분할
    파티션마다 seed 정점에서 출발해, (파티션 쪽 간선 가중치 - 미배정 쪽 간선 가중치) 가
    가장 큰 경계 정점을 목표 무게에 닿을 때까지 붙인다. 마지막 파티션은 남은 정점 전부.
    """
    n, vwgt, adj = level.n, level.vwgt, level.adj
    assign = [-1] * n
    free_w = [sum(a.values()) for a in adj]
    part_wgt = [0] * p
    total = sum(vwgt)
    unassigned = n

    for part in range(p - 1):
        target = (total - sum(part_wgt)) / (p - part)
        seed = start if part == 0 else _next_seed(level, assign)
        in_w: Dict[int, int] = {}
        heap: List[Tuple[int, int]] = []

        def __take(u: int):
            nonlocal unassigned
            assign[u] = part
            part_wgt[part] += vwgt[u]
            unassigned -= 1
            for x, w in adj[u].items():
                free_w[x] -= w
            for x, w in adj[u].items():
                if assign[x] == -1:
                    in_w[x] = in_w.get(x, 0) + w
                    heapq.heappush(heap, (-(in_w[x] - free_w[x]), x))

        __take(seed)
        while part_wgt[part] < target and unassigned > p - 1 - part:
            chosen = -1
            while heap:
                neg_gain, v = heapq.heappop(heap)
                if assign[v] == -1 and -neg_gain == in_w[v] - free_w[v]:
                    chosen = v
                    break
            if chosen == -1:
                # 연결이 끊긴 경우 새 seed
                chosen = _next_seed(level, assign)
            if part_wgt[part] + vwgt[chosen] > max_size:
                break
            __take(chosen)

    for u in range(n):
        if assign[u] == -1:
            assign[u] = p - 1
    return assign


def _connections(level: _Level, assign: List[int], u: int) -> Dict[int, int]:
    conn: Dict[int, int] = {}
    for v, w in level.adj[u].items():
        b = assign[v]
        conn[b] = conn.get(b, 0) + w
    return conn


def _rebalance(level: _Level, assign: List[int], part_wgt: List[int],
               part_cnt: List[int], max_size: int):
    """
    최대 크기를 넘는 파티션에서 gain 이 가장 좋은 정점을 허용 범위 안의 파티션으로 옮긴다.
    이 단계의 정점 무게로 더 옮길 수 없으면 그대로 둔다. (더 세밀한 단계에서 다시 시도)
    """
    p = len(part_wgt)
    while True:
        over = [a for a in range(p) if part_wgt[a] > max_size]
        if not over:
            return
        a = max(over, key=lambda x: (part_wgt[x], -x))
        if part_cnt[a] <= 1:
            return
        best: Optional[Tuple[int, int]] = None
        best_key = None
        for u in range(level.n):
            if assign[u] != a:
                continue
            conn = _connections(level, assign, u)
            internal = conn.get(a, 0)
            for b in range(p):
                if b == a or part_wgt[b] + level.vwgt[u] > max_size:
                    continue
                key = (conn.get(b, 0) - internal, -part_wgt[b], -u, -b)
                if best_key is None or key > best_key:
                    best, best_key = (u, b), key
        if best is None:
            return
        u, b = best
        assign[u] = b
        part_wgt[a] -= level.vwgt[u]
        part_wgt[b] += level.vwgt[u]
        part_cnt[a] -= 1
        part_cnt[b] += 1


def _refine(level: _Level, assign: List[int], p: int, max_size: int, passes: int):
    """
    경계 정점 단위의 FM 계열 개선
    cut 이 줄어드는 이동, 또는 cut 은 같고 균형이 좋아지는 이동만 받아들인다.
    더 이상 이동이 없거나 pass 상한에 닿으면 멈춘다.
    """
    vwgt = level.vwgt
    part_wgt = [0] * p
    part_cnt = [0] * p
    for u, a in enumerate(assign):
        part_wgt[a] += vwgt[u]
        part_cnt[a] += 1
    _rebalance(level, assign, part_wgt, part_cnt, max_size)

    for pass_no in range(passes):
        moves, gained = 0, 0
        for u in range(level.n):
            a = assign[u]
            conn = _connections(level, assign, u)
            if not conn or (len(conn) == 1 and a in conn):
                continue
            if part_cnt[a] <= 1:
                continue
            internal = conn.get(a, 0)
            best, best_key = -1, None
            for b, w in conn.items():
                if b == a or part_wgt[b] + vwgt[u] > max_size:
                    continue
                gain = w - internal
                if gain < 0:
                    continue
                if gain == 0 and not part_wgt[b] + vwgt[u] < part_wgt[a]:
                    continue
                key = (gain, -part_wgt[b], -b)
                if best_key is None or key > best_key:
                    best, best_key = b, key
            if best != -1:
                assign[u] = best
                part_wgt[a] -= vwgt[u]
                part_wgt[best] += vwgt[u]
                part_cnt[a] -= 1
                part_cnt[best] += 1
                moves += 1
                gained += best_key[0]
        logger.debug("refine n=%d pass=%d moves=%d gain=%d", level.n, pass_no, moves, gained)
        if moves == 0:
            break


def partition_balanced(g: Graph,
                       p: int,
                       balance_factor: float = settings.DEFAULT_BALANCE_FACTOR,
                       seed: int = 0,
                       max_size: Optional[int] = None) -> BalancedPartition:
    """
    정점 균형 p-way 분할 (multilevel)

    1. heavy-edge matching 으로 max(30p, 200) 정점 이하가 될 때까지 coarsening
    2. 가장 거친 그래프에서 greedy graph growing (시작 정점을 바꿔 여러번 시도, 가장 좋은 것 채택)
    3. 한 단계씩 되돌리며 경계 정점 refinement (단계마다 최대 REFINEMENT_PASS_CAP pass)

    :param max_size: 최대 파티션 크기를 직접 지정 (HP 2단계에서 전역 상한을 쓰기 위함)
    :exception GraphArgumentError: p > n, p < 1, balance_factor < 1
    """
    n = g.n
    if n == 0:
        raise GraphArgumentError("cannot partition an empty graph")
    if p < 1 or p > n:
        raise GraphArgumentError(f"need 1 <= p <= n, got p={p} n={n}")
    if balance_factor < 1.0:
        raise GraphArgumentError(f"balance factor must be >= 1.0, got {balance_factor}")
    limit = max_size if max_size is not None else max_part_size(n, p, balance_factor)

    if p == 1:
        return BalancedPartition(tuple([0] * n), 1, limit, n > limit, 0)

    rng = np.random.default_rng(seed)
    passes = settings.REFINEMENT_PASS_CAP
    coarsen_to = max(settings.COARSEN_PER_PART * p, settings.COARSEN_FLOOR)
    max_vwgt = max(1, min(limit, math.ceil(1.5 * n / coarsen_to)))

    levels = [_Level.from_graph(g)]
    while levels[-1].n > coarsen_to:
        coarse = _coarsen(levels[-1], rng, max_vwgt)
        if coarse.n > 0.95 * levels[-1].n:
            # matching 이 거의 안 되면 멈춘다
            levels[-1].cmap = None
            break
        levels.append(coarse)
    logger.debug("coarsening levels: %s", [lv.n for lv in levels])

    coarsest = levels[-1]
    starts = [0] + [int(rng.integers(coarsest.n)) for _ in range(settings.INITIAL_PARTITION_TRIALS - 1)]
    best_assign, best_key = None, None
    for trial, start in enumerate(starts):
        assign = _grow(coarsest, p, limit, start)
        _refine(coarsest, assign, p, limit, passes)
        weights = [0] * p
        for u, a in enumerate(assign):
            weights[a] += coarsest.vwgt[u]
        key = (max(weights) > limit, _cut(coarsest, assign))
        logger.debug("initial trial %d from %d: over=%s cut=%d", trial, start, *key)
        if best_key is None or key < best_key:
            best_assign, best_key = assign, key

    assign = best_assign
    for level in reversed(levels[:-1]):
        assign = [assign[level.cmap[u]] for u in range(level.n)]
        _refine(level, assign, p, limit, passes)

    sizes = [0] * p
    for a in assign:
        sizes[a] += 1
    over = max(sizes) > limit
    cut = _cut(levels[0], assign)
    if over:
        logger.warning("balanced partition p=%d exceeds max size %d (largest %d)", p, limit, max(sizes))
    return BalancedPartition(tuple(assign), p, limit, over, cut)
