import logging
from typing import List, Optional

import numpy as np

from utils import settings
from utils.algorithms.seeding import derive_seed
from utils.errors import GraphArgumentError
from utils.graph.graph import Graph
from utils.partitioner.layout import ClusterSpec, PartitionLayout, max_part_size
from utils.partitioner.multilevel import partition_balanced

logger = logging.getLogger(__name__)


def partition_hash(g: Graph, cluster: ClusterSpec) -> PartitionLayout:
    """
    HA: 정점 v -> 파티션 (v mod p), p = k * c
    파티션 i 는 머신 floor(i / c) 에 놓인다.
    """
    if g.n < 1:
        raise GraphArgumentError("cannot hash-partition an empty graph")
    p = cluster.k * cluster.c
    return PartitionLayout(
        strategy='HA',
        cluster=cluster,
        p=p,
        vertex_to_partition=tuple(v % p for v in range(g.n)),
        partition_to_machine=tuple(i // cluster.c for i in range(p)),
        balance_factor=1.0,
        graph_fingerprint=g.fingerprint,
    )


def strategy_dp(g: Graph,
                cluster: ClusterSpec,
                seed: int = 0,
                balance_factor: float = settings.DEFAULT_BALANCE_FACTOR) \
        -> PartitionLayout:
    """
    DP: k 개로 균형 분할, 파티션 i 는 머신 i
    """
    result = partition_balanced(g, cluster.k, balance_factor, seed)
    logger.info("DP k=%d: cut=%d over_balance=%s", cluster.k, result.cut, result.over_balance)
    return PartitionLayout(
        strategy='DP',
        cluster=cluster,
        p=cluster.k,
        vertex_to_partition=result.assignment,
        partition_to_machine=tuple(range(cluster.k)),
        balance_factor=balance_factor,
        seed=seed,
        over_balance=result.over_balance,
        graph_fingerprint=g.fingerprint,
    )


def strategy_fp(g: Graph,
                cluster: ClusterSpec,
                seed: int = 0,
                balance_factor: float = settings.DEFAULT_BALANCE_FACTOR) \
        -> PartitionLayout:
    """
    FP: k * c 개로 바로 균형 분할한 뒤, 파티션을 무작위로 섞어 머신마다 c 개씩 나눠준다.
    섞는 순서는 derive_seed(seed, 'fp-deal') 로 결정된다.
    """
    p = cluster.k * cluster.c
    result = partition_balanced(g, p, balance_factor, seed)
    rng = np.random.default_rng(derive_seed(seed, 'fp-deal'))
    dealt = [int(x) for x in rng.permutation(p)]
    partition_to_machine = [0] * p
    for position, pid in enumerate(dealt):
        partition_to_machine[pid] = position // cluster.c
    logger.info("FP p=%d: cut=%d over_balance=%s", p, result.cut, result.over_balance)
    return PartitionLayout(
        strategy='FP',
        cluster=cluster,
        p=p,
        vertex_to_partition=result.assignment,
        partition_to_machine=tuple(partition_to_machine),
        balance_factor=balance_factor,
        seed=seed,
        over_balance=result.over_balance,
        graph_fingerprint=g.fingerprint,
    )


def strategy_hp(g: Graph,
                cluster: ClusterSpec,
                seed: int = 0,
                balance_factor: float = settings.DEFAULT_BALANCE_FACTOR) \
        -> PartitionLayout:
    """
    HP: DP 와 똑같이 k 개로 나눈 뒤 (머신 배정), 머신마다 유도 부분 그래프를 다시 c 개로 나눈다.
    2단계 분할의 최대 크기는 전역 기준 ceil(balance_factor * n / (k * c)) 이다.
    머신 i 의 j 번째 하위 파티션의 id 는 i * c + j.
    """
    k, c = cluster.k, cluster.c
    first = partition_balanced(g, k, balance_factor, seed)
    p = k * c
    limit = max_part_size(g.n, p, balance_factor)
    over_balance = first.over_balance

    members: List[List[int]] = [[] for _ in range(k)]
    for v, machine in enumerate(first.assignment):
        members[machine].append(v)

    vertex_to_partition: List[Optional[int]] = [None] * g.n
    for machine, vertices in enumerate(members):
        sub, local_to_global = g.induced_subgraph(vertices)
        if sub.n < c:
            raise GraphArgumentError(f"machine {machine} holds {sub.n} vertices, cannot split into c={c}")
        second = partition_balanced(sub, c, balance_factor, derive_seed(seed, f'hp-level2:{machine}'),
                                    max_size=limit)
        over_balance = over_balance or second.over_balance
        for local, part in enumerate(second.assignment):
            vertex_to_partition[local_to_global[local]] = machine * c + part
        logger.debug("HP machine %d: %d vertices, second level cut=%d", machine, sub.n, second.cut)

    logger.info("HP k=%d c=%d: first level cut=%d over_balance=%s", k, c, first.cut, over_balance)
    return PartitionLayout(
        strategy='HP',
        cluster=cluster,
        p=p,
        vertex_to_partition=tuple(vertex_to_partition),
        partition_to_machine=tuple(i // c for i in range(p)),
        balance_factor=balance_factor,
        seed=seed,
        over_balance=over_balance,
        graph_fingerprint=g.fingerprint,
    )


__STRATEGY_BUILDERS = {
    'DP': strategy_dp,
    'FP': strategy_fp,
    'HP': strategy_hp,
}


def build_layout(g: Graph,
                 strategy: str,
                 cluster: ClusterSpec,
                 seed: int = 0,
                 balance_factor: float = settings.DEFAULT_BALANCE_FACTOR) \
        -> PartitionLayout:
    """
    전략 이름으로 분할을 만든다.
    :exception GraphArgumentError: 알 수 없는 전략
    """
    if strategy == 'HA':
        return partition_hash(g, cluster)
    builder = __STRATEGY_BUILDERS.get(strategy)
    if builder is None:
        raise GraphArgumentError(f"unknown strategy {strategy!r}, expected one of DP, FP, HP, HA")
    return builder(g, cluster, seed, balance_factor)
