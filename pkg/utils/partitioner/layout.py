import hashlib
import json
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from libs.resource_access import RawFileRead, RawFileWrite
from utils.errors import GraphArgumentError, IntegrityError

STRATEGIES = ('DP', 'FP', 'HP', 'HA')


def max_part_size(n: int, p: int, balance_factor: float) -> int:
    """
    ceil(balance_factor * n / p), 부동소수 오차로 정수가 한칸 올라가지 않도록 반올림 후 ceil
    """
    return math.ceil(round(balance_factor * n / p, 9))


@dataclass(frozen=True)
class ClusterSpec:
    """
    k 대의 대칭 머신, 머신마다 c 개 코어
    """
    k: int
    c: int

    def __post_init__(self):
        if self.k < 1 or self.c < 1:
            raise GraphArgumentError(f"cluster needs k >= 1 and c >= 1, got k={self.k} c={self.c}")

    def partition_count(self, strategy: str) -> int:
        return self.k if strategy == 'DP' else self.k * self.c


@dataclass(frozen=True)
class PartitionLayout:
    """
    분할 결과

    :param strategy: DP | FP | HP | HA
    :param vertex_to_partition: 정점 -> 파티션
    :param partition_to_machine: 파티션 -> 머신
    :param over_balance: 균형 조건을 끝내 맞추지 못했는지
    :param graph_fingerprint: 분할 대상 그래프 fingerprint
    """
    strategy: str
    cluster: ClusterSpec
    p: int
    vertex_to_partition: Tuple[int, ...]
    partition_to_machine: Tuple[int, ...]
    balance_factor: float
    seed: Optional[int] = None
    over_balance: bool = False
    graph_fingerprint: str = ''

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise GraphArgumentError(f"unknown strategy {self.strategy!r}")
        if self.p != self.cluster.partition_count(self.strategy):
            raise IntegrityError(f"{self.strategy} needs p={self.cluster.partition_count(self.strategy)}, got {self.p}")
        if len(self.partition_to_machine) != self.p:
            raise IntegrityError("partition_to_machine must list every partition")
        if any(not 0 <= pid < self.p for pid in self.vertex_to_partition):
            raise IntegrityError("vertex assigned to a partition outside 0..p-1")
        per_machine = [0] * self.cluster.k
        for m in self.partition_to_machine:
            if not 0 <= m < self.cluster.k:
                raise IntegrityError(f"partition placed on unknown machine {m}")
            per_machine[m] += 1
        expected = 1 if self.strategy == 'DP' else self.cluster.c
        if any(cnt != expected for cnt in per_machine):
            raise IntegrityError(f"{self.strategy} must host exactly {expected} partition(s) per machine")
        if self.strategy == 'DP' and tuple(self.partition_to_machine) != tuple(range(self.p)):
            raise IntegrityError("DP places partition i on machine i")

    @property
    def n(self) -> int:
        return len(self.vertex_to_partition)

    @property
    def max_allowed_size(self) -> int:
        return max_part_size(self.n, self.p, self.balance_factor)

    def machine_of_vertex(self, v: int) -> int:
        return self.partition_to_machine[self.vertex_to_partition[v]]

    def partition_members(self) -> List[List[int]]:
        members: List[List[int]] = [[] for _ in range(self.p)]
        for v, pid in enumerate(self.vertex_to_partition):
            members[pid].append(v)
        return members

    def sizes(self) -> List[int]:
        sizes = [0] * self.p
        for pid in self.vertex_to_partition:
            sizes[pid] += 1
        return sizes

    def sidecar(self) -> Dict[str, Any]:
        return {
            'strategy': self.strategy,
            'k': self.cluster.k,
            'c': self.cluster.c,
            'p': self.p,
            'seed': self.seed,
            'balance_factor': self.balance_factor,
            'partition_to_machine': list(self.partition_to_machine),
            'over_balance': self.over_balance,
            'graph_fingerprint': self.graph_fingerprint,
        }

    @property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(json.dumps(self.sidecar(), sort_keys=True).encode('utf-8'))
        h.update(','.join(map(str, self.vertex_to_partition)).encode('ascii'))
        return h.hexdigest()


def save_layout(layout: PartitionLayout, map_path: str, sidecar_path: str):
    """
    분할 맵 파일 ("vertex_id<TAB>partition_id") + JSON sidecar
    """
    with RawFileWrite(map_path) as w:
        for v, pid in enumerate(layout.vertex_to_partition):
            w.write(f"{v}\t{pid}\n")
    with RawFileWrite(sidecar_path) as w:
        json.dump(layout.sidecar(), w, indent=2, sort_keys=True)
        w.write('\n')


def load_layout(map_path: str, sidecar_path: str) -> PartitionLayout:
    with RawFileRead(sidecar_path) as r:
        meta = json.load(r)
    assignment: Dict[int, int] = {}
    with RawFileRead(map_path) as r:
        for line_no, line in enumerate(r, start=1):
            if not line.strip():
                continue
            v, pid = line.split('\t')
            assignment[int(v)] = int(pid)
    if sorted(assignment) != list(range(len(assignment))):
        raise IntegrityError(f"{map_path}: vertex ids are not dense 0..n-1")
    return PartitionLayout(
        strategy=meta['strategy'],
        cluster=ClusterSpec(meta['k'], meta['c']),
        p=meta['p'],
        vertex_to_partition=tuple(assignment[v] for v in range(len(assignment))),
        partition_to_machine=tuple(meta['partition_to_machine']),
        balance_factor=meta['balance_factor'],
        seed=meta['seed'],
        over_balance=meta.get('over_balance', False),
        graph_fingerprint=meta.get('graph_fingerprint', ''),
    )
