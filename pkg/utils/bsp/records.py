import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Tuple

import pandas as pd

from libs.resource_access import RawFileWrite


@dataclass(frozen=True)
class SuperstepRecord:
    """
    superstep 하나의 카운터

    :param index: 1 부터
    :param active_units: 이번 superstep 에 실제로 일을 한 unit 수
    :param invoked_units: compute 가 호출된 unit 수 (메시지만 받고 일을 안 한 unit 포함)
    :param compute_cost_per_machine: 머신별 비용 (머신 안 core 비용 합 중 최대)
    """
    index: int
    active_units: int
    invoked_units: int
    logical_msgs_local: int
    logical_msgs_remote: int
    physical_msgs: int
    compute_cost_per_machine: Tuple[int, ...]

    @property
    def logical_msgs(self) -> int:
        return self.logical_msgs_local + self.logical_msgs_remote

    @property
    def machine_max_cost(self) -> int:
        return max(self.compute_cost_per_machine, default=0)

    def to_dict(self) -> Dict[str, Any]:
        row = asdict(self)
        row['compute_cost_per_machine'] = list(self.compute_cost_per_machine)
        row['machine_max_cost'] = self.machine_max_cost
        return row


@dataclass
class SimMetrics:
    """
    시뮬레이션 한번의 전체 카운터
    total_supersteps 와 makespan_estimate 는 active_units > 0 인 superstep 만 센다.
    """
    program: str
    model: str
    supersteps: List[SuperstepRecord] = field(default_factory=list)
    truncated: bool = False
    graph_fingerprint: str = ''
    layout_fingerprint: str = ''
    metagraph_fingerprint: str = ''

    def active_records(self) -> List[SuperstepRecord]:
        return [r for r in self.supersteps if r.active_units > 0]

    @property
    def total_supersteps(self) -> int:
        return len(self.active_records())

    @property
    def total_logical_local(self) -> int:
        return sum(r.logical_msgs_local for r in self.supersteps)

    @property
    def total_logical_remote(self) -> int:
        return sum(r.logical_msgs_remote for r in self.supersteps)

    @property
    def total_logical(self) -> int:
        return self.total_logical_local + self.total_logical_remote

    @property
    def total_physical(self) -> int:
        return sum(r.physical_msgs for r in self.supersteps)

    @property
    def makespan_estimate(self) -> int:
        return sum(r.machine_max_cost for r in self.active_records())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'program': self.program,
            'model': self.model,
            'truncated': self.truncated,
            'graph_fingerprint': self.graph_fingerprint,
            'layout_fingerprint': self.layout_fingerprint,
            'metagraph_fingerprint': self.metagraph_fingerprint,
            'total_supersteps': self.total_supersteps,
            'total_logical_local': self.total_logical_local,
            'total_logical_remote': self.total_logical_remote,
            'total_physical': self.total_physical,
            'makespan_estimate': self.makespan_estimate,
            'supersteps': [r.to_dict() for r in self.supersteps],
        }

    def to_frame(self) -> pd.DataFrame:
        """
        superstep 당 한 행
        """
        rows = []
        for r in self.supersteps:
            row = r.to_dict()
            row['compute_cost_per_machine'] = ' '.join(map(str, r.compute_cost_per_machine))
            rows.append(row)
        return pd.DataFrame(rows, columns=[
            'index', 'active_units', 'invoked_units', 'logical_msgs_local', 'logical_msgs_remote',
            'physical_msgs', 'compute_cost_per_machine', 'machine_max_cost',
        ])

    def save_json(self, path: str):
        with RawFileWrite(path) as w:
            json.dump(self.to_dict(), w, indent=2, sort_keys=True)
            w.write('\n')

    def save_csv(self, path: str):
        with RawFileWrite(path) as w:
            self.to_frame().to_csv(w, index=False)
