import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from libs.resource_access import RawFileWrite

RELATIONS = ('==', '<=', '>=', 'report')


def holds(lhs: float, relation: str, rhs: float, tolerance: float = 0.0) -> Optional[bool]:
    """
    lhs relation rhs 가 성립하는지, report 는 판정하지 않는다. (None)
    """
    if relation == 'report':
        return None
    if relation == '==':
        return abs(lhs - rhs) <= tolerance
    if relation == '<=':
        return lhs <= rhs + tolerance
    if relation == '>=':
        return lhs + tolerance >= rhs
    raise ValueError(f"unknown relation {relation!r}")


def _verdict(passed) -> str:
    if passed is None or (isinstance(passed, float) and math.isnan(passed)):
        return '-'
    return 'PASS' if passed else 'FAIL'


@dataclass(frozen=True)
class Check:
    """
    검사 하나

    :param claim_id: 검사 종류
    :param anchor: 검사가 다루는 성질 (분석식이 없는 배관 검사는 'plumbing')
    :param subject: 같은 claim 을 여러번 검사할 때 구분자 (예: 'source=3 lower')
    :param passed: 통과 여부, 보고용 값은 None
    """
    claim_id: str
    anchor: str
    subject: str
    lhs: float
    relation: str
    rhs: float
    passed: Optional[bool]
    notes: str = ''

    @classmethod
    def of(cls, claim_id: str, anchor: str, lhs: float, relation: str, rhs: float,
           subject: str = '', notes: str = '', tolerance: float = 0.0) -> 'Check':
        return cls(claim_id, anchor, subject, float(lhs), relation, float(rhs),
                   holds(lhs, relation, rhs, tolerance), notes)

    @classmethod
    def skipped(cls, claim_id: str, anchor: str, notes: str, subject: str = '') -> 'Check':
        return cls(claim_id, anchor, subject, math.nan, 'report', math.nan, None, f"not evaluated: {notes}")


@dataclass
class BoundsReport:
    checks: List[Check] = field(default_factory=list)

    def add(self, check: Check):
        self.checks.append(check)

    def ordered(self) -> List[Check]:
        return sorted(self.checks, key=lambda c: (c.claim_id, c.subject))

    def failures(self) -> List[Check]:
        return [c for c in self.ordered() if c.passed is False]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def by_claim(self, claim_id: str) -> List[Check]:
        return [c for c in self.ordered() if c.claim_id == claim_id]

    def to_dict(self) -> Dict[str, Any]:
        rows = []
        for c in self.ordered():
            row = asdict(c)
            # NaN 은 JSON 표준이 아니라서 null 로
            for key in ('lhs', 'rhs'):
                if math.isnan(row[key]):
                    row[key] = None
            rows.append(row)
        return {
            'passed': self.passed,
            'failures': len(self.failures()),
            'checks': rows,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(c) for c in self.ordered()],
                            columns=['claim_id', 'subject', 'lhs', 'relation', 'rhs', 'passed', 'anchor', 'notes'])

    def to_text(self) -> str:
        frame = self.to_frame()
        frame['passed'] = frame['passed'].apply(_verdict)
        status = 'PASS' if self.passed else f"FAIL ({len(self.failures())} failing)"
        return frame.to_string(index=False) + f"\n\n{status}\n"

    def save_json(self, path: str):
        with RawFileWrite(path) as w:
            w.write(self.to_json())
            w.write('\n')

    def save_text(self, path: str):
        with RawFileWrite(path) as w:
            w.write(self.to_text())
