import collections
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from libs.resource_access import RawFileWrite
from utils.errors import EmptyGraphError, GraphArgumentError
from utils.graph.graph import Graph


@dataclass(frozen=True)
class DegreeCdf:
    """
    차수별 누적 정점 비율
    :param rows: (degree, cumulative_vertex_fraction) 오름차순
    :param mean_degree: directed_edge_count / n
    """
    rows: Tuple[Tuple[int, float], ...]
    mean_degree: float

    def fraction_at(self, degree: int) -> float:
        """degree 이하인 정점의 비율"""
        frac = 0.0
        for d, f in self.rows:
            if d > degree:
                break
            frac = f
        return frac

    @property
    def max_degree(self) -> int:
        return self.rows[-1][0]

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.rows), columns=['degree', 'cumulative_fraction'])

    def save_csv(self, path: str):
        with RawFileWrite(path) as w:
            self.to_dataframe().to_csv(w, index=False)


@dataclass(frozen=True)
class PowerlawParams:
    """
    deg(d) = alpha * d^beta
    """
    exponent_beta: float
    scale_alpha: float


def cdf_from_degrees(degrees: Sequence[int]) -> DegreeCdf:
    if not degrees:
        raise EmptyGraphError("degree CDF needs at least one vertex")
    counts = collections.Counter(degrees)
    total = len(degrees)
    rows, running = [], 0
    for d in sorted(counts):
        running += counts[d]
        rows.append((d, running / total))
    # 마지막 행은 반올림 오차 없이 1.0
    rows[-1] = (rows[-1][0], 1.0)
    return DegreeCdf(rows=tuple(rows), mean_degree=sum(degrees) / total)


def degree_cdf(g: Graph) -> DegreeCdf:
    return cdf_from_degrees(g.degrees())


def fit_powerlaw(g: Graph, bins: int = 20) -> PowerlawParams:
    """
    로그 구간(geometric bin) 으로 묶은 차수 히스토그램을 log-log 최소제곱으로 맞춘다.
    구간 폭으로 나눈 밀도를 쓰기 때문에 꼬리의 count=1 정점들이 기울기를 끌어올리지 않는다.
    """
    degrees = np.array([d for d in g.degrees() if d > 0])
    if degrees.size == 0:
        raise GraphArgumentError("cannot fit a powerlaw on a graph without edges")
    edges = np.unique(np.floor(np.logspace(0, np.log10(degrees.max() + 1), bins + 1)))
    if edges.size < 3:
        raise GraphArgumentError("degree range too narrow for a powerlaw fit")
    counts, edges = np.histogram(degrees, bins=edges)
    widths = np.diff(edges)
    centers = np.sqrt(edges[:-1] * edges[1:])
    mask = counts > 0
    if mask.sum() < 2:
        raise GraphArgumentError("degree range too narrow for a powerlaw fit")
    slope, intercept = np.polyfit(np.log(centers[mask]), np.log(counts[mask] / widths[mask]), 1)
    return PowerlawParams(exponent_beta=float(slope), scale_alpha=float(np.exp(intercept)))
