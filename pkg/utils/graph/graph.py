import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from utils.errors import GraphArgumentError


@dataclass(frozen=True)
class Graph:
    """
    무방향 단순 그래프 (인접 리스트)

    :param n: 정점 개수, 정점 id 는 0..n-1
    :param adjacency: 정점별 정렬된 이웃 tuple
    :param directed_edge_count: 저장된 방향 arc 개수 (= 2m)
    :param original_ids: dense id -> 원본 id 변환표
    """
    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    directed_edge_count: int
    original_ids: Tuple[int, ...] = field(compare=False, repr=False)

    @classmethod
    def from_edges(cls,
                   n: int,
                   edges: Iterable[Tuple[int, int]],
                   original_ids: Optional[Sequence[int]] = None) \
            -> 'Graph':
        """
        간선 목록으로 그래프를 만든다.
        양방향으로 대칭화하고, self-loop 는 버리고, 중복 간선은 하나로 합친다.
        """
        if n < 0:
            raise GraphArgumentError(f"vertex count must be >= 0, got {n}")
        neighbor_sets = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphArgumentError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)

        adjacency = tuple(tuple(sorted(s)) for s in neighbor_sets)
        arcs = sum(len(a) for a in adjacency)
        ids = tuple(original_ids) if original_ids is not None else tuple(range(n))
        if len(ids) != n:
            raise GraphArgumentError("original id table must have n entries")
        return cls(n=n, adjacency=adjacency, directed_edge_count=arcs, original_ids=ids)

    @property
    def edge_count(self) -> int:
        """무방향 간선 수 m"""
        return self.directed_edge_count // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degrees(self) -> List[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """
        각 무방향 간선을 한번씩 (u < v), 오름차순으로
        """
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v:
                    yield u, v

    def induced_subgraph(self, vertices: Sequence[int]) \
            -> Tuple['Graph', List[int]]:
        """
        정점 집합으로 유도된 부분 그래프
        :return: (부분 그래프, local id -> global id 목록)
        """
        local_to_global = sorted(vertices)
        global_to_local = {v: i for i, v in enumerate(local_to_global)}
        edges = []
        for lu, u in enumerate(local_to_global):
            for w in self.adjacency[u]:
                lw = global_to_local.get(w)
                if lw is not None and lu < lw:
                    edges.append((lu, lw))
        return Graph.from_edges(len(local_to_global), edges), local_to_global

    @cached_property
    def fingerprint(self) -> str:
        """
        그래프 구조의 sha256, 산출물 간 출처(provenance) 확인에 쓴다.
        """
        h = hashlib.sha256()
        h.update(f"n={self.n};".encode('ascii'))
        for adj in self.adjacency:
            h.update((','.join(map(str, adj)) + ';').encode('ascii'))
        return h.hexdigest()
