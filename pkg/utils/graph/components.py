from typing import Iterable, List, Tuple

from utils.algorithms.union_find import UnionFind
from utils.errors import IntegrityError
from utils.graph.graph import Graph


def wcc(vertex_set: Iterable[int], local_arcs: Iterable[Tuple[int, int]]) \
        -> List[List[int]]:
    """
    정점 집합과 그 안에서만 이어지는 arc 로 연결 요소를 구한다. (union-find)
    요소 순서: 크기 내림차순, 같으면 최소 정점 id 오름차순

    :exception IntegrityError: arc 끝점이 집합 밖에 있는 경우
    """
    uf = UnionFind(vertex_set)
    for u, v in local_arcs:
        if u not in uf or v not in uf:
            raise IntegrityError(f"arc ({u}, {v}) leaves the vertex set")
        uf.union(u, v)
    components = uf.groups()
    components.sort(key=lambda c: (-len(c), c[0]))
    return components


def connected_components(g: Graph) -> List[List[int]]:
    return wcc(range(g.n), g.edges())


def largest_component(g: Graph) -> List[int]:
    components = connected_components(g)
    return components[0] if components else []

