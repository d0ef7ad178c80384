import logging
from typing import List, Sequence, Tuple

import numpy as np

from utils.errors import GraphArgumentError
from utils.graph.graph import Graph

logger = logging.getLogger(__name__)

__all__ = [
    "generate_grid", "generate_powerlaw", "generate_random", "generate_path",
    "generate_cycle", "generate_star", "generate_complete", "relabel", "permute",
    "generate_from_spec", "GENERATOR_KINDS",
]

GENERATOR_KINDS = ('grid', 'powerlaw', 'random', 'path', 'cycle', 'star', 'complete')


def generate_grid(width: int, height: int) -> Graph:
    """
    4-이웃 격자 그래프 (공간 그래프 대용)
    정점 (x, y) 의 id 는 y * width + x
    """
    if width < 1 or height < 1:
        raise GraphArgumentError(f"grid dimensions must be >= 1, got {width}x{height}")
    edges = []
    for y in range(height):
        for x in range(width):
            v = y * width + x
            if x + 1 < width:
                edges.append((v, v + 1))
            if y + 1 < height:
                edges.append((v, v + width))
    return Graph.from_edges(width * height, edges)


def generate_powerlaw(n: int, attach: int, seed: int) -> Graph:
    """
    선호적 연결(preferential attachment) 그래프 (powerlaw 그래프 대용)

    처음 attach 개 정점은 path 로 잇고, 이후 정점 v 는 기존 정점 중
    attach 개를 차수에 비례하게 골라 연결한다. 중복 대상이 뽑히면 다시 뽑는다.
    후보 풀에는 seed path 의 정점이 한번씩 미리 들어가 있다. (attach=1 일 때 첫 정점의 차수가 0)

    간선 수 m = attach * (n - attach) + (attach - 1)
    """
    if attach < 1 or n <= attach:
        raise GraphArgumentError(f"need n > attach >= 1, got n={n} attach={attach}")

    rng = np.random.default_rng(seed)
    edges: List[Tuple[int, int]] = [(i, i + 1) for i in range(attach - 1)]
    pool: List[int] = list(range(attach))
    for u, v in edges:
        pool.extend((u, v))

    for v in range(attach, n):
        targets = set()
        while len(targets) < attach:
            targets.add(pool[int(rng.integers(len(pool)))])
        for t in sorted(targets):
            edges.append((t, v))
            pool.extend((t, v))

    g = Graph.from_edges(n, edges)
    logger.debug("powerlaw n=%d attach=%d seed=%d -> m=%d", n, attach, seed, g.edge_count)
    return g


def generate_random(n: int, m: int, seed: int) -> Graph:
    """
    균등 G(n, m) 랜덤 그래프, self-loop 와 중복 간선 없음
    """
    if n < 2 or m < 0 or m > n * (n - 1) // 2:
        raise GraphArgumentError(f"cannot place m={m} edges on n={n} vertices")
    rng = np.random.default_rng(seed)
    chosen = set()
    while len(chosen) < m:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u == v:
            continue
        chosen.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(chosen))


def generate_path(n: int) -> Graph:
    if n < 1:
        raise GraphArgumentError("path needs at least one vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def generate_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphArgumentError("cycle needs at least three vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def generate_star(leaves: int) -> Graph:
    """
    K_{1,leaves}, 중심(hub) 은 정점 0
    """
    if leaves < 1:
        raise GraphArgumentError("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def generate_complete(n: int) -> Graph:
    if n < 1:
        raise GraphArgumentError("complete graph needs at least one vertex")
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def relabel(g: Graph, permutation: Sequence[int]) -> Graph:
    """
    정점 v 를 permutation[v] 로 옮긴 그래프
    """
    if sorted(permutation) != list(range(g.n)):
        raise GraphArgumentError("permutation must be a rearrangement of 0..n-1")
    edges = [(permutation[u], permutation[v]) for u, v in g.edges()]
    return Graph.from_edges(g.n, edges)


def permute(g: Graph, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return relabel(g, [int(x) for x in rng.permutation(g.n)])


def generate_from_spec(spec: str, seed: int) -> Graph:
    """
    CLI 생성기 문자열 해석
    grid:WxH | powerlaw:N:A | random:N:M | path:N | cycle:N | star:N | complete:N
    """
    kind, _, args = spec.partition(':')
    try:
        if kind == 'grid':
            w, h = args.lower().split('x')
            return generate_grid(int(w), int(h))
        if kind == 'powerlaw':
            n, a = args.split(':')
            return generate_powerlaw(int(n), int(a), seed)
        if kind == 'random':
            n, m = args.split(':')
            return generate_random(int(n), int(m), seed)
        simple = {
            'path': generate_path,
            'cycle': generate_cycle,
            'star': generate_star,
            'complete': generate_complete,
        }
        if kind in simple:
            return simple[kind](int(args))
    except ValueError as e:
        if isinstance(e, GraphArgumentError):
            raise
        raise GraphArgumentError(f"bad generator spec {spec!r}: {e}") from None
    raise GraphArgumentError(f"unknown generator {kind!r} in {spec!r}")
