import logging
import re
from typing import Dict, List, Optional, Tuple

from libs.resource_access import RawFileRead, RawFileWrite
from utils.errors import EdgeListParseError, EmptyGraphError
from utils.graph.graph import Graph

logger = logging.getLogger(__name__)

SIZE_HEADER = re.compile(r'^#\s*n=(\d+)\s+m=(\d+)\s*$')
IDS_HEADER = '# ids'


def load_edge_list(path: str) -> Graph:
    """
    SNAP 형식의 edge list 를 읽는다.
    '#' 으로 시작하는 줄은 주석, 빈 줄은 무시한다.

    save_edge_list 가 남긴 머리말이 있으면 그대로 따른다.
      '# n=N m=M' : 정점 수 N (고립 정점 포함), id 는 0..N-1 그대로
      '# ids a b c ...' : dense id i 의 원본 id 는 i 번째 값
    머리말이 없으면 id 는 처음 등장한 순서대로 0..n-1 로 다시 매긴다. (원본 id 는 graph.original_ids)

    :exception EdgeListParseError: 정수 두개가 아닌 줄, 머리말과 맞지 않는 id
    :exception EmptyGraphError: 정점이 하나도 없는 경우
    """
    remap: Dict[int, int] = {}
    original_ids: List[int] = []
    edges: List[Tuple[int, int]] = []
    declared_n: Optional[int] = None
    declared_m: Optional[int] = None
    header_line = 0
    fixed_ids = False

    def __dense_id(raw: int, line_no: int, line: str) -> int:
        if raw not in remap:
            if fixed_ids:
                raise EdgeListParseError(line_no, line, 'vertex id not declared in the header')
            remap[raw] = len(original_ids)
            original_ids.append(raw)
        return remap[raw]

    with RawFileRead(path) as r:
        for line_no, line in enumerate(r, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            if stripped.startswith('#'):
                if edges:
                    continue
                sizes = SIZE_HEADER.match(stripped)
                if sizes:
                    declared_n, declared_m = int(sizes.group(1)), int(sizes.group(2))
                    header_line = line_no
                    if not fixed_ids:
                        original_ids[:] = range(declared_n)
                        remap = {v: v for v in original_ids}
                        fixed_ids = True
                elif stripped.startswith(IDS_HEADER + ' ') or stripped == IDS_HEADER:
                    try:
                        original_ids[:] = [int(t) for t in stripped[len(IDS_HEADER):].split()]
                    except ValueError:
                        raise EdgeListParseError(line_no, line, 'bad id header') from None
                    remap = {raw: i for i, raw in enumerate(original_ids)}
                    fixed_ids = True
                continue
            tokens = stripped.split()
            if len(tokens) < 2:
                raise EdgeListParseError(line_no, line)
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise EdgeListParseError(line_no, line) from None
            edges.append((__dense_id(u, line_no, line), __dense_id(v, line_no, line)))

    if declared_n is not None and len(original_ids) != declared_n:
        raise EdgeListParseError(header_line, f"# n={declared_n} m={declared_m}",
                                 f"id table has {len(original_ids)} entries")
    if not original_ids:
        raise EmptyGraphError(f"{path}: no vertices found")

    g = Graph.from_edges(len(original_ids), edges, original_ids)
    if declared_m is not None and g.edge_count != declared_m:
        logger.warning("%s: header declares m=%d, found %d edges", path, declared_m, g.edge_count)
    logger.info("loaded %s: n=%d m=%d", path, g.n, g.edge_count)
    return g


def save_edge_list(g: Graph, path: str, original_ids: bool = True):
    """
    '# n=N m=M' 머리말 다음에 각 무방향 간선을 한 줄씩 "u v" 로 기록한다. (u < v, 정렬)
    original_ids 가 True 이고 원본 id 가 0..n-1 이 아니면 '# ids' 줄로 변환표도 남긴다.
    load_edge_list 로 다시 읽으면 고립 정점과 id 순서까지 같은 그래프가 된다.
    """
    identity = tuple(range(g.n))
    ids = g.original_ids if original_ids else identity
    with RawFileWrite(path) as w:
        w.write(f"# n={g.n} m={g.edge_count}\n")
        if tuple(ids) != identity:
            w.write(f"{IDS_HEADER} {' '.join(map(str, ids))}\n")
        for u, v in g.edges():
            w.write(f"{ids[u]} {ids[v]}\n")


def write_vertex_values(path: str, values) -> None:
    """
    정점별 결과를 "vertex_id<TAB>value" 로 기록한다. (dist, rank 등)
    도달하지 못한 정점은 값이 None 이면 'inf' 로 쓴다.
    """
    with RawFileWrite(path) as w:
        for v, value in enumerate(values):
            w.write(f"{v}\t{'inf' if value is None else repr(value)}\n")
