from typing import Dict, List
import collections


def __check_double_edge(g: Dict[str, List[str]]):
    """
    출발 stage 에서 같은 목적 stage 로 가는 간선이 두개 이상인 경우 찾기
    """
    for u in g:
        v_counter = collections.Counter(g[u])
        if len(v_counter) == 0:
            # 끝 stage
            continue
        v, n = v_counter.most_common(1)[0]
        if n > 1:
            raise ValueError(f"stage {u} -> {v} 간선이 중복되었습니다.")


def __check_unknown_stage(g: Dict[str, List[str]]):
    for u in g:
        for v in g[u]:
            if v not in g:
                raise ValueError(f"stage {u} 가 정의되지 않은 stage {v} 를 가리킵니다.")


def __check_only_one_destination(g: Dict[str, List[str]]):
    """
    최종 stage 가 하나인지 파악하기
    그래프가 2개 이상으로 쪼개져 있으면 여기서 걸린다.
    """
    end_cnt = sum(1 for u in g if len(g[u]) == 0)
    if end_cnt != 1:
        raise ValueError("최종 stage 는 정확히 하나여야 합니다.")


def __get_parents_size(g: Dict[str, List[str]]) -> Dict[str, int]:
    """
    해당 stage 로 들어오는 부모 stage 의 갯수
    """
    parents_size = {k: 0 for k in g.keys()}
    for u in g:
        for v in g[u]:
            parents_size[v] += 1
    return parents_size


def __topological_sort(g: Dict[str, List[str]], p: Dict[str, int]) -> List[str]:
    """
    위상 정렬 (Kahn)
    동시에 사이클도 판단한다. 진입 차수가 같이 0 이 된 stage 는 등록 순서대로 꺼낸다.
    """
    q = collections.deque(k for k in g if p[k] == 0)

    sorted_data = []
    while q:
        u = q.popleft()
        sorted_data.append(u)

        for v in g[u]:
            p[v] -= 1
            if p[v] == 0:
                q.append(v)
    if len(sorted_data) < len(g):
        raise ValueError("순환 사이클 감지")
    return sorted_data


def topological_sort(g: Dict[str, List[str]]) -> List[str]:
    """
    stage 그래프의 실행 순서
    """
    __check_unknown_stage(g)
    __check_double_edge(g)
    __check_only_one_destination(g)
    parents_size = __get_parents_size(g)
    return __topological_sort(g, parents_size)
