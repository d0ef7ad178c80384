from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """
    path compression + union by size 를 적용한 Disjoint Set
    원소가 0..n-1 로 촘촘하지 않아도 되도록 dict 로 부모를 관리한다.
    """
    parents: Dict[Hashable, Hashable]
    sizes: Dict[Hashable, int]

    def __init__(self, elements: Iterable[Hashable] = ()):
        self.parents = {}
        self.sizes = {}
        for e in elements:
            self.add(e)

    def __contains__(self, elem) -> bool:
        return elem in self.parents

    def add(self, elem):
        if elem not in self.parents:
            self.parents[elem] = elem
            self.sizes[elem] = 1

    def find(self, elem):
        root = elem
        while self.parents[root] != root:
            root = self.parents[root]
        # 경로 압축
        while elem != root:
            nxt = self.parents[elem]
            self.parents[elem] = root
            elem = nxt
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        return True

    def groups(self) -> List[List]:
        """
        원소를 root 별로 묶는다. 각 그룹은 오름차순 정렬.
        """
        grouped: Dict[Hashable, List] = {}
        for e in self.parents:
            grouped.setdefault(self.find(e), []).append(e)
        return [sorted(members) for members in grouped.values()]
