"""
Birleşim-bulma (union-find) yapısı
Yol sıkıştırma ve rütbe ile birleştirme; durum çemberleri, Γ grafiği ve
bağlantılılık testleri için kullanılır.
"""

from typing import Dict, Hashable, Iterable, List


class UnionFind:
    """Hashlenebilir elemanlar üzerinde ayrık kümeler"""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: Dict[Hashable, Hashable] = {}
        self.rank: Dict[Hashable, int] = {}
        for x in items:
            self.add(x)

    def add(self, x: Hashable):
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x: Hashable) -> Hashable:
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Hashable, y: Hashable) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1
        return True

    def connected(self, x: Hashable, y: Hashable) -> bool:
        return self.find(x) == self.find(y)

    def count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)

    def classes(self) -> List[List[Hashable]]:
        """Sınıflar; her sınıf ve sınıf listesi en küçük elemana göre sıralı"""
        groups: Dict[Hashable, List[Hashable]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
