"""
Tam Doğrusal Cebir
GF(2) üzerinde bit kümesi ile rank, rasyoneller üzerinde kesirsiz
(fraction-free) tamsayı eleme. Kayan nokta kullanılmaz.
"""

from math import gcd
from typing import Callable, Dict, Hashable, Iterable, Optional

SparseRow = Dict[Hashable, int]


def gf2_rank(rows: Iterable[int]) -> int:
    """Satırlar tamsayı bit kümesi olarak verilir"""
    pivots: Dict[int, int] = {}
    rank = 0
    for x in rows:
        while x:
            high = x.bit_length() - 1
            p = pivots.get(high)
            if p is None:
                pivots[high] = x
                rank += 1
                break
            x ^= p
    return rank


def _primitive(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class IntegerEchelon:
    """Seyrek tamsayı satırlarla kesirsiz eleme

    Pivot, `order` anahtarına göre en küçük terimdir. Satır işlemi:
    yeni = a*r - b*p, ardından katsayıların ebob'una bölünür.
    """

    def __init__(self, order: Optional[Callable[[Hashable], tuple]] = None):
        self.order = order or (lambda k: k)
        self.pivots: Dict[Hashable, SparseRow] = {}

    def leading(self, row: SparseRow) -> Optional[Hashable]:
        if not row:
            return None
        return min(row, key=self.order)

    def reduce(self, row: SparseRow, store: bool = False) -> SparseRow:
        """Satırı pivotlarla indirge; store ise yeni pivot olarak sakla"""
        r = {k: v for k, v in row.items() if v}
        while r:
            lead = self.leading(r)
            p = self.pivots.get(lead)
            if p is None:
                if store:
                    self.pivots[lead] = r
                return r
            if store and len(r) < len(p):
                # kısa satır pivot olur
                self.pivots[lead] = r
                r, p = p, r
            a, b = p[lead], r[lead]
            nxt = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                nxt[k] = nxt.get(k, 0) - b * v
            r = _primitive({k: v for k, v in nxt.items() if v})
        return r

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rational_rank(rows: Iterable[SparseRow]) -> int:
    echelon = IntegerEchelon()
    for row in rows:
        echelon.reduce(row, store=True)
    return echelon.rank
