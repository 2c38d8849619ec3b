"""
Khovanov Homolojisi
Çözünürlük küpü, iki dereceli Khovanov kompleksi, Lee deformasyonu ve
Rasmussen s-değişmezi.

Kurallar:
  - köşe v: i. bit 0 ise A, 1 ise B düzleştirmesi
  - üreteç (v, mask): mask'in c. biti 1 ise c çemberi v-, değilse v+
  - i = |v| - n_-, j = (#v+ - #v-) + |v| + n_+ - 2 n_-
  - kenar işareti (-1)^(v'nin k'dan küçük bitlerinin sayısı)
Pozitif yonca için s = 2.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Tuple

import sympy as sp

from .classical import jones_coefficients
from .diagram import Diagram
from .errors import CeilingExceeded, DiagramError
from .linalg import IntegerEchelon, gf2_rank, rational_rank
from .settings import FIELDS, get_settings
from .turaev import oriented_state_bits, state_union_find

logger = logging.getLogger(__name__)

q = sp.Symbol('q')

Generator = Tuple[int, int]


def _popcount(x: int) -> int:
    return bin(x).count('1')


# ==================== ÇÖZÜNÜRLÜK KÜPÜ ====================

@dataclass(frozen=True)
class CubeVertex:
    """circle_of: etiket -> çember; serbest çemberler etiketli çemberlerden sonra gelir"""
    bits: int
    circles: int
    circle_of: Dict[int, int]

    @property
    def labelled_circles(self) -> int:
        return len(set(self.circle_of.values()))


@dataclass(frozen=True)
class CubeEdge:
    source: int
    target: int
    crossing: int
    kind: str                 # 'merge' ya da 'split'
    sign: int
    touched: Tuple[int, int]  # kaynak köşede kesişime değen çemberler


class ResolutionCube:
    """2^c köşe; kenarlar ihtiyaç anında üretilir"""

    def __init__(self, d: Diagram, vertices: List[CubeVertex]):
        self.diagram = d
        self.vertices = vertices

    @property
    def crossing_count(self) -> int:
        return self.diagram.crossing_count

    @property
    def dimension(self) -> int:
        return sum(1 << v.circles for v in self.vertices)

    def edge(self, v: int, k: int) -> CubeEdge:
        if (v >> k) & 1:
            raise DiagramError(f"köşe {v} kesişim {k} için zaten B")
        c = self.diagram.crossings[k]
        cv = self.vertices[v].circle_of
        a, b = cv[c[0]], cv[c[2]]
        kind = 'merge' if a != b else 'split'
        sign = -1 if _popcount(v & ((1 << k) - 1)) % 2 else 1
        return CubeEdge(v, v | (1 << k), k, kind, sign, (a, b))

    def edges_from(self, v: int) -> Iterator[CubeEdge]:
        for k in range(self.crossing_count):
            if not (v >> k) & 1:
                yield self.edge(v, k)


def _vertex(d: Diagram, bits: int, labels: List[int]) -> CubeVertex:
    uf = state_union_find(d.crossings, bits)
    index: Dict[int, int] = {}
    circle_of = {}
    for x in labels:
        root = uf.find(x)
        if root not in index:
            index[root] = len(index)
        circle_of[x] = index[root]
    return CubeVertex(bits, len(index) + d.loops, circle_of)


def build_cube(d: Diagram, ceiling: Optional[int] = None) -> ResolutionCube:
    limit = ceiling if ceiling is not None else get_settings().kh_ceiling
    if d.crossing_count > limit:
        raise CeilingExceeded('Khovanov küpü', limit, d.crossing_count)
    labels = sorted(d.arc_ends)
    vertices = [_vertex(d, v, labels) for v in range(1 << d.crossing_count)]
    logger.debug("küp: %d köşe, boyut %d", len(vertices), sum(1 << v.circles for v in vertices))
    return ResolutionCube(d, vertices)


# ==================== KOMPLEKS ====================

class KhovanovComplex:
    """Üreteçler (v, mask); lee=True ile Lee deformasyonu (d + Phi)"""

    def __init__(self, cube: ResolutionCube):
        self.cube = cube
        d = cube.diagram
        self.n_plus = d.n_plus
        self.n_minus = d.n_minus

    def grading(self, g: Generator) -> Tuple[int, int]:
        v, mask = g
        r = _popcount(v)
        k = self.cube.vertices[v].circles
        return r - self.n_minus, k - 2 * _popcount(mask) + r + self.n_plus - 2 * self.n_minus

    def generators(self) -> Iterator[Generator]:
        for v, vertex in enumerate(self.cube.vertices):
            for mask in range(1 << vertex.circles):
                yield v, mask

    @cached_property
    def blocks(self) -> Dict[Tuple[int, int], List[Generator]]:
        """(i, j) -> üreteçler"""
        result: Dict[Tuple[int, int], List[Generator]] = {}
        for g in self.generators():
            result.setdefault(self.grading(g), []).append(g)
        return dict(sorted(result.items()))

    def _circle_map(self, v: int, w: int) -> Dict[int, int]:
        """v çemberleri -> w çemberleri; serbest çemberler sırayla kayar"""
        cv = self.cube.vertices[v]
        cw = self.cube.vertices[w]
        mapping = {cv.circle_of[x]: cw.circle_of[x] for x in cv.circle_of}
        lv, lw = cv.labelled_circles, cw.labelled_circles
        for extra in range(cv.circles - lv):
            mapping[lv + extra] = lw + extra
        return mapping

    def differential(self, g: Generator, lee: bool = False) -> Dict[Generator, int]:
        v, mask = g
        out: Dict[Generator, int] = {}
        crossings = self.cube.diagram.crossings

        def emit(w, m, sign):
            out[(w, m)] = out.get((w, m), 0) + sign

        for e in self.cube.edges_from(v):
            w = e.target
            mapping = self._circle_map(v, w)
            cw = self.cube.vertices[w].circle_of
            a, c = e.touched
            t = crossings[e.crossing]
            bit = lambda ci: (mask >> ci) & 1
            base = 0
            for ci, wi in mapping.items():
                if ci not in (a, c) and bit(ci):
                    base |= 1 << wi
            if e.kind == 'merge':
                target = cw[t[0]]
                minus = bit(a) + bit(c)
                if minus == 0:
                    emit(w, base, e.sign)
                elif minus == 1:
                    emit(w, base | (1 << target), e.sign)
                elif lee:
                    emit(w, base, e.sign)
            else:
                t1, t2 = cw[t[0]], cw[t[2]]
                if not bit(a):
                    emit(w, base | (1 << t2), e.sign)
                    emit(w, base | (1 << t1), e.sign)
                else:
                    emit(w, base | (1 << t1) | (1 << t2), e.sign)
                    if lee:
                        emit(w, base, e.sign)
        return {k: x for k, x in out.items() if x}


def khovanov_complex(d: Diagram, ceiling: Optional[int] = None) -> KhovanovComplex:
    return KhovanovComplex(build_cube(d, ceiling))


def check_d_squared(cx: KhovanovComplex, lee: bool = False) -> bool:
    """Tüm üreteçlerde d(d(g)) = 0"""
    for g in cx.generators():
        total: Dict[Generator, int] = {}
        for h, a in cx.differential(g, lee).items():
            for k, b in cx.differential(h, lee).items():
                total[k] = total.get(k, 0) + a * b
        if any(total.values()):
            logger.warning("d^2 != 0: üreteç %s", g)
            return False
    return True


# ==================== HOMOLOJİ ====================

def _block_rank(cx: KhovanovComplex, gens: List[Generator], field: str) -> int:
    if not gens:
        return 0
    target_index: Dict[Generator, int] = {}
    rows = []
    for g in gens:
        image = cx.differential(g)
        if field == 'gf2':
            x = 0
            for h, coef in image.items():
                if coef % 2:
                    x |= 1 << target_index.setdefault(h, len(target_index))
            rows.append(x)
        else:
            rows.append({target_index.setdefault(h, len(target_index)): coef for h, coef in image.items()})
    return gf2_rank(rows) if field == 'gf2' else rational_rank(rows)


def khovanov_homology(d: Diagram, field: Optional[str] = None,
                      ceiling: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """(i, j) -> rank; writhe kaydırmalı, düğüm değişmezi"""
    field = field or get_settings().field
    if field not in FIELDS:
        raise DiagramError(f"bilinmeyen cisim: {field}")
    cx = khovanov_complex(d, ceiling)
    ranks = {key: _block_rank(cx, gens, field) for key, gens in cx.blocks.items()}
    homology = {}
    for (i, j), gens in cx.blocks.items():
        h = len(gens) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
        if h:
            homology[(i, j)] = h
    logger.debug("Kh(%s, %s): %s", d, field, homology)
    return homology


def graded_euler_characteristic(homology: Dict[Tuple[int, int], int]) -> sp.Expr:
    return sp.Add(*((-1 if i % 2 else 1) * r * q ** j for (i, j), r in homology.items()))


def unnormalized_jones(d: Diagram, ceiling: Optional[int] = None) -> sp.Expr:
    """(q + 1/q) V(t), t = q^2 ve t^(1/2) = -q"""
    total = sp.Add(*(c * (-1) ** int(2 * e) * q ** int(2 * e)
                     for e, c in jones_coefficients(d, ceiling).items()))
    return sp.expand((q + 1 / q) * total)


def is_thin(homology: Dict[Tuple[int, int], int], sigma: Optional[int] = None) -> bool:
    """Rank j - 2i için en fazla iki komşu köşegende; sigma verilirse {-sigma-1, -sigma+1}"""
    diagonals = {j - 2 * i for i, j in homology}
    if sigma is not None:
        return diagonals <= {-sigma - 1, -sigma + 1}
    return not diagonals or max(diagonals) - min(diagonals) <= 2


def total_rank(homology: Dict[Tuple[int, int], int]) -> int:
    return sum(homology.values())


def lee_homology_rank(d: Diagram, ceiling: Optional[int] = None) -> int:
    """Lee homolojisinin Q üzerindeki toplam rankı; düğümler için 2"""
    cx = khovanov_complex(d, ceiling)
    by_degree: Dict[int, List[Generator]] = {}
    for (i, _), gens in cx.blocks.items():
        by_degree.setdefault(i, []).extend(gens)
    ranks = {}
    for i, gens in by_degree.items():
        index: Dict[Generator, int] = {}
        rows = [{index.setdefault(h, len(index)): c for h, c in cx.differential(g, lee=True).items()}
                for g in gens]
        ranks[i] = rational_rank(rows)
    return sum(len(gens) - ranks[i] - ranks.get(i - 1, 0) for i, gens in by_degree.items())


# ==================== s-DEĞİŞMEZİ ====================

@dataclass(frozen=True)
class SInvariantResult:
    s: int
    q_min: int
    q_max: int
    truncated: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        return {'s': self.s, 'q_min': self.q_min, 'q_max': self.q_max}


def _seifert_coloring(cube: ResolutionCube, vo: int) -> List[int]:
    """Yönlü çözünürlük çemberlerinin 2-boyaması (Seifert çizgesi iki parçalı)"""
    vertex = cube.vertices[vo]
    adjacency: List[List[int]] = [[] for _ in range(vertex.circles)]
    for c in cube.diagram.crossings:
        a, b = vertex.circle_of[c[0]], vertex.circle_of[c[2]]
        adjacency[a].append(b)
        adjacency[b].append(a)
    colors = [-1] * vertex.circles
    for root in range(vertex.circles):
        if colors[root] >= 0:
            continue
        colors[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if colors[y] < 0:
                    colors[y] = 1 - colors[x]
                    stack.append(y)
                elif colors[y] == colors[x]:
                    raise DiagramError("Seifert çizgesi iki parçalı değil")
    return colors


def s_invariant(d: Diagram, truncate: bool = False, ceiling: Optional[int] = None) -> SInvariantResult:
    """Lee homolojisinde s_o sınıfının filtrasyon derecesinden s

    i = -1 derecesindeki üreteçlerin Lee imajları en düşük (j, üreteç)
    pivotuyla basamaklanır; s_o bu imajlarla indirgenir ve s = j_min + 1.
    truncate: hızlı yol; yalnızca j <= U - 3 (U = 1 + n_+ - s_A) terimleri
    tutulur ve s_o bu pencerede sıfıra inerse s = U alınır. Sonuç s <= U
    eşitsizliğini varsaydığından sınır kontrollerinde kullanılmaz.
    """
    if not d.is_knot:
        raise DiagramError(f"s-değişmezi yalnızca düğümler için: {d.component_count} bileşen")
    if not d.crossings:
        return SInvariantResult(0, -1, 1)
    cube = build_cube(d, ceiling)
    cx = KhovanovComplex(cube)
    upper = 1 + d.n_plus - cube.vertices[0].circles
    window = upper - 3 if truncate else None

    def j_of(g: Generator) -> int:
        return cx.grading(g)[1]

    def clip(row: Dict[Generator, int]) -> Dict[Generator, int]:
        if window is None:
            return row
        return {g: c for g, c in row.items() if j_of(g) <= window}

    echelon = IntegerEchelon(order=lambda g: (j_of(g), g))
    level = d.n_minus - 1
    for v, vertex in enumerate(cube.vertices):
        if _popcount(v) != level:
            continue
        for mask in range(1 << vertex.circles):
            if window is not None and j_of((v, mask)) > window:
                continue
            echelon.reduce(clip(cx.differential((v, mask), lee=True)), store=True)
    logger.debug("s: %d pivot, pencere %s", echelon.rank, window)

    vo = oriented_state_bits(d)
    colors = _seifert_coloring(cube, vo)
    so: Dict[Generator, int] = {}
    for mask in range(1 << cube.vertices[vo].circles):
        coef = 1
        for ci, color in enumerate(colors):
            if color == 1 and not (mask >> ci) & 1:
                coef = -coef
        so[(vo, mask)] = coef
    reduced = echelon.reduce(clip(so))
    lead = echelon.leading(reduced)
    if lead is None:
        if window is None:
            raise DiagramError("s_o sınıfı sıfır: kompleks tutarsız")
        s = upper
    else:
        s = j_of(lead) + 1
    return SInvariantResult(s, s - 1, s + 1, truncated=truncate)
