"""
Kauffman Durumları ve Turaev Cinsi
Tüm-A / tüm-B çember sayıları, diyagramın Turaev cinsi, şerit çizge
(ribbon graph) üzerinden bağımsız cins hesabı ve homojenlik testi
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .diagram import A_PAIRS, B_PAIRS, Diagram
from .errors import DiagramError, SplitDiagramError
from .union_find import UnionFind

logger = logging.getLogger(__name__)


# ==================== DURUMLAR ====================

@dataclass(frozen=True)
class StateAssignment:
    """Her kesişim için 'A' ya da 'B'"""
    kinds: Tuple[str, ...]

    def __post_init__(self):
        kinds = tuple(k.upper() for k in self.kinds)
        if any(k not in ('A', 'B') for k in kinds):
            raise DiagramError(f"durum yalnızca A/B içerebilir: {self.kinds}")
        object.__setattr__(self, 'kinds', kinds)

    @classmethod
    def all_a(cls, n: int) -> 'StateAssignment':
        return cls(('A',) * n)

    @classmethod
    def all_b(cls, n: int) -> 'StateAssignment':
        return cls(('B',) * n)

    @classmethod
    def from_bits(cls, bits: int, n: int) -> 'StateAssignment':
        """i. bit 0 ise A, 1 ise B"""
        return cls(tuple('B' if (bits >> i) & 1 else 'A' for i in range(n)))

    @property
    def bits(self) -> int:
        return sum(1 << i for i, k in enumerate(self.kinds) if k == 'B')

    def __len__(self):
        return len(self.kinds)


@dataclass(frozen=True)
class StateCircles:
    """count serbest çemberleri de içerir; membership yalnızca etiketli çemberler"""
    count: int
    membership: Tuple[Tuple[int, ...], ...]


def state_union_find(crossings: Sequence[Tuple[int, int, int, int]], bits: int) -> UnionFind:
    """bits durumundaki çemberler; her sınıf bir çember"""
    uf = UnionFind(x for c in crossings for x in c)
    for i, c in enumerate(crossings):
        for p, q in (B_PAIRS if (bits >> i) & 1 else A_PAIRS):
            uf.union(c[p], c[q])
    return uf


def circle_count(d: Diagram, bits: int) -> int:
    """Hızlı yol: bit maskesi ile verilen durumun çember sayısı"""
    if not d.crossings:
        return d.loops
    return state_union_find(d.crossings, bits).count() + d.loops


def count_circles(d: Diagram, state: StateAssignment) -> StateCircles:
    """Durum çemberlerini birleşim-bulma ile say"""
    if len(state) != d.crossing_count:
        raise DiagramError(f"durum uzunluğu {len(state)} kesişim sayısı {d.crossing_count} ile uyuşmuyor")
    if not d.crossings:
        return StateCircles(d.loops, ())
    uf = state_union_find(d.crossings, state.bits)
    classes = tuple(tuple(g) for g in uf.classes())
    return StateCircles(len(classes) + d.loops, classes)


def s_a(d: Diagram) -> int:
    return circle_count(d, 0)


def s_b(d: Diagram) -> int:
    return circle_count(d, (1 << d.crossing_count) - 1)


def oriented_state_bits(d: Diagram) -> int:
    """Yönlü çözünürlük: pozitiflerde A (0), negatiflerde B (1)"""
    return sum(1 << i for i, s in enumerate(d.signs) if s < 0)


def seifert_circles(d: Diagram) -> int:
    return circle_count(d, oriented_state_bits(d))


# ==================== BAĞLANTILILIK ====================

def projection_components(d: Diagram) -> int:
    """4-değerli izdüşüm çizgesinin bileşen sayısı (serbest çemberler dahil)"""
    n = d.crossing_count
    if n == 0:
        return d.loops
    rows, cols = [], []
    for (i, _), (j, _) in d.arc_ends.values():
        rows.append(i)
        cols.append(j)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    count, _ = connected_components(graph, directed=False)
    return int(count) + d.loops


def is_connected(d: Diagram) -> bool:
    return projection_components(d) == 1


def require_connected(d: Diagram):
    if not is_connected(d):
        raise SplitDiagramError("ayrık diyagram: izdüşüm çizgesi bağlantılı değil")


# ==================== TURAEV CİNSİ ====================

def turaev_genus_diagram(d: Diagram) -> int:
    """g_T(D) = (c + 2 - s_A - s_B) / 2"""
    require_connected(d)
    twice = d.crossing_count + 2 - s_a(d) - s_b(d)
    if twice % 2 or twice < 0:
        raise DiagramError(f"parite ihlali: c + 2 - s_A - s_B = {twice} (bozuk diyagram)")
    return twice // 2


@dataclass
class RibbonGraph:
    """Tüm-A çemberleri köşe, kesişimler kenar

    Köşe ucu (turn) 2*i + t: t=0 uçlar 0-1, t=1 uçlar 2-3 arasındaki dönüş.
    rotation: yönlü çember boyunca bir sonraki dönüş.
    """
    vertices: int
    edges: int
    rotation: Dict[int, int]
    boundary_walks: List[List[int]]

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + len(self.boundary_walks)

    @property
    def genus(self) -> int:
        twice = 2 - self.euler_characteristic
        if twice % 2 or twice < 0:
            raise DiagramError(f"şerit çizgesi Euler karakteristiği geçersiz: {self.euler_characteristic}")
        return twice // 2


def ribbon_graph(d: Diagram) -> RibbonGraph:
    """Tüm-A durumunun şerit çizgesini kur, sınır yürüyüşlerini izle"""
    require_connected(d)
    n = d.crossing_count
    if n == 0:
        return RibbonGraph(1, 0, {}, [[]])
    ends = d.arc_ends

    def other(i: int, p: int) -> Tuple[int, int]:
        a, b = ends[d.crossings[i][p]]
        return b if a == (i, p) else a

    # çemberleri dönüş dizisi olarak izle; ileri = ilk uçtan gir
    circles: List[List[Tuple[int, bool]]] = []
    seen = set()
    for start in range(2 * n):
        if start in seen:
            continue
        seq = []
        turn, forward = start, True
        while turn not in seen:
            seen.add(turn)
            seq.append((turn, forward))
            i, t = divmod(turn, 2)
            exit_slot = (1 if t == 0 else 3) if forward else (0 if t == 0 else 2)
            j, q = other(i, exit_slot)
            turn = 2 * j + (0 if q < 2 else 1)
            forward = q in (0, 2)
        circles.append(seq)

    circle_of: Dict[int, int] = {}
    forward_in: Dict[int, bool] = {}
    for c, seq in enumerate(circles):
        for turn, fwd in seq:
            circle_of[turn] = c
            forward_in[turn] = fwd

    # bir kesişimin iki dönüşü aynı yönde geçilmeli
    flip: List = [None] * len(circles)
    flip[0] = False
    queue = [0]
    while queue:
        c = queue.pop(0)
        for turn, fwd in circles[c]:
            here = fwd != flip[c]
            mate = turn ^ 1
            target = circle_of[mate]
            need = forward_in[mate] != here
            if flip[target] is None:
                flip[target] = need
                queue.append(target)
            elif flip[target] != need:
                raise DiagramError("şerit çizgesi yönlendirilemiyor: PD kodu düzlemsel değil")

    rotation: Dict[int, int] = {}
    for c, seq in enumerate(circles):
        k = len(seq)
        for idx, (turn, _) in enumerate(seq):
            nxt = seq[(idx - 1) % k] if flip[c] else seq[(idx + 1) % k]
            rotation[turn] = nxt[0]

    walks = []
    visited = set()
    for start in range(2 * n):
        if start in visited:
            continue
        walk = []
        x = start
        while x not in visited:
            visited.add(x)
            walk.append(x)
            x = rotation[x ^ 1]
        walks.append(walk)
    return RibbonGraph(len(circles), n, rotation, walks)


def ribbon_genus_oracle(d: Diagram) -> int:
    """Sınır yürüyüşlerinden bağımsız cins hesabı"""
    graph = ribbon_graph(d)
    logger.debug("şerit çizgesi: V=%d E=%d F=%d", graph.vertices, graph.edges, len(graph.boundary_walks))
    return graph.genus


def diagram_genus_upper_bound(diagrams: Sequence[Diagram]) -> int:
    """Verilen diyagramlar üzerinde en küçük g_T(D); g_T(K) için yalnızca üst sınır"""
    if not diagrams:
        raise DiagramError("en az bir diyagram gerekli")
    return min(turaev_genus_diagram(d) for d in diagrams)


# ==================== SEIFERT ÇİZGESİ ====================

def seifert_graph(d: Diagram) -> Tuple[int, List[Tuple[int, int, int]]]:
    """(köşe sayısı, [(çember, çember, işaret)]) - her kesişim bir kenar"""
    if not d.crossings:
        return d.loops, []
    uf = state_union_find(d.crossings, oriented_state_bits(d))
    index = {}
    for group in uf.classes():
        index[uf.find(group[0])] = len(index)
    edges = []
    for c, s in zip(d.crossings, d.signs):
        edges.append((index[uf.find(c[0])], index[uf.find(c[2])], s))
    return len(index), edges


def is_homogeneous_diagram(d: Diagram) -> bool:
    """Seifert çizgesinin her bloğundaki kenarlar aynı işaretli mi"""
    vertices, edges = seifert_graph(d)
    if not edges:
        return True
    blocks = UnionFind(range(len(edges)))
    for w in range(vertices):
        incident = [k for k, (u, v, _) in enumerate(edges) if w in (u, v)]
        if len(incident) < 2:
            continue
        rows, cols = [], []
        for u, v, _ in edges:
            if w not in (u, v):
                rows.append(u)
                cols.append(v)
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(vertices, vertices))
        _, label = connected_components(graph, directed=False)
        by_component: Dict[int, int] = {}
        for k in incident:
            u, v, _ = edges[k]
            far = v if u == w else u
            comp = int(label[far])
            if comp in by_component:
                blocks.union(by_component[comp], k)
            else:
                by_component[comp] = k
    sign_of_block: Dict[int, int] = {}
    for k, (_, _, s) in enumerate(edges):
        root = blocks.find(k)
        if sign_of_block.setdefault(root, s) != s:
            return False
    return True
