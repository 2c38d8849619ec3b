"""
Diyagramla Sınırlı Değişmezler ve Turaev Cinsi Alt Sınırı
- InvariantSource: hesaplanan (s, -sigma) ya da kaynaklı enjekte değerler
- Yayılan ağaç indirgemesi: pozitif kesişimleri ağaç dışında A-düzleştir,
  ağaç kesişimlerini R1 ile çöz, negatif ve bağlantılı D' elde et
- s_B - n_- - 1 <= nu <= 1 + n_+ - s_A kontrolleri
- 1/2 |mu - nu| <= g_T alt sınırı, pretzel toplamları için sandviç
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import minimum_spanning_tree

from .classical import signature
from .diagram import (A_PAIRS, STRAIGHT_PAIRS, Diagram, PretzelSpec, connected_sum_power,
                      mirror, pretzel, remove_crossings, rotate_crossings)
from .errors import CorpusError, DiagramError, KnotError, MissingInvariant, ReductionError
from .khovanov import s_invariant
from .settings import get_settings
from .turaev import diagram_genus_upper_bound, is_connected, require_connected, s_a, s_b
from .union_find import UnionFind

logger = logging.getLogger(__name__)


# ==================== DEĞERLER ====================

@dataclass(frozen=True)
class Interval:
    """Kesin değeri bilinmeyen, [lo, hi] aralığında olan değer"""
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise KnotError(f"geçersiz aralık [{self.lo}, {self.hi}]")

    def __neg__(self) -> 'Interval':
        return Interval(-self.hi, -self.lo)

    def scale(self, k: int) -> 'Interval':
        a, b = self.lo * k, self.hi * k
        return Interval(min(a, b), max(a, b))

    def to_json(self) -> List[str]:
        return [str(self.lo), str(self.hi)]


Value = Union[Fraction, Interval]


def as_interval(x: Value) -> Interval:
    return x if isinstance(x, Interval) else Interval(Fraction(x), Fraction(x))


def parse_value(raw) -> Value:
    """"3/2" ya da ["lo", "hi"]"""
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise CorpusError(f"aralık iki uçlu olmalı: {raw}")
        return Interval(Fraction(raw[0]), Fraction(raw[1]))
    return Fraction(raw)


def value_to_json(x: Value):
    return x.to_json() if isinstance(x, Interval) else str(x)


def distance(a: Value, b: Value) -> Fraction:
    """İki değer arasındaki kesin olarak garanti edilen uzaklık"""
    x, y = as_interval(a), as_interval(b)
    return max(Fraction(0), y.lo - x.hi, x.lo - y.hi)


# ==================== KAYNAKLAR ====================

@dataclass(frozen=True)
class InvariantSource:
    """Hesaplanan (compute) ya da enjekte edilen (table + citation) değişmez"""
    name: str
    compute: Optional[Callable[[Diagram], Value]] = None
    table: Optional[Mapping[str, Value]] = None
    citation: Optional[str] = None

    def __post_init__(self):
        if (self.compute is None) == (self.table is None):
            raise KnotError(f"{self.name}: hesaplama ya da tablo, yalnızca biri")
        if self.table is not None and not self.citation:
            raise KnotError(f"{self.name}: enjekte değerler kaynak gerektirir")

    @property
    def mode(self) -> str:
        return 'computed' if self.compute is not None else 'injected'

    def evaluate(self, d: Optional[Diagram] = None, name: Optional[str] = None) -> Value:
        if self.compute is not None:
            if d is None:
                raise MissingInvariant(f"{self.name}: diyagram gerekli")
            return self.compute(d)
        if name is None or name not in self.table:
            raise MissingInvariant(f"{self.name}: '{name}' için enjekte değer yok")
        return self.table[name]

    def negated(self) -> 'InvariantSource':
        """Ayna görüntüsü için nu(mirror K) = -nu(K)"""
        if self.compute is not None:
            compute = self.compute
            return InvariantSource(f"-({self.name})", compute=lambda d: -compute(d))
        return InvariantSource(f"-({self.name})", table={k: -v for k, v in self.table.items()},
                               citation=self.citation)


def s_source() -> InvariantSource:
    return InvariantSource('s', compute=lambda d: Fraction(s_invariant(d).s))


def neg_sigma_source() -> InvariantSource:
    return InvariantSource('neg_sigma', compute=lambda d: Fraction(-signature(d)))


def fixed_source(name: str, value: int) -> InvariantSource:
    """Önceden hesaplanmış değer; diyagramdan yeniden hesaplanmaz"""
    return InvariantSource(name, compute=lambda _: Fraction(value))


def load_injected(path: Optional[Path] = None) -> List[dict]:
    """Enjekte değer kayıtları; her kayıt kaynak taşımalı"""
    path = Path(path or get_settings().injected_path)
    if not path.exists():
        raise CorpusError(f"enjekte değer dosyası bulunamadı: {path}")
    with open(path, encoding='utf-8') as f:
        data = json.load(f)
    records = data['records'] if isinstance(data, dict) else data
    for row, record in enumerate(records, 1):
        for key in ('knot', 'invariant', 'value'):
            if key not in record:
                raise CorpusError(f"'{key}' alanı eksik", row)
        if not record.get('citation'):
            raise CorpusError(f"{record['knot']}: kaynak (citation) zorunlu", row)
    return records


def injected_source(invariant: str, n: Optional[int] = None,
                    records: Optional[List[dict]] = None) -> InvariantSource:
    """Kayıtlardan tek bir değişmez (ve n) için tablo kaynağı"""
    records = records if records is not None else load_injected()
    table: Dict[str, Value] = {}
    citations = set()
    for record in records:
        if record['invariant'] != invariant or record.get('n') != n:
            continue
        table[record['knot']] = parse_value(record['value'])
        citations.add(record['citation'])
    if not table:
        raise MissingInvariant(f"enjekte değer yok: {invariant} (n={n})")
    name = invariant if n is None else f"{invariant}({n})"
    return InvariantSource(name, table=table, citation='; '.join(sorted(citations)))


def slice_torus_source(name: str, nu0: Mapping[str, Value], citation: str,
                       components: int = 1) -> InvariantSource:
    """Dilim-simit değeri nu0'dan sınırlı değişmez: 2 nu0 - l + 1"""
    shift = 1 - components

    def wrap(x: Value) -> Value:
        if isinstance(x, Interval):
            return Interval(2 * x.lo + shift, 2 * x.hi + shift)
        return 2 * Fraction(x) + shift

    return InvariantSource(name, table={k: wrap(v) for k, v in nu0.items()}, citation=citation)


# ==================== YAYILAN AĞAÇ İNDİRGEMESİ ====================

@dataclass
class ReductionResult:
    """gamma_edges: (kesişim, parça, parça); tree: D'deki ağaç kesişimleri"""
    original: Diagram
    gamma_vertices: int
    gamma_edges: List[Tuple[int, int, int]]
    tree: List[int]
    connected: Diagram
    reduced: Diagram
    untwists: List[int] = field(default_factory=list)
    direction: str = 'positive'

    @property
    def band_count(self) -> int:
        removed = self.original.n_plus if self.direction == 'positive' else self.original.n_minus
        return removed - len(self.tree)

    def _state_counts(self) -> Tuple[str, int, int]:
        """Pozitif indirgemede s_A, negatif (ayna) indirgemede s_B korunur"""
        if self.direction == 'positive':
            return 's_a', s_a(self.original), s_a(self.reduced)
        return 's_b', s_b(self.original), s_b(self.reduced)

    def invariants(self) -> Dict[str, bool]:
        _, before, after = self._state_counts()
        if self.direction == 'positive':
            signed = ('negative', self.reduced.n_plus == 0)
        else:
            signed = ('positive', self.reduced.n_minus == 0)
        return {
            signed[0]: signed[1],
            'connected': is_connected(self.reduced),
            'state_count': after == before - len(self.tree),
        }

    def to_dict(self) -> dict:
        key, before, after = self._state_counts()
        return {
            'direction': self.direction,
            'gamma': {'vertices': self.gamma_vertices,
                      'edges': [list(e) for e in self.gamma_edges]},
            'tree': self.tree,
            'band_count': self.band_count,
            'connected': str(self.connected),
            'reduced': str(self.reduced),
            'untwists': self.untwists,
            key: {'original': before, 'reduced': after},
            'invariants': self.invariants(),
        }


def negative_pieces(d: Diagram) -> Tuple[int, List[Tuple[int, int, int]]]:
    """Gamma: pozitifler A-düzleştirilip negatifler tutulunca kalan parçalar ve pozitif kenarlar"""
    uf = UnionFind(sorted(d.arc_ends))
    for c, sign in zip(d.crossings, d.signs):
        if sign > 0:
            uf.union(c[0], c[1])
            uf.union(c[2], c[3])
        else:
            uf.union(c[0], c[1])
            uf.union(c[1], c[2])
            uf.union(c[2], c[3])
    piece: Dict[int, int] = {}
    for label in sorted(d.arc_ends):
        piece.setdefault(uf.find(label), len(piece))
    edges = [(i, piece[uf.find(c[0])], piece[uf.find(c[2])])
             for i, (c, sign) in enumerate(zip(d.crossings, d.signs)) if sign > 0]
    return len(piece), edges


def _bfs_tree(vertices: int, edges: List[Tuple[int, int, int]]) -> List[int]:
    seen = [False] * vertices
    seen[0] = True
    queue = [0]
    tree = []
    while queue:
        v = queue.pop(0)
        for c, a, b in edges:
            w = b if a == v else (a if b == v else -1)
            if w < 0 or seen[w]:
                continue
            seen[w] = True
            tree.append(c)
            queue.append(w)
    return sorted(tree)


def _random_tree(vertices: int, edges: List[Tuple[int, int, int]], seed: Optional[int]) -> List[int]:
    """Rastgele ağırlıklarla en küçük yayılan ağaç"""
    rng = np.random.default_rng(seed)
    best: Dict[Tuple[int, int], Tuple[float, int]] = {}
    for c, a, b in edges:
        if a == b:
            continue
        w = float(rng.random()) + 1e-9
        key = (min(a, b), max(a, b))
        if key not in best or w < best[key][0]:
            best[key] = (w, c)
    if not best:
        return []
    rows = [k[0] for k in best]
    cols = [k[1] for k in best]
    weights = [best[k][0] for k in best]
    graph = csr_matrix((weights, (rows, cols)), shape=(vertices, vertices))
    mst = minimum_spanning_tree(graph).tocoo()
    return sorted(best[(min(u, v), max(u, v))][1] for u, v in zip(mst.row, mst.col))


def _untwist_side(d: Diagram, index: int, tree: List[int]) -> Optional[List[int]]:
    """Kesişim ayırıcıysa (R1 ile çözülebilirse) döndürülecek taraf; ağaç kesişimi içermeyen taraf seçilir"""
    uf = UnionFind(sorted(d.arc_ends))
    for i, c in enumerate(d.crossings):
        if i == index:
            continue
        uf.union(c[0], c[1])
        uf.union(c[1], c[2])
        uf.union(c[2], c[3])
    t = d.crossings[index]
    if not (uf.connected(t[0], t[1]) and uf.connected(t[2], t[3]) and not uf.connected(t[0], t[2])):
        return None
    for anchor in (t[2], t[0]):
        side = [i for i, c in enumerate(d.crossings) if i != index and uf.connected(c[0], anchor)]
        if not any(o != index and o in side for o in tree):
            return side
    return None


def reduce_positive(d: Diagram, tree: str = 'bfs', seed: Optional[int] = None) -> ReductionResult:
    """Pozitif kesişimleri ortadan kaldırarak negatif, bağlantılı D' üret"""
    if not d.is_knot:
        raise DiagramError("indirgeme düğüm diyagramı ister")
    require_connected(d)
    if tree not in ('bfs', 'random'):
        raise DiagramError(f"bilinmeyen ağaç seçimi: {tree}")
    if d.n_plus == 0:
        return ReductionResult(d, 1, [], [], d, d)
    vertices, edges = negative_pieces(d)
    chosen = _bfs_tree(vertices, edges) if tree == 'bfs' else _random_tree(vertices, edges, seed)
    logger.debug("Gamma: %d parça, %d kenar, ağaç %s", vertices, len(edges), chosen)
    smoothed = {c: A_PAIRS for c, _, _ in edges if c not in chosen}
    connected, kept = remove_crossings(d, smoothed)
    tree_now = [kept.index(c) for c in chosen]

    current = connected
    untwists = []
    steps = 0
    while tree_now:
        steps += 1
        if steps > d.crossing_count + 1:
            raise ReductionError(f"çözme {d.crossing_count} adımda bitmedi")
        for c in tree_now:
            side = _untwist_side(current, c, tree_now)
            if side is None:
                continue
            rotated = rotate_crossings(current, side)
            current, kept = remove_crossings(rotated, {c: STRAIGHT_PAIRS})
            untwists.append(c)
            tree_now = [kept.index(o) for o in tree_now if o != c]
            break
        else:
            raise ReductionError("hiçbir ağaç kesişimi R1 ile çözülemiyor")
    return ReductionResult(d, vertices, edges, chosen, connected, current, untwists)


def reduce_negative(d: Diagram, tree: str = 'bfs', seed: Optional[int] = None) -> ReductionResult:
    """Ayna üzerinden: negatif kesişimleri kaldırıp pozitif D' üret"""
    if d.n_minus == 0:
        require_connected(d)
        return ReductionResult(d, 1, [], [], d, d, direction='negative')
    result = reduce_positive(mirror(d), tree, seed)
    return ReductionResult(d, result.gamma_vertices, result.gamma_edges, result.tree,
                           mirror(result.connected), mirror(result.reduced), result.untwists,
                           direction='negative')


# ==================== SINIR KONTROLLERİ ====================

@dataclass(frozen=True)
class BoundsCheck:
    invariant: str
    lower: int
    value: Value
    upper: int

    @property
    def passed(self) -> bool:
        v = as_interval(self.value)
        return self.lower <= v.lo and v.hi <= self.upper

    @property
    def margin(self) -> Tuple[Fraction, Fraction]:
        v = as_interval(self.value)
        return v.lo - self.lower, self.upper - v.hi

    def to_dict(self) -> dict:
        low, high = self.margin
        return {'invariant': self.invariant, 'lower': self.lower,
                'value': value_to_json(self.value), 'upper': self.upper,
                'passed': self.passed, 'margin': [str(low), str(high)]}


def diagram_bounds(d: Diagram) -> Tuple[int, int]:
    """(s_B - n_- - 1, 1 + n_+ - s_A)"""
    require_connected(d)
    return s_b(d) - d.n_minus - 1, 1 + d.n_plus - s_a(d)


def diagram_bounds_check(d: Diagram, nu: InvariantSource, name: Optional[str] = None) -> BoundsCheck:
    """Pozitif ya da negatif diyagramlar için"""
    if not (d.is_positive() or d.is_negative()):
        raise DiagramError("karışık işaretli diyagram: yalnızca pozitif ya da negatif diyagramlar")
    lower, upper = diagram_bounds(d)
    return BoundsCheck(nu.name, lower, nu.evaluate(d, name), upper)


def knot_bounds_check(d: Diagram, nu: InvariantSource, name: Optional[str] = None) -> BoundsCheck:
    """Herhangi bir bağlantılı düğüm diyagramı için"""
    if not d.is_knot:
        raise DiagramError("düğüm diyagramı gerekli")
    lower, upper = diagram_bounds(d)
    return BoundsCheck(nu.name, lower, nu.evaluate(d, name), upper)


# ==================== ALT SINIR ====================

@dataclass(frozen=True)
class BoundReport:
    pair: Tuple[str, str]
    values: Dict[str, Value]
    bound: Fraction
    diagram_genus: Optional[int]

    @property
    def passed(self) -> bool:
        return self.diagram_genus is None or self.bound <= self.diagram_genus

    @property
    def integer_bound(self) -> int:
        """g_T tamsayı olduğundan sınır yukarı yuvarlanabilir"""
        return math.ceil(self.bound)

    def to_dict(self) -> dict:
        return {'pair': list(self.pair),
                'values': {k: value_to_json(v) for k, v in self.values.items()},
                'bound': str(self.bound), 'integer_bound': self.integer_bound,
                'diagram_genus': self.diagram_genus, 'passed': self.passed}


def turaev_lower_bound(values: Mapping[str, Value], diagrams: Sequence[Diagram] = ()) -> BoundReport:
    """Tüm çiftler üzerinde en büyük 1/2 |mu - nu|; diyagram cinsiyle karşılaştırılır"""
    if len(values) < 2:
        raise KnotError("en az iki değişmez değeri gerekli")
    names = sorted(values)
    best_pair, best = (names[0], names[1]), Fraction(-1)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            bound = distance(values[a], values[b]) / 2
            if bound > best:
                best_pair, best = (a, b), bound
    genus = diagram_genus_upper_bound(diagrams) if diagrams else None
    report = BoundReport(best_pair, dict(values), best, genus)
    if not report.passed:
        logger.warning("alt sınır %s diyagram cinsini %s aşıyor", best, genus)
    return report


@dataclass
class SandwichReport:
    g: int
    spec: PretzelSpec
    s_value: int
    s_method: str
    lower_by_n: Dict[int, Fraction]
    classical_bound: Fraction
    upper: int

    @property
    def lower(self) -> int:
        return max(math.ceil(b) for b in self.lower_by_n.values()) if self.lower_by_n else 0

    @property
    def limit_bound(self) -> int:
        """n sonsuza giderken g - g/(n-1) -> g"""
        return self.g

    @property
    def pinned(self) -> bool:
        return self.lower == self.upper == self.g

    @property
    def passed(self) -> bool:
        return self.lower <= self.upper

    def to_dict(self) -> dict:
        return {'g': self.g, 'knot': self.spec.name, 's': self.s_value, 's_method': self.s_method,
                'lower_by_n': {str(n): str(b) for n, b in self.lower_by_n.items()},
                'classical_bound': str(self.classical_bound), 'lower': self.lower,
                'limit_bound': self.limit_bound, 'upper': self.upper,
                'pinned': self.pinned, 'passed': self.passed}


def pretzel_sum_sandwich(g: int, p: int, q: int, compute_s: bool = False,
                         records: Optional[List[dict]] = None) -> SandwichReport:
    """g kopya K(p,q) toplamı için g - g/(n-1) <= g_T <= g

    Alt sınır: s ve normalize s_n toplamsal olduğundan g kat alınır.
    compute_s=False iken s, yarı-alternatif düğümlerde geçerli s = -sigma ile alınır.
    Üst sınır: bağlantılı toplam diyagramının Turaev cinsi.
    """
    if g < 1:
        raise KnotError("g pozitif olmalı")
    spec = PretzelSpec(p, q)
    knot = pretzel(spec)
    sigma = signature(knot)
    if compute_s:
        s_value, method = s_invariant(knot).s, 'lee'
    else:
        s_value, method = -sigma, 'neg_sigma'
    records = records if records is not None else load_injected()
    lower_by_n: Dict[int, Fraction] = {}
    for record in records:
        if record['knot'] != spec.name or record['invariant'] != 's_n_normalized':
            continue
        x = parse_value(record['value'])
        lower_by_n[int(record['n'])] = g * distance(Fraction(s_value), x) / 2
    lower_by_n = dict(sorted(lower_by_n.items()))
    classical = g * distance(Fraction(s_value), Fraction(-sigma)) / 2
    upper = diagram_genus_upper_bound([connected_sum_power(knot, g)])
    report = SandwichReport(g, spec, s_value, method, lower_by_n, classical, upper)
    logger.info("%d x %s: %d <= g_T <= %d", g, spec.name, report.lower, upper)
    return report


@dataclass(frozen=True)
class AsymptoticReport:
    name: str
    s: int
    limsup: Optional[Fraction]
    genus_upper: Optional[int]
    status: str
    note: str

    def to_dict(self) -> dict:
        return {'name': self.name, 's': self.s,
                'limsup': None if self.limsup is None else str(self.limsup),
                'genus_upper': self.genus_upper, 'status': self.status, 'note': self.note}


def asymptotic_genus_check(name: str, s: int, limsup: Optional[Value],
                           diagrams: Sequence[Diagram] = ()) -> AsymptoticReport:
    """s + limsup s_n/n ile 2 g_T karşılaştırması

    Durumlar: equality, consistent (yalnızca üst sınır biliniyor), violation,
    inconclusive (değer eksik). Sonlu sayıda n değeri limiti kanıtlamaz;
    limsup değeri enjekte edilmiş olarak kullanılır.
    """
    genus = diagram_genus_upper_bound(diagrams) if diagrams else None
    if limsup is None or genus is None:
        missing = 'limsup değeri' if limsup is None else 'diyagram'
        return AsymptoticReport(name, s, None if limsup is None else Fraction(as_interval(limsup).lo),
                                genus, 'inconclusive', f"{missing} yok")
    value = as_interval(limsup)
    if value.lo != value.hi:
        return AsymptoticReport(name, s, None, genus, 'inconclusive', "limsup kesin değil")
    total = s + value.lo
    note = "enjekte limsup; sonlu n değerleri yalnızca tutarlılık gösterir"
    if total == 2 * genus:
        status = 'equality'
    elif total < 2 * genus:
        status = 'consistent'
    else:
        status = 'violation'
        logger.warning("%s: s + limsup = %s > 2 g_T(D) = %d", name, total, 2 * genus)
    return AsymptoticReport(name, s, value.lo, genus, status, note)
