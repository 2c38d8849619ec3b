"""
PD Kodlu Yönlü Düğüm Diyagramları
Ayrıştırma, kesişim işaretleri, düzleştirme (smoothing), ayna görüntüsü,
bağlantılı toplam ve pretzel / tor düğümü üreteçleri

Kural: her kesişim (a, b, c, d) gelen alt iplikten başlayarak saat yönünün
tersine okunur; alt iplik a -> c yönündedir. Üst iplik d -> b yönünde
akıyorsa kesişim pozitiftir.
"""

import logging
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DiagramError, PDParseError

logger = logging.getLogger(__name__)

Crossing = Tuple[int, int, int, int]
Removals = Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]]

# A düzleştirmesi (a,b)(c,d), B düzleştirmesi (a,d)(b,c) uçlarını birleştirir
A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))
STRAIGHT_PAIRS = ((0, 2), (1, 3))


# ==================== VERİ YAPILARI ====================

@dataclass(frozen=True)
class ArcCycle:
    """Bir bağlantı bileşeninin yay etiketleri, dolaşım sırasıyla"""
    component: int
    arcs: Tuple[int, ...]


@dataclass(frozen=True)
class PretzelSpec:
    """K_{p,q} = P(2p+1, -2q-1, 2), p >= q >= 1"""
    p: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.p < self.q:
            raise DiagramError(f"pretzel parametreleri p >= q >= 1 olmalı: p={self.p}, q={self.q}")

    @property
    def columns(self) -> Tuple[int, int, int]:
        return (2 * self.p + 1, -(2 * self.q + 1), 2)

    @property
    def name(self) -> str:
        return f"K({self.p},{self.q})"


@dataclass(frozen=True)
class Diagram:
    """Değişmez yönlü bağlantı diyagramı

    crossings: PD dörtlüleri
    loops: kesişimsiz ek çember bileşenleri (U[k])
    """
    crossings: Tuple[Crossing, ...]
    loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'crossings', tuple(tuple(int(x) for x in c) for c in self.crossings))
        if self.loops < 0:
            raise DiagramError("çember sayısı negatif olamaz")
        if not self.crossings and self.loops == 0:
            raise DiagramError("boş diyagram: en az bir bileşen gerekli")
        counts: Dict[int, int] = {}
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"kesişim dört etiket içermeli: {c}")
            for label in c:
                if label <= 0:
                    raise DiagramError(f"yay etiketi pozitif olmalı: {label}")
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"her yay etiketi tam iki kez geçmeli; hatalı etiketler: {bad}")
        # yönlendirme tutarlılığı burada denetlenir
        _ = self.incoming

    # ---------- türetilmiş büyüklükler ----------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @cached_property
    def arc_ends(self) -> Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]]:
        return _arc_ends(self.crossings)

    @cached_property
    def incoming(self) -> Tuple[Tuple[bool, ...], ...]:
        return _orientation(self.crossings)

    @cached_property
    def signs(self) -> Tuple[int, ...]:
        return tuple(1 if inc[3] else -1 for inc in self.incoming)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def arc_cycles(self) -> Tuple[ArcCycle, ...]:
        successor: Dict[int, int] = {}
        for i, c in enumerate(self.crossings):
            for p in (0, 1, 2, 3):
                if self.incoming[i][p]:
                    successor[c[p]] = c[(p + 2) % 4]
        cycles = []
        seen = set()
        for start in sorted(successor):
            if start in seen:
                continue
            arcs = []
            label = start
            while label not in seen:
                seen.add(label)
                arcs.append(label)
                label = successor[label]
            cycles.append(ArcCycle(len(cycles), tuple(arcs)))
        return tuple(cycles)

    @property
    def component_count(self) -> int:
        return len(self.arc_cycles) + self.loops

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1

    @property
    def labels(self) -> List[int]:
        return sorted(self.arc_ends)

    def is_positive(self) -> bool:
        return all(s > 0 for s in self.signs)

    def is_negative(self) -> bool:
        return all(s < 0 for s in self.signs)

    def is_alternating(self) -> bool:
        """Her yay bir üst geçişten bir alt geçişe bağlanıyor mu"""
        for (i, p), (j, q) in self.arc_ends.values():
            if p % 2 == q % 2:
                return False
        return True

    def component_of_arc(self) -> Dict[int, int]:
        return {label: cyc.component for cyc in self.arc_cycles for label in cyc.arcs}

    def __str__(self) -> str:
        return serialize_pd(self)


def unknot() -> Diagram:
    """0 kesişimli bilinmeyen düğüm"""
    return Diagram((), 1)


# ==================== YÖNLENDİRME ====================

def _arc_ends(crossings: Sequence[Crossing]) -> Dict[int, Tuple[Tuple[int, int], Tuple[int, int]]]:
    ends: Dict[int, list] = {}
    for i, c in enumerate(crossings):
        for p, label in enumerate(c):
            ends.setdefault(label, []).append((i, p))
    return {label: (e[0], e[1]) for label, e in ends.items()}


def _other_end(ends, label: int, i: int, p: int) -> Tuple[int, int]:
    a, b = ends[label]
    return b if a == (i, p) else a


def _orientation(crossings: Sequence[Crossing]) -> Tuple[Tuple[bool, ...], ...]:
    """Her uç için gelen (True) / giden (False) bilgisi

    Alt iplik her zaman 0'dan girer 2'den çıkar; yay uçları zıt yönlüdür.
    Hiç alt geçişi olmayan üst iplikler etiket ardışıklığından yönlendirilir.
    """
    n = len(crossings)
    ends = _arc_ends(crossings)
    for label, e in ends.items():
        if len(e) != 2:
            raise DiagramError(f"yay {label} iki uçlu değil")
    incoming: List[List[Optional[bool]]] = [[None] * 4 for _ in range(n)]
    stack: List[Tuple[int, int]] = []

    def assign(i: int, p: int, value: bool):
        current = incoming[i][p]
        if current is None:
            incoming[i][p] = value
            stack.append((i, p))
        elif current != value:
            raise DiagramError(f"tutarsız yönlendirme: kesişim {i}, uç {p}")

    def propagate():
        while stack:
            i, p = stack.pop()
            value = incoming[i][p]
            j, q = _other_end(ends, crossings[i][p], i, p)
            assign(j, q, not value)
            assign(i, (p + 2) % 4, not value)

    for i in range(n):
        assign(i, 0, True)
        assign(i, 2, False)
    propagate()
    for i in range(n):
        if incoming[i][1] is None:
            b, d = crossings[i][1], crossings[i][3]
            assign(i, 3, b == d + 1 or d > b + 1)
            propagate()
    return tuple(tuple(bool(v) for v in row) for row in incoming)


def crossing_signs(d: Diagram) -> Tuple[int, ...]:
    """Kesişim işaretleri (+1 / -1)"""
    return d.signs


# ==================== PD METNİ ====================

_TOKEN = re.compile(r'\s*(?:(X)\s*\[([^\[\]]*)\]|(U)\s*\[([^\[\]]*)\])\s*')


def parse_pd(text: str) -> Diagram:
    """'PD[X[a,b,c,d],...,U[k]]' metnini diyagrama çevir"""
    if text is None:
        raise PDParseError("boş girdi")
    body = text.strip()
    if not (body.startswith('PD') and body.endswith(']')):
        raise PDParseError("PD[...] biçimi bekleniyor", 0)
    inner_start = body.find('[')
    if inner_start < 0 or body[2:inner_start].strip():
        raise PDParseError("PD[...] biçimi bekleniyor", 0)
    inner = body[inner_start + 1:-1]
    crossings = []
    loops = 0
    saw_loop_token = False
    pos = 0
    if inner.strip():
        while True:
            m = _TOKEN.match(inner, pos)
            if not m:
                raise PDParseError("beklenmeyen karakter", inner_start + 1 + pos)
            if m.group(1):
                parts = [x.strip() for x in m.group(2).split(',')]
                if len(parts) != 4 or not all(re.fullmatch(r'\d+', x) for x in parts):
                    raise PDParseError(f"X[...] dört pozitif tamsayı içermeli: X[{m.group(2)}]",
                                       inner_start + 1 + pos)
                crossings.append(tuple(int(x) for x in parts))
            else:
                k = m.group(4).strip()
                if not re.fullmatch(r'\d+', k):
                    raise PDParseError(f"U[k] tamsayı içermeli: U[{k}]", inner_start + 1 + pos)
                loops += int(k)
                saw_loop_token = True
            pos = m.end()
            if pos >= len(inner):
                break
            if inner[pos] != ',':
                raise PDParseError("',' bekleniyor", inner_start + 1 + pos)
            pos += 1
    if not crossings and not saw_loop_token:
        loops = 1
    try:
        return Diagram(tuple(crossings), loops)
    except DiagramError as e:
        raise PDParseError(str(e)) from e


def serialize_pd(d: Diagram) -> str:
    """Kanonik PD metni; parse_pd ile bit düzeyinde gidiş-dönüş"""
    if not d.crossings and d.loops == 1:
        return 'PD[]'
    tokens = ['X[%d,%d,%d,%d]' % c for c in d.crossings]
    if d.loops:
        tokens.append(f'U[{d.loops}]')
    return 'PD[' + ','.join(tokens) + ']'


# ==================== YENİDEN KURMA ====================

def _slot_partners(crossings: Sequence[Crossing]) -> Dict[int, int]:
    partner = {}
    for (i, p), (j, q) in _arc_ends(crossings).values():
        partner[4 * i + p] = 4 * j + q
        partner[4 * j + q] = 4 * i + p
    return partner


def _rebuild(crossings: Sequence[Crossing], loops: int,
             removals: Optional[Removals] = None) -> Tuple[Diagram, List[int]]:
    """Belirtilen kesişimleri verilen uç eşleşmeleriyle kaldırıp diyagramı yeniden kur

    Kalan bileşenler mümkün olduğunca eski yönlerini korur; etiketler en küçük
    eski etiketten başlayarak bileşen bileşen ardışık verilir.
    Dönüş: (yeni diyagram, yeni indeks -> eski indeks listesi)
    """
    removals = removals or {}
    n = len(crossings)
    incoming = _orientation(crossings) if n else ()
    partner = _slot_partners(crossings)
    removed = set(removals)
    inner: Dict[int, int] = {}
    for i, pairs in removals.items():
        if not 0 <= i < n:
            raise DiagramError(f"kesişim indeksi aralık dışında: {i}")
        for p, q in pairs:
            inner[4 * i + p] = 4 * i + q
            inner[4 * i + q] = 4 * i + p
    kept = [i for i in range(n) if i not in removed]

    link: Dict[int, int] = {}
    for i in kept:
        for p in range(4):
            s = 4 * i + p
            t = partner[s]
            steps = 0
            while t // 4 in removed:
                t = partner[inner[t]]
                steps += 1
                if steps > 4 * n:
                    raise DiagramError("yeniden kurma döngüye girdi")
            link[s] = t

    # tamamen kaldırılan kesişimlerden geçen kapalı çemberler
    seen = set()
    for i in sorted(removed):
        for p in range(4):
            s0 = 4 * i + p
            if s0 in seen:
                continue
            s, closed = s0, True
            while True:
                seen.add(s)
                u = inner[s]
                seen.add(u)
                t = partner[u]
                if t // 4 not in removed:
                    closed = False
                    break
                if t == s0:
                    break
                s = t
            if closed:
                loops += 1
            else:
                t = partner[s0]
                while t // 4 in removed and t not in seen:
                    seen.add(t)
                    u = inner[t]
                    seen.add(u)
                    t = partner[u]

    def old_label(s: int) -> int:
        return crossings[s // 4][s % 4]

    slots = sorted((4 * i + p for i in kept for p in range(4)), key=lambda s: (old_label(s), s))
    label: Dict[int, int] = {}
    heads = set()
    counter = 0
    for s in slots:
        if s in label:
            continue
        start = link[s] if incoming[s // 4][s % 4] else s
        t = start
        while True:
            h = link[t]
            counter += 1
            label[t] = counter
            label[h] = counter
            heads.add(h)
            t = 4 * (h // 4) + (h % 4 + 2) % 4
            if t == start:
                break

    new_crossings = []
    for i in kept:
        k = 0 if 4 * i in heads else 2
        new_crossings.append(tuple(label[4 * i + (k + j) % 4] for j in range(4)))
    return Diagram(tuple(new_crossings), loops), kept


def relabel(d: Diagram) -> Diagram:
    """Etiketleri bileşen bileşen ardışık hale getir"""
    return _rebuild(d.crossings, d.loops)[0]


def remove_crossings(d: Diagram, removals: Removals) -> Tuple[Diagram, List[int]]:
    return _rebuild(d.crossings, d.loops, removals)


# ==================== DİYAGRAM İŞLEMLERİ ====================

def _check_index(d: Diagram, index: int):
    if not 0 <= index < d.crossing_count:
        raise DiagramError(f"kesişim indeksi aralık dışında: {index} (kesişim sayısı {d.crossing_count})")


def smooth(d: Diagram, index: int, kind: str) -> Diagram:
    """Bir kesişimi A ya da B düzleştir"""
    _check_index(d, index)
    kind = kind.upper()
    if kind not in ('A', 'B'):
        raise DiagramError(f"düzleştirme türü A veya B olmalı: {kind}")
    pairs = A_PAIRS if kind == 'A' else B_PAIRS
    return remove_crossings(d, {index: pairs})[0]


def oriented_resolution(d: Diagram, index: int) -> Diagram:
    """Pozitif kesişimde A, negatif kesişimde B düzleştirmesi"""
    _check_index(d, index)
    return smooth(d, index, 'A' if d.signs[index] > 0 else 'B')


def mirror(d: Diagram) -> Diagram:
    """Tüm kesişimleri ters çevir; yay etiketleri ve yönler korunur"""
    flipped = []
    for c, s in zip(d.crossings, d.signs):
        a, b, cc, dd = c
        flipped.append((dd, a, b, cc) if s > 0 else (b, cc, dd, a))
    return Diagram(tuple(flipped), d.loops)


def rotate_crossings(d: Diagram, indices) -> Diagram:
    """Seçilen kesişimleri düzlemdeki bir eksen etrafında yarım tur döndür

    İşaretler korunur, çevrim sırası tersine döner; bir bağlı parçanın tamamı
    döndürüldüğünde düzlemsellik korunur.
    """
    indices = set(indices)
    rotated = []
    for i, (c, s) in enumerate(zip(d.crossings, d.signs)):
        if i not in indices:
            rotated.append(c)
            continue
        a, b, cc, dd = c
        rotated.append((dd, cc, b, a) if s > 0 else (b, a, dd, cc))
    return Diagram(tuple(rotated), d.loops)


def connected_sum(d1: Diagram, d2: Diagram, arcs: Optional[Tuple[int, int]] = None) -> Diagram:
    """İki düğüm diyagramının bağlantılı toplamı

    Varsayılan bölge: her diyagramın en küçük numaralı yayı.
    """
    for d in (d1, d2):
        if d.component_count != 1:
            raise DiagramError("bağlantılı toplam yalnızca düğümler için (tek bileşen)")
    if not d1.crossings:
        return relabel(d2)
    if not d2.crossings:
        return relabel(d1)
    x1, x2 = arcs if arcs is not None else (min(d1.labels), min(d2.labels))
    if x1 not in d1.arc_ends or x2 not in d2.arc_ends:
        raise DiagramError(f"bilinmeyen yay: {x1} / {x2}")
    offset = max(d1.labels)
    crossings = [list(c) for c in d1.crossings] + [[x + offset for x in c] for c in d2.crossings]
    n1 = d1.crossing_count

    def head_of(d: Diagram, label: int) -> Tuple[int, int]:
        for i, p in d.arc_ends[label]:
            if d.incoming[i][p]:
                return i, p
        raise DiagramError(f"yay {label} için giriş ucu yok")

    i1, p1 = head_of(d1, x1)
    i2, p2 = head_of(d2, x2)
    crossings[i1][p1] = x2 + offset
    crossings[n1 + i2][p2] = x1
    return _rebuild([tuple(c) for c in crossings], 0)[0]


def connected_sum_power(d: Diagram, g: int) -> Diagram:
    """d'nin g kopyasının bağlantılı toplamı"""
    if g < 1:
        raise DiagramError("g >= 1 olmalı")
    result = d
    for _ in range(g - 1):
        result = connected_sum(result, d)
    return result


def canonical_key(d: Diagram) -> Tuple:
    """Yön koruyan yeniden etiketlemeler arasında sözlükçe en küçük PD biçimi"""
    base = relabel(d)
    if not base.crossings:
        return ((), base.loops)
    if len(base.arc_cycles) != 1:
        return (tuple(sorted(base.crossings)), base.loops)
    m = len(base.labels)
    best = None
    for shift in range(m):
        key = tuple(sorted(tuple((x - 1 + shift) % m + 1 for x in c) for c in base.crossings))
        if best is None or key < best:
            best = key
    return (best, base.loops)


# ==================== ÜRETEÇLER ====================

# Uç numaraları: KD=0, KB=1, GB=2, GD=3 (saat yönünün tersine)
NE, NW, SW, SE = 0, 1, 2, 3


class TangleBuilder:
    """Geometrik olarak bağlanan kesişimlerden PD kodu üretir

    Her kesişim ya KD-GB (over_ne_sw=True) ya da KB-GD ipliği üstte olacak
    şekilde yerleştirilir; uçlar ve yardımcı noktalar kenarlarla bağlanır.
    """

    def __init__(self):
        self.over_ne_sw: List[bool] = []
        self.edges: List[Tuple[str, str]] = []
        self.points = 0

    def crossing(self, over_ne_sw: bool) -> int:
        self.over_ne_sw.append(over_ne_sw)
        return len(self.over_ne_sw) - 1

    @staticmethod
    def slot(i: int, k: int) -> str:
        return f's{4 * i + k}'

    def point(self) -> str:
        self.points += 1
        return f'v{self.points - 1}'

    def link(self, a: str, b: str):
        self.edges.append((a, b))

    def twist_column(self, count: int) -> Dict[str, str]:
        """Dikey büküm sütunu: sonsuz tanjanttan başlayıp |count| kesişim ekler"""
        nw, ne, sw, se = self.point(), self.point(), self.point(), self.point()
        self.link(nw, sw)
        self.link(ne, se)
        ends = {'NW': nw, 'NE': ne, 'SW': sw, 'SE': se}
        for _ in range(abs(count)):
            x = self.crossing(count > 0)
            self.link(ends['SW'], self.slot(x, NW))
            self.link(ends['SE'], self.slot(x, NE))
            ends['SW'], ends['SE'] = self.slot(x, SW), self.slot(x, SE)
        return ends

    def diagram(self) -> Diagram:
        adjacency: Dict[str, List[str]] = {}
        for a, b in self.edges:
            adjacency.setdefault(a, []).append(b)
            adjacency.setdefault(b, []).append(a)
        n = len(self.over_ne_sw)
        partner = [-1] * (4 * n)
        for s in range(4 * n):
            prev = f's{s}'
            if len(adjacency.get(prev, [])) != 1:
                raise DiagramError(f"uç {s} tek kenara bağlı değil")
            cur = adjacency[prev][0]
            while cur.startswith('v'):
                nxt = [x for x in adjacency[cur] if x != prev]
                prev, cur = cur, (nxt[0] if nxt else adjacency[cur][0])
            partner[s] = int(cur[1:])

        labels = [0] * (4 * n)
        head = [False] * (4 * n)
        seen = [False] * (4 * n)
        counter = 0
        for start in range(4 * n):
            if seen[start]:
                continue
            h = start
            while not seen[h]:
                seen[h] = True
                head[h] = True
                t = 4 * (h // 4) + (h % 4 + 2) % 4
                seen[t] = True
                counter += 1
                labels[t] = counter
                h = partner[t]
                labels[h] = counter
        crossings = []
        for i in range(n):
            under = (NW, SE) if self.over_ne_sw[i] else (NE, SW)
            k = under[0] if head[4 * i + under[0]] else under[1]
            crossings.append(tuple(labels[4 * i + (k + j) % 4] for j in range(4)))
        return Diagram(tuple(crossings), 0)


def pretzel_link(columns: Sequence[int]) -> Diagram:
    """P(a1, ..., ak) pretzel diyagramı; pozitif sayı KD-GB ipliği üstte bükümler"""
    if len(columns) < 2 or any(c == 0 for c in columns):
        raise DiagramError("pretzel için en az iki sıfırdan farklı sütun gerekli")
    builder = TangleBuilder()
    tangles = [builder.twist_column(c) for c in columns]
    for j, t in enumerate(tangles):
        nxt = tangles[(j + 1) % len(tangles)]
        builder.link(t['NE'], nxt['NW'])
        builder.link(t['SE'], nxt['SW'])
    return builder.diagram()


def pretzel(spec: PretzelSpec) -> Diagram:
    """K_{p,q} = P(2p+1, -2q-1, 2) standart diyagramı (2p+2q+4 kesişim)"""
    d = pretzel_link(spec.columns)
    if d.component_count != 1:
        raise DiagramError(f"{spec.name} tek bileşenli çıkmadı")
    return d


def braid_closure(strands: int, word: Sequence[int]) -> Diagram:
    """Örgü kelimesinin kapanışı; +i pozitif sigma_i (iplikler aşağı akar)"""
    if strands < 1:
        raise DiagramError("iplik sayısı pozitif olmalı")
    builder = TangleBuilder()
    first: List[Optional[str]] = [None] * strands
    open_end: List[Optional[str]] = [None] * strands

    def attach(pos: int, slot: str):
        if open_end[pos] is None:
            first[pos] = slot
        else:
            builder.link(open_end[pos], slot)

    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise DiagramError(f"geçersiz üreteç {g}")
        x = builder.crossing(g > 0)
        attach(i, builder.slot(x, NW))
        attach(i + 1, builder.slot(x, NE))
        open_end[i], open_end[i + 1] = builder.slot(x, SW), builder.slot(x, SE)
    loops = 0
    for i in range(strands):
        if first[i] is None:
            loops += 1
        else:
            builder.link(open_end[i], first[i])
    if not word:
        return Diagram((), loops)
    d = builder.diagram()
    return Diagram(d.crossings, loops)


def torus_knot(p: int, q: int) -> Diagram:
    """T(p,q): (sigma_1 ... sigma_{p-1})^q pozitif örgüsünün kapanışı"""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise DiagramError(f"tor düğümü için p, q >= 2 ve aralarında asal olmalı: ({p}, {q})")
    word = [i for _ in range(q) for i in range(1, p)]
    return braid_closure(p, word)
