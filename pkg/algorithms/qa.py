"""
Yarı-Alternatif (Quasi-Alternating) Sertifikaları
Determinant özyinelemesiyle sınırlı arama, R1/R2 sadeleştirme ile
bilinmeyen düğüm yaprakları, bağımsız doğrulama ve JSON serileştirme.

Sertifika düğümü: pd, det, trace (pd üzerinde uygulanan hamleler), crossing
(sadeleşmiş diyagramda seçilen kesişim) ve iki çocuk (A ve B düzleştirmeleri).
Yapraklarda crossing yoktur; trace diyagramı 0 kesişime indirir.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .classical import determinant, trace_faces
from .diagram import (STRAIGHT_PAIRS, Diagram, canonical_key, connected_sum, parse_pd,
                      remove_crossings, smooth)
from .errors import CeilingExceeded, DiagramError, KnotError, SplitDiagramError
from .khovanov import is_thin, khovanov_homology
from .settings import get_settings
from .turaev import require_connected

logger = logging.getLogger(__name__)


# ==================== HAMLELER ====================

class MoveType(str, Enum):
    R1 = 'R1'
    R2 = 'R2'


@dataclass(frozen=True)
class ReidemeisterMove:
    kind: MoveType
    crossings: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {'move': self.kind.value, 'crossings': list(self.crossings)}

    @classmethod
    def from_dict(cls, data: dict) -> 'ReidemeisterMove':
        return cls(MoveType(data['move']), tuple(data['crossings']))


@dataclass
class SimplificationTrace:
    moves: List[ReidemeisterMove] = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def replay(self, d: Diagram) -> Diagram:
        for move in self.moves:
            d = apply_move(d, move)
        return d

    def to_list(self) -> List[dict]:
        return [m.to_dict() for m in self.moves]

    @classmethod
    def from_list(cls, data: Sequence[dict]) -> 'SimplificationTrace':
        return cls([ReidemeisterMove.from_dict(m) for m in data])


def r1_sites(d: Diagram) -> List[int]:
    """Aynı etiketin komşu iki uçta göründüğü kesişimler (kıvrım)"""
    return [i for i, c in enumerate(d.crossings)
            if any(c[p] == c[(p + 1) % 4] for p in range(4))]


def r2_sites(d: Diagram) -> List[Tuple[int, int]]:
    """İki köşeli bölgeler: biri iki kez üstten, diğeri iki kez alttan geçen yaylar"""
    if not d.crossings:
        return []
    face_of, faces = trace_faces(d)
    corners: Dict[int, List[Tuple[int, int]]] = {}
    for key, f in face_of.items():
        corners.setdefault(f, []).append(divmod(key, 4))
    sites = set()
    ends = d.arc_ends
    for f in range(faces):
        if len(corners[f]) != 2:
            continue
        (i, p), (j, _) = corners[f]
        if i == j:
            continue
        ok = True
        for slot in (p, (p + 1) % 4):
            (a, x), (b, y) = ends[d.crossings[i][slot]]
            if {a, b} != {i, j} or x % 2 != y % 2:
                ok = False
        if ok:
            sites.add((min(i, j), max(i, j)))
    return sorted(sites)


def apply_move(d: Diagram, move: ReidemeisterMove) -> Diagram:
    """Hamlenin deseni diyagramda yoksa DiagramError"""
    if move.kind == MoveType.R1:
        (i,) = move.crossings
        if i not in r1_sites(d):
            raise DiagramError(f"R1 deseni yok: kesişim {i}")
        return remove_crossings(d, {i: STRAIGHT_PAIRS})[0]
    pair = tuple(sorted(move.crossings))
    if pair not in r2_sites(d):
        raise DiagramError(f"R2 deseni yok: kesişimler {pair}")
    return remove_crossings(d, {pair[0]: STRAIGHT_PAIRS, pair[1]: STRAIGHT_PAIRS})[0]


def simplify(d: Diagram) -> Tuple[Diagram, SimplificationTrace]:
    """Açgözlü R1/R2 indirgemesi; kesişim sayısı hiç artmaz"""
    trace = SimplificationTrace()
    while d.crossings:
        sites = r1_sites(d)
        if sites:
            move = ReidemeisterMove(MoveType.R1, (sites[0],))
        else:
            pairs = r2_sites(d)
            if not pairs:
                break
            move = ReidemeisterMove(MoveType.R2, pairs[0])
        d = apply_move(d, move)
        trace.moves.append(move)
    return d, trace


def is_unknot_leaf(d: Diagram) -> bool:
    return not d.crossings and d.loops == 1


# ==================== SERTİFİKA ====================

@dataclass
class QANode:
    pd: str
    det: int
    trace: SimplificationTrace = field(default_factory=SimplificationTrace)
    crossing: Optional[int] = None
    children: Tuple['QANode', ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.crossing is None

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def to_dict(self) -> dict:
        data = {'pd': self.pd, 'det': self.det, 'trace': self.trace.to_list()}
        if not self.is_leaf:
            data['crossing'] = self.crossing
            data['children'] = [c.to_dict() for c in self.children]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'QANode':
        children = tuple(cls.from_dict(c) for c in data.get('children', ()))
        return cls(data['pd'], int(data['det']), SimplificationTrace.from_list(data.get('trace', ())),
                   data.get('crossing'), children)


@dataclass
class QAResult:
    """status: certified | exhausted | refuted"""
    status: str
    certificate: Optional[QANode] = None
    nodes: int = 0
    reason: str = ''

    def to_dict(self) -> dict:
        return {'status': self.status, 'nodes': self.nodes, 'reason': self.reason,
                'certificate': self.certificate.to_dict() if self.certificate else None}


def _det(d: Diagram) -> int:
    try:
        return determinant(d)
    except SplitDiagramError:
        return 0


class _Exhausted(Exception):
    pass


class _Search:
    def __init__(self, budget: int, depth: int):
        self.budget = budget
        self.max_depth = depth
        self.nodes = 0
        self.cutoffs = 0
        self.failed: Set[Tuple] = set()

    @property
    def truncated(self) -> bool:
        return self.cutoffs > 0

    def run(self, d: Diagram, det: int, depth: int) -> Optional[QANode]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Exhausted()
        work, trace = simplify(d)
        if is_unknot_leaf(work):
            return QANode(str(d), det, trace) if det == 1 else None
        key = canonical_key(work)
        if key in self.failed:
            return None
        if depth >= self.max_depth:
            self.cutoffs += 1
            return None
        cutoffs = self.cutoffs
        candidates = []
        for c in range(work.crossing_count):
            a = smooth(work, c, 'A')
            b = smooth(work, c, 'B')
            da, db = _det(a), _det(b)
            if da > 0 and db > 0 and da + db == det:
                candidates.append((-(da * db), c, a, da, b, db))
        candidates.sort(key=lambda x: (x[0], x[1]))
        for _, c, a, da, b, db in candidates:
            left = self.run(a, da, depth + 1)
            if left is None:
                continue
            right = self.run(b, db, depth + 1)
            if right is None:
                continue
            logger.debug("derinlik %d: kesişim %d, %d = %d + %d", depth, c, det, da, db)
            return QANode(str(d), det, trace, c, (left, right))
        # derinlik sınırına takılan başarısızlık kesin değil
        if self.cutoffs == cutoffs:
            self.failed.add(key)
        return None


def thinness_obstruction(d: Diagram) -> Optional[str]:
    """GF(2) Khovanov homolojisi ince değilse sebep döner"""
    try:
        homology = khovanov_homology(d, 'gf2')
    except CeilingExceeded:
        return None
    if is_thin(homology):
        return None
    diagonals = sorted({j - 2 * i for i, j in homology})
    return f"Khovanov homolojisi ince değil: köşegenler {diagonals}"


def qa_certify(d: Diagram, budget: Optional[int] = None, depth: Optional[int] = None) -> QAResult:
    settings = get_settings()
    budget = settings.qa_budget if budget is None else budget
    depth = settings.qa_depth if depth is None else depth
    if budget <= 0 or depth <= 0:
        raise KnotError("arama bütçesi ve derinlik pozitif olmalı")
    require_connected(d)
    det = _det(d)
    if det == 0:
        return QAResult('refuted', reason='det = 0')
    if not d.is_alternating():
        reason = thinness_obstruction(d)
        if reason:
            return QAResult('refuted', reason=reason)
    search = _Search(budget, depth)
    try:
        node = search.run(d, det, 0)
    except _Exhausted:
        logger.info("QA araması bütçeyi aştı (%d düğüm)", budget)
        return QAResult('exhausted', nodes=search.nodes, reason=f"bütçe {budget} aşıldı")
    if node is None:
        reason = 'derinlik sınırı' if search.truncated else 'sertifika bulunamadı'
        return QAResult('exhausted', nodes=search.nodes, reason=reason)
    return QAResult('certified', node, search.nodes)


def verify_certificate(cert: QANode) -> Tuple[bool, str]:
    """Her düğümde determinantı yeniden hesapla, izleri yeniden oynat"""
    try:
        d = parse_pd(cert.pd)
    except KnotError as e:
        return False, f"{cert.pd}: {e}"
    if _det(d) != cert.det:
        return False, f"{cert.pd}: det {cert.det} kayıtlı, {_det(d)} hesaplandı"
    try:
        work = cert.trace.replay(d)
    except DiagramError as e:
        return False, f"{cert.pd}: iz oynatılamadı ({e})"
    if cert.is_leaf:
        if not is_unknot_leaf(work) or cert.det != 1:
            return False, f"{cert.pd}: yaprak bilinmeyen düğüme inmiyor"
        return True, ''
    if len(cert.children) != 2 or not 0 <= cert.crossing < work.crossing_count:
        return False, f"{cert.pd}: geçersiz dal"
    left, right = cert.children
    for child, kind in ((left, 'A'), (right, 'B')):
        expected = str(smooth(work, cert.crossing, kind))
        if child.pd != expected:
            return False, f"{cert.pd}: {kind} çocuğu {expected} olmalı"
        if child.det <= 0:
            return False, f"{child.pd}: det pozitif değil"
    if left.det + right.det != cert.det:
        return False, f"{cert.pd}: {cert.det} != {left.det} + {right.det}"
    for child in (left, right):
        ok, message = verify_certificate(child)
        if not ok:
            return False, message
    return True, ''


# ==================== BAĞLANTILI TOPLAM ====================


def _compose(x: Diagram, node: QANode, rest: Sequence[QANode]) -> QANode:
    """x'in ilk kesişimleri node.pd ile aynı sırada; hamleler indeksle aktarılır"""
    work = x
    moves: List[ReidemeisterMove] = []
    current, remaining = node, list(rest)
    while True:
        for move in current.trace.moves:
            work = apply_move(work, move)
            moves.append(move)
        if not current.is_leaf:
            break
        if not remaining:
            if not is_unknot_leaf(work):
                raise DiagramError("birleşik yaprak bilinmeyen düğüme inmedi")
            return QANode(str(x), _det(x), SimplificationTrace(moves))
        current = remaining.pop(0)
    children = tuple(_compose(smooth(work, current.crossing, kind), child, remaining)
                     for kind, child in zip('AB', current.children))
    return QANode(str(x), _det(x), SimplificationTrace(moves), current.crossing, children)


def compose_connected_sum(first: QANode, second: QANode) -> QANode:
    """K1 ve K2 sertifikalarından K1 # K2 sertifikası

    det(K1 # K2) = det(K1) det(K2) olduğundan K1 ağacındaki her dal toplamla
    birlikte geçerlidir; K1 yapraklarında K2 ağacı devam eder. Hamle deseni
    toplam bandı tarafından bozulursa toplam diyagramında yeniden aranır.
    """
    x = connected_sum(parse_pd(first.pd), parse_pd(second.pd))
    try:
        node = _compose(x, first, [second])
        ok, message = verify_certificate(node)
        if ok:
            return node
        logger.debug("doğrudan birleştirme geçersiz: %s", message)
    except DiagramError as e:
        logger.debug("doğrudan birleştirme uygulanamadı: %s", e)
    result = qa_certify(x)
    if result.status != 'certified':
        raise KnotError(f"bağlantılı toplam sertifikası kurulamadı: {result.reason}")
    return result.certificate


def certificate_to_json(cert: QANode) -> dict:
    return {'format': 'qa-certificate', 'version': 1, 'root': cert.to_dict()}


def certificate_from_json(data: dict) -> QANode:
    if data.get('format') != 'qa-certificate':
        raise KnotError("sertifika biçimi tanınmadı")
    return QANode.from_dict(data['root'])
