"""
Klasik Değişmezler
Dama tahtası (checkerboard) boyaması, Goeritz matrisi, Gordon-Litherland
imzası, determinant ve bağımsız kontrol için Kauffman parantezi / Jones polinomu
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import sympy as sp

from .diagram import Diagram
from .errors import CeilingExceeded, DiagramError
from .settings import get_settings
from .turaev import circle_count, require_connected

logger = logging.getLogger(__name__)

A = sp.Symbol('A')
t = sp.Symbol('t')


# ==================== BÖLGELER VE BOYAMA ====================

@dataclass(frozen=True)
class CheckerboardColoring:
    """Bölgeler köşelerden izlenir: köşe (i, p) uç p ile p+1 arasındadır.

    face_of: köşe (4*i + p) -> bölge numarası
    colors: bölge -> 0 / 1
    unshaded: gölgesiz renk
    crossing_types: her kesişim için 'I' ya da 'II'
    """
    face_of: Dict[int, int]
    colors: Tuple[int, ...]
    unshaded: int
    crossing_types: Tuple[str, ...]

    @property
    def face_count(self) -> int:
        return len(self.colors)

    def unshaded_faces(self) -> List[int]:
        return [f for f, c in enumerate(self.colors) if c == self.unshaded]


def trace_faces(d: Diagram) -> Tuple[Dict[int, int], int]:
    """Sol dönüş yürüyüşü ile bölgeleri bul"""
    ends = d.arc_ends
    face_of: Dict[int, int] = {}
    faces = 0
    for i in range(d.crossing_count):
        for p in range(4):
            if 4 * i + p in face_of:
                continue
            ci, cp = i, p
            while 4 * ci + cp not in face_of:
                face_of[4 * ci + cp] = faces
                slot = (cp + 1) % 4
                a, b = ends[d.crossings[ci][slot]]
                ci, cp = b if a == (ci, slot) else a
            faces += 1
    return face_of, faces


def checkerboard(d: Diagram, flip: bool = False) -> CheckerboardColoring:
    """İki renkli boyama; en küçük yayın giriş köşesindeki bölge gölgesizdir"""
    require_connected(d)
    face_of, faces = trace_faces(d)
    adjacency: List[List[int]] = [[] for _ in range(faces)]
    for i in range(d.crossing_count):
        for p in range(4):
            f, g = face_of[4 * i + (p + 3) % 4], face_of[4 * i + p]
            adjacency[f].append(g)
            adjacency[g].append(f)
    colors: List[Optional[int]] = [None] * faces
    for root in range(faces):
        if colors[root] is not None:
            continue
        colors[root] = 0
        stack = [root]
        while stack:
            f = stack.pop()
            for g in adjacency[f]:
                if colors[g] is None:
                    colors[g] = 1 - colors[f]
                    stack.append(g)
                elif colors[g] == colors[f]:
                    raise DiagramError("bölgeler iki renge boyanamıyor: PD kodu düzlemsel değil")
    if faces:
        lowest = min(d.arc_ends)
        i, p = next((i, p) for i, p in d.arc_ends[lowest] if d.incoming[i][p])
        unshaded = colors[face_of[4 * i + p]] ^ int(flip)
    else:
        unshaded = 0
    types = []
    for i, sign in enumerate(d.signs):
        w = 1 if colors[face_of[4 * i]] == unshaded else -1
        types.append('II' if w == sign else 'I')
    return CheckerboardColoring(face_of, tuple(colors), unshaded, tuple(types))


# ==================== GOERİTZ ====================

@dataclass(frozen=True)
class GoeritzData:
    """Goeritz matrisi G ve Gordon-Litherland düzeltmesi mu"""
    matrix: Tuple[Tuple[int, ...], ...]
    mu: int
    coloring: CheckerboardColoring

    @property
    def size(self) -> int:
        return len(self.matrix)


def goeritz_data(d: Diagram, flip: bool = False) -> GoeritzData:
    coloring = checkerboard(d, flip)
    white = coloring.unshaded_faces()
    index = {f: k for k, f in enumerate(white)}
    m = [[0] * len(white) for _ in white]
    mu = 0
    for i, sign in enumerate(d.signs):
        corner = lambda p: coloring.face_of[4 * i + p]
        if coloring.colors[corner(0)] == coloring.unshaded:
            w, f1, f2 = 1, corner(0), corner(2)
        else:
            w, f1, f2 = -1, corner(1), corner(3)
        a, b = index[f1], index[f2]
        if a != b:
            m[a][b] += w
            m[b][a] += w
        if w == sign:
            mu += w
    for a in range(len(white)):
        m[a][a] = -sum(m[a][b] for b in range(len(white)) if b != a)
    matrix = tuple(tuple(-x for x in row[1:]) for row in m[1:])
    return GoeritzData(matrix, mu, coloring)


def symmetric_inertia(matrix: Sequence[Sequence[int]]) -> Tuple[int, int, sp.Rational]:
    """Simetrik eşlenik eleme: (pozitif, negatif, determinant), tam aritmetik"""
    a = [[sp.Integer(x) for x in row] for row in matrix]
    positive = negative = 0
    det = sp.Integer(1)
    while a:
        size = len(a)
        k = next((i for i in range(size) if a[i][i] != 0), None)
        if k is None:
            pair = next(((i, j) for i in range(size) for j in range(size)
                         if i != j and a[i][j] != 0), None)
            if pair is None:
                return positive, negative, sp.Integer(0)
            i, j = pair
            for c in range(size):
                a[i][c] += a[j][c]
            for r in range(size):
                a[r][i] += a[r][j]
            k = i
        a[0], a[k] = a[k], a[0]
        for row in a:
            row[0], row[k] = row[k], row[0]
        pivot = a[0][0]
        det *= pivot
        if pivot > 0:
            positive += 1
        else:
            negative += 1
        a = [[a[r][c] - a[r][0] * a[0][c] / pivot for c in range(1, size)] for r in range(1, size)]
    return positive, negative, det


def signature(d: Diagram) -> int:
    """sigma = imza(G) - mu; pozitif düğümlerin imzası negatiftir"""
    if not d.crossings:
        require_connected(d)
        return 0
    data = goeritz_data(d)
    positive, negative, _ = symmetric_inertia(data.matrix)
    return positive - negative - data.mu


def determinant(d: Diagram) -> int:
    """|det G|"""
    if not d.crossings:
        require_connected(d)
        return 1
    data = goeritz_data(d)
    _, _, det = symmetric_inertia(data.matrix)
    return int(abs(det))


# ==================== KAUFFMAN PARANTEZİ ====================

def _check_bracket_ceiling(d: Diagram, ceiling: Optional[int]):
    limit = ceiling if ceiling is not None else get_settings().bracket_ceiling
    if d.crossing_count > limit:
        raise CeilingExceeded('Kauffman parantezi', limit, d.crossing_count)


def bracket_coefficients(d: Diagram, ceiling: Optional[int] = None) -> Dict[int, int]:
    """<D> = sum A^(#A - #B) (-A^2 - A^-2)^(çember - 1); üs -> katsayı"""
    _check_bracket_ceiling(d, ceiling)
    n = d.crossing_count
    if n == 0:
        delta_power = d.loops - 1
        return _delta_powers(delta_power)[delta_power]
    histogram: Dict[Tuple[int, int], int] = {}
    for bits in range(1 << n):
        b = bin(bits).count('1')
        key = (n - 2 * b, circle_count(d, bits))
        histogram[key] = histogram.get(key, 0) + 1
    powers = _delta_powers(max(k for _, k in histogram) - 1)
    result: Dict[int, int] = {}
    for (shift, circles), mult in histogram.items():
        for e, c in powers[circles - 1].items():
            result[e + shift] = result.get(e + shift, 0) + mult * c
    return {e: c for e, c in sorted(result.items()) if c}


def _delta_powers(k: int) -> List[Dict[int, int]]:
    powers = [{0: 1}]
    for _ in range(k):
        prev = powers[-1]
        nxt: Dict[int, int] = {}
        for e, c in prev.items():
            nxt[e + 2] = nxt.get(e + 2, 0) - c
            nxt[e - 2] = nxt.get(e - 2, 0) - c
        powers.append({e: c for e, c in nxt.items() if c})
    return powers


def kauffman_bracket(d: Diagram, ceiling: Optional[int] = None) -> sp.Expr:
    coeffs = bracket_coefficients(d, ceiling)
    return sp.Add(*(c * A ** e for e, c in coeffs.items()))


def jones_coefficients(d: Diagram, ceiling: Optional[int] = None) -> Dict[sp.Rational, int]:
    """V(t) = (-A^3)^(-w) <D>, A = t^(-1/4); t üssü -> katsayı"""
    w = d.writhe
    sign = -1 if w % 2 else 1
    result: Dict[sp.Rational, int] = {}
    for e, c in bracket_coefficients(d, ceiling).items():
        exponent = sp.Rational(-(e - 3 * w), 4)
        result[exponent] = result.get(exponent, 0) + sign * c
    return {e: c for e, c in sorted(result.items()) if c}


def jones_polynomial(d: Diagram, ceiling: Optional[int] = None) -> sp.Expr:
    return sp.Add(*(c * t ** e for e, c in jones_coefficients(d, ceiling).items()))


def jones_determinant(d: Diagram, ceiling: Optional[int] = None) -> int:
    """|V(-1)|; t^(1/2) = i alınır"""
    value = sp.expand(jones_polynomial(d, ceiling).subs(t, -1))
    magnitude = sp.Abs(value)
    if not magnitude.is_integer:
        raise DiagramError(f"|V(-1)| tamsayı değil: {magnitude}")
    return int(magnitude)


def mirror_jones(expr: sp.Expr) -> sp.Expr:
    """Ayna görüntüsünün Jones polinomu: t -> 1/t"""
    return sp.expand(expr.subs(t, 1 / t))
