"""
Korpus
Paketlenmiş düğüm tablosunu (CSV ya da JSON) okur; isim tekrarı ve
çözümlenemeyen PD satırları satır numarasıyla reddedilir. Satırdaki yazılı
değerler (imza, determinant, alternatiflik, Turaev cinsi) okunurken
diyagramdan hesaplananlarla karşılaştırılır.
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple

from .classical import determinant, signature
from .diagram import Diagram, parse_pd
from .errors import AnnotationMismatch, CorpusError, PDParseError
from .khovanov import s_invariant
from .settings import get_settings
from .turaev import turaev_genus_diagram

logger = logging.getLogger(__name__)

COLUMNS = ('name', 'pd', 'components', 'citations')

# ==================== YAZILI DEĞERLER ====================

INTEGER_ANNOTATIONS = ('sigma', 'det', 's', 'turaev_genus')
FLAG_ANNOTATIONS = ('alternating', 'quasi_alternating', 'mirror')
FLAGS = {'y': True, 'n': False, '1': True, '0': False, 'true': True, 'false': False}


def parse_annotations(values: Mapping[str, object], name: str,
                      row: Optional[int] = None) -> Dict[str, object]:
    """Bilinen sütunlar tamsayı / bayrak olarak çözülür, boş hücreler atlanır"""
    result: Dict[str, object] = {}
    for key, value in values.items():
        if value is None or (isinstance(value, str) and not value.strip()):
            continue
        if key in INTEGER_ANNOTATIONS:
            try:
                value = int(value)
            except (TypeError, ValueError):
                raise CorpusError(f"{name}: {key} tamsayı değil ({value!r})", row)
        elif key in FLAG_ANNOTATIONS and not isinstance(value, bool):
            flag = FLAGS.get(str(value).strip().lower())
            if flag is None:
                raise CorpusError(f"{name}: {key} bayrağı anlaşılamadı ({value!r})", row)
            value = flag
        result[key] = value
    return result


def annotation_mismatches(annotations: Mapping[str, object], d: Diagram, with_s: bool = False,
                          ceiling: Optional[int] = None) -> Dict[str, Tuple[object, object]]:
    """Tutmayan yazılı değerler: sütun -> (yazılan, hesaplanan)

    sigma ve s tablo düğümüne göre yazılır; mirror işaretliyse diyagram
    aynadır ve ikisinin de işareti döner. turaev_genus düğümün değeridir,
    diyagramın g_T(D) değeri ondan küçük olamaz. Alternatif bir diyagram
    'alternating' ve 'quasi_alternating' bayraklarının yanlış olmasıyla çelişir.
    s yalnızca with_s ile kontrol edilir (Lee homolojisi gerekir).
    """
    sign = -1 if annotations.get('mirror') else 1
    found: Dict[str, Tuple[object, object]] = {}
    if 'det' in annotations:
        computed = determinant(d)
        if computed != annotations['det']:
            found['det'] = (annotations['det'], computed)
    if 'sigma' in annotations:
        computed = signature(d)
        if computed != sign * annotations['sigma']:
            found['sigma'] = (sign * annotations['sigma'], computed)
    if 'turaev_genus' in annotations:
        computed = turaev_genus_diagram(d)
        if computed < annotations['turaev_genus']:
            found['turaev_genus'] = (annotations['turaev_genus'], computed)
    if d.is_alternating():
        for key in ('alternating', 'quasi_alternating'):
            if annotations.get(key) is False:
                found[key] = (False, True)
    if with_s and 's' in annotations:
        computed = s_invariant(d, ceiling=ceiling).s
        if computed != sign * annotations['s']:
            found['s'] = (sign * annotations['s'], computed)
    return found


# ==================== KORPUS ====================

@dataclass
class CorpusEntry:
    name: str
    pd: str
    components: int = 1
    citations: List[str] = field(default_factory=list)
    annotations: Dict[str, object] = field(default_factory=dict)

    @property
    def base_name(self) -> str:
        """'6_2:kt' -> '6_2'"""
        return self.name.split(':', 1)[0]

    @property
    def variant(self) -> Optional[str]:
        return self.name.split(':', 1)[1] if ':' in self.name else None

    def diagram(self) -> Diagram:
        return parse_pd(self.pd)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'pd': self.pd,
            'components': self.components,
            'citations': self.citations,
            'annotations': self.annotations,
        }


def _entry(raw: dict, row: int, verify: bool) -> CorpusEntry:
    name = (raw.get('name') or '').strip()
    if not name:
        raise CorpusError("isim boş", row)
    pd = (raw.get('pd') or '').strip()
    try:
        d = parse_pd(pd)
    except PDParseError as e:
        raise CorpusError(f"{name}: PD çözümlenemedi ({e})", row)
    try:
        components = int(raw.get('components') or 1)
    except ValueError:
        raise CorpusError(f"{name}: bileşen sayısı tamsayı değil", row)
    if components != d.component_count:
        raise CorpusError(f"{name}: {components} bileşen yazılmış, diyagramda {d.component_count}", row)
    citations = raw.get('citations') or []
    if isinstance(citations, str):
        citations = [c.strip() for c in citations.split(';') if c.strip()]
    values = dict(raw.get('annotations') or {})
    values.update({k: v for k, v in raw.items() if k not in COLUMNS and k != 'annotations'})
    annotations = parse_annotations(values, name, row)
    if verify and annotations:
        mismatches = annotation_mismatches(annotations, d)
        if mismatches:
            raise AnnotationMismatch(name, mismatches, row)
    return CorpusEntry(name, pd, components, list(citations), annotations)


def _csv_rows(path: Path):
    with open(path, encoding='utf-8', newline='') as f:
        lines = [(n, line) for n, line in enumerate(f, 1) if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        return
    reader = csv.reader(line for _, line in lines)
    header = next(reader)
    if tuple(h.strip() for h in header[:2]) != COLUMNS[:2]:
        raise CorpusError(f"başlık {','.join(COLUMNS)} olmalı", lines[0][0])
    keys = [h.strip() for h in header]
    for (n, _), values in zip(lines[1:], reader):
        yield n, dict(zip(keys, values))


def _json_rows(path: Path):
    with open(path, encoding='utf-8') as f:
        data = json.load(f) if path.stat().st_size else []
    rows = data.get('knots', []) if isinstance(data, dict) else data
    for n, raw in enumerate(rows, 1):
        yield n, raw


def ingest_corpus(path: Optional[Path] = None, verify: bool = True) -> List[CorpusEntry]:
    """Doğrulanmış girdiler, isme göre sıralı

    verify: yazılı değerleri diyagramla karşılaştır; tutmazsa AnnotationMismatch
    """
    path = Path(path or get_settings().corpus_path)
    if not path.exists():
        raise CorpusError(f"korpus dosyası bulunamadı: {path}")
    rows = _json_rows(path) if path.suffix.lower() == '.json' else _csv_rows(path)
    entries: Dict[str, CorpusEntry] = {}
    for row, raw in rows:
        entry = _entry(raw, row, verify)
        if entry.name in entries:
            raise CorpusError(f"tekrarlanan isim: {entry.name}", row)
        entries[entry.name] = entry
    logger.info("korpus: %d girdi (%s)", len(entries), path.name)
    return [entries[k] for k in sorted(entries, key=_sort_key)]


def _sort_key(name: str):
    """'3_1' < '10_1'; varyantlar temel düğümün ardından"""
    base, _, variant = name.partition(':')
    crossing, _, index = base.partition('_')
    try:
        return (int(crossing), int(index), variant)
    except ValueError:
        return (10 ** 6, 0, name)


def corpus_index(entries: List[CorpusEntry]) -> Dict[str, CorpusEntry]:
    return {e.name: e for e in entries}


# ==================== İZLEME LİSTESİ ====================

@dataclass
class WatchlistEntry:
    name: str
    pd: str
    expected_genus: int
    citation: str
    source: str = ''
    annotations: Dict[str, object] = field(default_factory=dict)

    def diagram(self) -> Diagram:
        return parse_pd(self.pd)


def load_watchlist(path: Optional[Path] = None) -> List[WatchlistEntry]:
    """Turaev cinsi iki olan düğümler ve tablo diyagramları"""
    path = Path(path or get_settings().watchlist_path)
    if not path.exists():
        raise CorpusError(f"izleme listesi bulunamadı: {path}")
    with open(path, encoding='utf-8') as f:
        data = json.load(f)
    citation = data.get('citation')
    if not citation:
        raise CorpusError("izleme listesi kaynak (citation) içermeli")
    genus = int(data.get('expected_genus', 2))
    source = data.get('diagram_citation') or citation
    result = []
    for row, raw in enumerate(data.get('knots', []), 1):
        if 'name' not in raw:
            raise CorpusError("isim eksik", row)
        name, pd = raw['name'], (raw.get('pd') or '').strip()
        if not pd:
            raise CorpusError(f"{name}: PD kodu eksik", row)
        try:
            d = parse_pd(pd)
        except PDParseError as e:
            raise CorpusError(f"{name}: PD çözümlenemedi ({e})", row)
        annotations = parse_annotations(raw.get('annotations') or {}, name, row)
        mismatches = annotation_mismatches(annotations, d)
        if mismatches:
            raise AnnotationMismatch(name, mismatches, row)
        result.append(WatchlistEntry(name, pd, genus, citation, source, annotations))
    return result
