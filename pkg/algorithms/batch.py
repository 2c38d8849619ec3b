"""
Toplu Hesaplama
Korpus taraması, tablo ve Turaev cinsi iki listesi satır satır hesaplanır.
workers > 1 ise satırlar ProcessPoolExecutor ile dağıtılır; map girdi
sırasını koruduğu için çıktı sıralı çalıştırmayla aynıdır.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, TypeVar

from .bounds import (InvariantSource, fixed_source, knot_bounds_check, reduce_negative,
                     reduce_positive, turaev_lower_bound)
from .classical import determinant, signature
from .diagram import parse_pd
from .errors import CeilingExceeded
from .khovanov import s_invariant
from .report import build_report
from .settings import Settings
from .turaev import s_a, s_b, turaev_genus_diagram

logger = logging.getLogger(__name__)

Job = TypeVar('Job')


def run_batch(fn: Callable[[Job], dict], jobs: Iterable[Job], workers: int = 1) -> List[dict]:
    """fn her işe uygulanır; sonuç listesi işlerin sırasındadır"""
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    logger.info("%d iş, %d süreç", len(jobs), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# ==================== SINIR TARAMASI ====================

@dataclass(frozen=True)
class SweepJob:
    name: str
    pd: str
    with_s: bool = True
    tree: str = 'bfs'
    seed: Optional[int] = None
    kh_ceiling: Optional[int] = None


def sweep_row(job: SweepJob) -> dict:
    """-sigma ve s sınırları, alt sınır ve iki yönde indirgeme değişmezleri"""
    d = parse_pd(job.pd)
    sigma = signature(d)
    row = {'name': job.name, 'turaev_genus': turaev_genus_diagram(d)}
    checks = [knot_bounds_check(d, fixed_source('neg_sigma', -sigma))]
    values = {'neg_sigma': -sigma}
    if job.with_s:
        try:
            s = s_invariant(d, ceiling=job.kh_ceiling).s
            values['s'] = s
            checks.append(knot_bounds_check(d, fixed_source('s', s)))
        except CeilingExceeded as e:
            row['skipped'] = str(e)
    row['checks'] = [c.to_dict() for c in checks]
    violations = sum(1 for c in checks if not c.passed)
    if len(values) >= 2:
        bound = turaev_lower_bound(values, [d])
        row['lower_bound'] = bound.to_dict()
        violations += 0 if bound.passed else 1
    for label, fn in (('positive', reduce_positive), ('negative', reduce_negative)):
        held = fn(d, tree=job.tree, seed=job.seed).invariants()
        row[f'reduce_{label}'] = held
        violations += sum(1 for ok in held.values() if not ok)
    row['violations'] = violations
    logger.info("%s: %s", job.name, f"{violations} ihlal" if violations else 'tamam')
    return row


# ==================== TABLO ====================

@dataclass(frozen=True)
class TableJob:
    name: str
    pd: str
    settings: Settings
    with_s: bool = False


def table_row(job: TableJob) -> dict:
    report = build_report(parse_pd(job.pd), job.name, job.settings,
                          with_khovanov=False, with_s=job.with_s)
    return report.to_dict()


# ==================== TURAEV CİNSİ İKİ ====================

@dataclass(frozen=True)
class GenusTwoJob:
    name: str
    pd: str
    expected: int
    citation: str
    source: str
    annotations: Dict[str, object] = field(default_factory=dict)
    compute_s: bool = False
    kh_ceiling: Optional[int] = None


def genus_two_row(job: GenusTwoJob) -> dict:
    """Tablo diyagramının g_T(D) değeri yalnızca üst sınırdır

    'realized': g_T(D) = beklenen; 'upper bound': diyagram en küçük değil;
    'below expected': diyagram beklenen cinsten küçük, tabloyla çelişki.
    s --compute-s ile hesaplanır, yoksa kaynaklı yazılı değer kullanılır.
    """
    d = parse_pd(job.pd)
    sigma = signature(d)
    genus = turaev_genus_diagram(d)
    row = {'name': job.name, 'expected': job.expected, 'citation': job.citation,
           'crossings': d.crossing_count, 'n_plus': d.n_plus, 'n_minus': d.n_minus,
           's_a': s_a(d), 's_b': s_b(d), 'diagram_genus': genus,
           'sigma': sigma, 'det': determinant(d)}
    checks = [knot_bounds_check(d, fixed_source('neg_sigma', -sigma))]
    values = {'neg_sigma': -sigma}
    s_value: Optional[int] = None
    if job.compute_s:
        try:
            s_value = s_invariant(d, ceiling=job.kh_ceiling).s
            row['s_method'] = 'computed'
        except CeilingExceeded as e:
            row['skipped'] = str(e)
    if s_value is not None:
        checks.append(knot_bounds_check(d, fixed_source('s', s_value)))
    elif 's' in job.annotations:
        source = InvariantSource('s', table={job.name: job.annotations['s']}, citation=job.source)
        checks.append(knot_bounds_check(d, source, job.name))
        s_value = int(job.annotations['s'])
        row['s_method'] = 'injected'
    violations = 0
    if s_value is not None:
        row['s'] = s_value
        values['s'] = s_value
        bound = turaev_lower_bound(values, [d])
        row['lower_bound'] = bound.to_dict()
        violations += 0 if bound.passed else 1
        if 's' in job.annotations and s_value != job.annotations['s']:
            row['annotation_mismatch'] = {'s': [job.annotations['s'], s_value]}
            violations += 1
    row['checks'] = [c.to_dict() for c in checks]
    violations += sum(1 for c in checks if not c.passed)
    if genus < job.expected:
        row['status'] = 'below expected'
        violations += 1
    else:
        row['status'] = 'realized' if genus == job.expected else 'upper bound'
    row['violations'] = violations
    return row
