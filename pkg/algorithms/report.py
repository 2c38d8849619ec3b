"""
Değişmez Raporu
Bir diyagram için tüm sayılar; tavan nedeniyle atlanan alanlar sebep taşır.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from .bounds import fixed_source, knot_bounds_check, turaev_lower_bound
from .classical import determinant, jones_polynomial, signature
from .diagram import Diagram
from .errors import CeilingExceeded
from .khovanov import khovanov_homology, s_invariant
from .settings import Settings, get_settings
from .turaev import is_homogeneous_diagram, require_connected, s_a, s_b, turaev_genus_diagram

logger = logging.getLogger(__name__)


@dataclass
class InvariantReport:
    name: str
    pd: str
    crossings: int
    n_plus: int
    n_minus: int
    s_a: int
    s_b: int
    turaev_genus: int
    det: int
    sigma: int
    components: int = 1
    alternating: bool = False
    homogeneous: bool = False
    s: Optional[int] = None
    jones: Optional[str] = None
    khovanov: Optional[Dict[str, int]] = None
    kh_field: str = 'q'
    bounds: Dict[str, dict] = field(default_factory=dict)
    lower_bound: Optional[dict] = None
    skipped: Dict[str, str] = field(default_factory=dict)

    def consistent(self) -> bool:
        """g_T(D) durum sayılarından yeniden hesaplanabilir mi"""
        return 2 * self.turaev_genus == self.crossings + 2 - self.s_a - self.s_b

    @property
    def violations(self) -> int:
        count = sum(1 for b in self.bounds.values() if not b['passed'])
        if self.lower_bound and not self.lower_bound['passed']:
            count += 1
        return count

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'pd': self.pd,
            'crossings': self.crossings,
            'components': self.components,
            'n_plus': self.n_plus,
            'n_minus': self.n_minus,
            's_a': self.s_a,
            's_b': self.s_b,
            'turaev_genus': self.turaev_genus,
            'det': self.det,
            'sigma': self.sigma,
            'alternating': self.alternating,
            'homogeneous': self.homogeneous,
            's': self.s,
            'jones': self.jones,
            'khovanov': self.khovanov,
            'kh_field': self.kh_field,
            'bounds': self.bounds,
            'lower_bound': self.lower_bound,
            'skipped': self.skipped,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'InvariantReport':
        return cls(**data)


def _homology_keys(homology: Dict) -> Dict[str, int]:
    return {f"{i},{j}": r for (i, j), r in sorted(homology.items())}


def build_report(d: Diagram, name: str = '', settings: Optional[Settings] = None,
                 with_khovanov: bool = True, with_s: bool = True) -> InvariantReport:
    settings = settings or get_settings()
    require_connected(d)
    report = InvariantReport(
        name=name or str(d),
        pd=str(d),
        crossings=d.crossing_count,
        n_plus=d.n_plus,
        n_minus=d.n_minus,
        s_a=s_a(d),
        s_b=s_b(d),
        turaev_genus=turaev_genus_diagram(d),
        det=determinant(d),
        sigma=signature(d),
        components=d.component_count,
        alternating=d.is_alternating(),
        homogeneous=is_homogeneous_diagram(d),
        kh_field=settings.field,
    )
    try:
        report.jones = str(jones_polynomial(d, settings.bracket_ceiling))
    except CeilingExceeded as e:
        report.skipped['jones'] = str(e)
    if with_khovanov:
        try:
            report.khovanov = _homology_keys(khovanov_homology(d, settings.field, settings.kh_ceiling))
        except CeilingExceeded as e:
            report.skipped['khovanov'] = str(e)
    else:
        report.skipped['khovanov'] = 'istenmedi'

    if not d.is_knot:
        report.skipped['s'] = f"{d.component_count} bileşenli bağlantı: s yalnızca düğümler için"
        report.skipped['bounds'] = 'düğüm değil'
        return report
    if with_s:
        try:
            report.s = s_invariant(d, ceiling=settings.kh_ceiling).s
        except CeilingExceeded as e:
            report.skipped['s'] = str(e)
    else:
        report.skipped['s'] = 'istenmedi'

    values = {'neg_sigma': -report.sigma}
    checks = [('neg_sigma', knot_bounds_check(d, fixed_source('neg_sigma', -report.sigma)))]
    if report.s is not None:
        values['s'] = report.s
        checks.append(('s', knot_bounds_check(d, fixed_source('s', report.s))))
    for key, check in checks:
        report.bounds[key] = check.to_dict()
    if len(values) >= 2:
        report.lower_bound = turaev_lower_bound(values, [d]).to_dict()
    else:
        report.skipped['lower_bound'] = 's hesaplanmadı'
    if report.violations:
        logger.warning("%s: %d eşitsizlik ihlali", report.name, report.violations)
    return report
