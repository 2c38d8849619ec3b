"""
Algoritma modülü
"""

from .errors import (
    KnotError,
    PDParseError,
    DiagramError,
    SplitDiagramError,
    CeilingExceeded,
    MissingInvariant,
    ReductionError,
    CorpusError,
    AnnotationMismatch
)
from .settings import Settings, get_settings, reset_settings
from .diagram import (
    Diagram,
    PretzelSpec,
    parse_pd,
    serialize_pd,
    crossing_signs,
    smooth,
    oriented_resolution,
    mirror,
    connected_sum,
    connected_sum_power,
    canonical_key,
    pretzel,
    pretzel_link,
    braid_closure,
    torus_knot,
    unknot
)
from .turaev import (
    StateAssignment,
    count_circles,
    s_a,
    s_b,
    seifert_circles,
    turaev_genus_diagram,
    ribbon_genus_oracle,
    diagram_genus_upper_bound,
    is_homogeneous_diagram
)
from .classical import (
    checkerboard,
    goeritz_data,
    signature,
    determinant,
    kauffman_bracket,
    jones_polynomial,
    jones_determinant
)
from .khovanov import (
    build_cube,
    khovanov_homology,
    graded_euler_characteristic,
    lee_homology_rank,
    is_thin,
    s_invariant
)
from .bounds import (
    InvariantSource,
    Interval,
    s_source,
    neg_sigma_source,
    fixed_source,
    injected_source,
    slice_torus_source,
    reduce_positive,
    reduce_negative,
    diagram_bounds_check,
    knot_bounds_check,
    turaev_lower_bound,
    pretzel_sum_sandwich,
    asymptotic_genus_check
)
from .qa import simplify, qa_certify, verify_certificate, compose_connected_sum
from .corpus import CorpusEntry, ingest_corpus, load_watchlist
from .report import InvariantReport, build_report

__all__ = [
    'KnotError',
    'PDParseError',
    'DiagramError',
    'SplitDiagramError',
    'CeilingExceeded',
    'MissingInvariant',
    'ReductionError',
    'CorpusError',
    'AnnotationMismatch',
    'Settings',
    'get_settings',
    'reset_settings',
    'Diagram',
    'PretzelSpec',
    'parse_pd',
    'serialize_pd',
    'crossing_signs',
    'smooth',
    'oriented_resolution',
    'mirror',
    'connected_sum',
    'connected_sum_power',
    'canonical_key',
    'pretzel',
    'pretzel_link',
    'braid_closure',
    'torus_knot',
    'unknot',
    'StateAssignment',
    'count_circles',
    's_a',
    's_b',
    'seifert_circles',
    'turaev_genus_diagram',
    'ribbon_genus_oracle',
    'diagram_genus_upper_bound',
    'is_homogeneous_diagram',
    'checkerboard',
    'goeritz_data',
    'signature',
    'determinant',
    'kauffman_bracket',
    'jones_polynomial',
    'jones_determinant',
    'build_cube',
    'khovanov_homology',
    'graded_euler_characteristic',
    'lee_homology_rank',
    'is_thin',
    's_invariant',
    'InvariantSource',
    'Interval',
    's_source',
    'neg_sigma_source',
    'fixed_source',
    'injected_source',
    'slice_torus_source',
    'reduce_positive',
    'reduce_negative',
    'diagram_bounds_check',
    'knot_bounds_check',
    'turaev_lower_bound',
    'pretzel_sum_sandwich',
    'asymptotic_genus_check',
    'simplify',
    'qa_certify',
    'verify_certificate',
    'compose_connected_sum',
    'CorpusEntry',
    'ingest_corpus',
    'load_watchlist',
    'InvariantReport',
    'build_report'
]
