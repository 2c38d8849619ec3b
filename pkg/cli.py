"""
Düğüm Laboratuvarı - Komut Satırı
Korpus okuma, toplu hesaplama, rapor üretimi ve doğrulama betikleri.

Çıkış kodları: 0 tüm kontroller geçti, 1 eşitsizlik ihlali,
2 girdi hatası, 3 bütçe / tavan aşıldı.
"""

import json
import logging
import sys
from functools import wraps
from pathlib import Path

import click

from algorithms.batch import (GenusTwoJob, SweepJob, TableJob, genus_two_row, run_batch, sweep_row,
                              table_row)
from algorithms.bounds import (asymptotic_genus_check, injected_source, load_injected,
                               pretzel_sum_sandwich, reduce_negative, reduce_positive)
from algorithms.corpus import corpus_index, ingest_corpus, load_watchlist
from algorithms.diagram import PretzelSpec, parse_pd, pretzel, torus_knot
from algorithms.errors import CeilingExceeded, KnotError
from algorithms.khovanov import s_invariant
from algorithms.qa import certificate_from_json, certificate_to_json, qa_certify, verify_certificate
from algorithms.report import build_report
from algorithms.settings import FIELDS, Settings

logger = logging.getLogger('knotlab')

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

SECTIONS = ('pretzel-sums', 'bound-sweep', 'genus-two')


class Context:
    def __init__(self, settings: Settings, as_json: bool):
        self.settings = settings
        self.as_json = as_json
        self._corpus = None

    @property
    def corpus(self):
        if self._corpus is None:
            self._corpus = ingest_corpus(self.settings.corpus_path)
        return self._corpus

    def resolve(self, target):
        """Korpus adı, PD metni, 'pretzel P Q' ya da 'torus P Q' -> (isim, diyagram)"""
        words = list(target)
        text = ' '.join(words).strip()
        if not text:
            raise KnotError("hedef boş")
        if text.upper().startswith('PD['):
            return text, parse_pd(text)
        head = words[0].lower()
        if head in ('pretzel', 'torus'):
            if len(words) != 3:
                raise KnotError(f"kullanım: {head} P Q")
            p, q = int(words[1]), int(words[2])
            if head == 'pretzel':
                spec = PretzelSpec(p, q)
                return spec.name, pretzel(spec)
            return f"T({p},{q})", torus_knot(p, q)
        index = corpus_index(self.corpus)
        if text not in index:
            raise KnotError(f"bilinmeyen düğüm: {text}")
        return text, index[text].diagram()

    def emit(self, data, lines=None):
        if self.as_json or lines is None:
            click.echo(json.dumps(data, indent=2, ensure_ascii=False))
        else:
            for line in lines:
                click.echo(line)


def guarded(f):
    """Hataları çıkış kodlarına çevir"""
    @wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            code = f(*args, **kwargs)
        except CeilingExceeded as e:
            click.echo(f"Hata: {e}", err=True)
            ctx.exit(EXIT_BUDGET)
        except (KnotError, ValueError, OSError) as e:
            click.echo(f"Hata: {e}", err=True)
            ctx.exit(EXIT_INPUT)
        ctx.exit(code or EXIT_OK)
    return wrapper


def _write_output(path, data):
    if path:
        Path(path).write_text(json.dumps(data, indent=2, ensure_ascii=False), encoding='utf-8')
        logger.info("rapor yazıldı: %s", path)


@click.group(name='knot')
@click.option('--field', type=click.Choice(FIELDS), default=None, help='Khovanov katsayı cismi')
@click.option('--ceiling-kh', type=int, default=None, help='Khovanov kesişim tavanı')
@click.option('--ceiling-bracket', type=int, default=None, help='Kauffman parantezi tavanı')
@click.option('--corpus', type=click.Path(), default=None, help='Korpus dosyası (CSV/JSON)')
@click.option('--injected', type=click.Path(), default=None, help='Enjekte değer dosyası')
@click.option('--json', 'as_json', is_flag=True, help='JSON çıktı')
@click.option('-v', '--verbose', count=True, help='Ayrıntılı günlük')
@click.pass_context
def cli(ctx, field, ceiling_kh, ceiling_bracket, corpus, injected, as_json, verbose):
    """Düğüm diyagramları için Turaev cinsi araçları"""
    level = logging.DEBUG if verbose > 1 else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    try:
        settings = Settings.from_env().override(
            field=field, kh_ceiling=ceiling_kh, bracket_ceiling=ceiling_bracket,
            corpus_path=Path(corpus) if corpus else None,
            injected_path=Path(injected) if injected else None)
    except ValueError as e:
        click.echo(f"Hata: {e}", err=True)
        ctx.exit(EXIT_INPUT)
    ctx.obj = Context(settings, as_json)


# ==================== invariants ====================

@cli.command()
@click.argument('target', nargs=-1, required=True)
@click.option('--no-khovanov', is_flag=True, help='Khovanov homolojisini atla')
@click.option('--output', type=click.Path(), default=None)
@click.pass_obj
@guarded
def invariants(obj: Context, target, no_khovanov, output):
    """Tek bir diyagram için değişmez raporu"""
    name, d = obj.resolve(target)
    report = build_report(d, name, obj.settings, with_khovanov=not no_khovanov)
    data = report.to_dict()
    lines = [f"{report.name}"]
    for key in ('crossings', 'n_plus', 'n_minus', 's_a', 's_b', 'turaev_genus', 'det', 'sigma', 's'):
        value = data[key]
        if value is None:
            value = f"- ({report.skipped.get(key, 'hesaplanmadı')})"
        lines.append(f"  {key:<13} {value}")
    for key, check in report.bounds.items():
        mark = '✓' if check['passed'] else '✗'
        lines.append(f"  {mark} {check['lower']} <= {key} = {check['value']} <= {check['upper']}")
    if report.lower_bound:
        lines.append(f"  alt sınır 1/2|mu-nu| = {report.lower_bound['bound']} <= g_T(D) = {report.turaev_genus}")
    obj.emit(data, lines)
    _write_output(output, data)
    return EXIT_VIOLATION if report.violations else EXIT_OK


# ==================== reproduce ====================

def _pretzel_sums(obj: Context, max_g: int, max_pq: int, compute_s: bool):
    records = load_injected(obj.settings.injected_path)
    rows, failures = [], 0
    for p in range(1, max_pq + 1):
        for q in range(1, p + 1):
            for g in range(1, max_g + 1):
                report = pretzel_sum_sandwich(g, p, q, compute_s=compute_s and g == 1, records=records)
                rows.append(report.to_dict())
                if not (report.passed and report.pinned):
                    failures += 1
    return {'section': 'pretzel-sums', 'rows': rows, 'failures': failures}, failures


def _bound_sweep(obj: Context, with_s: bool, random_tree: bool, seed, workers: int):
    jobs = [SweepJob(e.name, e.pd, with_s, 'random' if random_tree else 'bfs', seed, obj.settings.kh_ceiling)
            for e in obj.corpus if e.components == 1]
    rows = run_batch(sweep_row, jobs, workers)
    failures = sum(r['violations'] for r in rows)
    return {'section': 'bound-sweep', 'rows': rows, 'failures': failures}, failures


def _genus_two(obj: Context, compute_s: bool, workers: int):
    jobs = [GenusTwoJob(e.name, e.pd, e.expected_genus, e.citation, e.source, e.annotations,
                        compute_s, obj.settings.kh_ceiling)
            for e in load_watchlist(obj.settings.watchlist_path)]
    rows = run_batch(genus_two_row, jobs, workers)
    failures = sum(r['violations'] for r in rows)
    return {'section': 'genus-two', 'rows': rows, 'failures': failures}, failures


def _genus_two_line(r: dict) -> str:
    line = (f"{r['name']}: g_T(D) = {r['diagram_genus']} ({r['status']}), "
            f"sigma = {r['sigma']}, det = {r['det']}")
    if 's' in r:
        line += f", s = {r['s']}, 1/2|s+sigma| = {r['lower_bound']['bound']}"
    return line


@cli.command()
@click.argument('section', type=click.Choice(SECTIONS))
@click.option('--max-g', type=int, default=3, show_default=True)
@click.option('--max-pq', type=int, default=2, show_default=True)
@click.option('--compute-s', is_flag=True, help='s değerini Lee homolojisinden hesapla (yavaş)')
@click.option('--with-s/--without-s', default=True, help='Korpus taramasında s kontrolü')
@click.option('--random-tree', is_flag=True, help='Rastgele yayılan ağaç')
@click.option('--seed', type=int, default=None)
@click.option('--workers', type=int, default=None, help='Süreç sayısı (1: sıralı)')
@click.option('--output', type=click.Path(), default=None)
@click.pass_obj
@guarded
def reproduce(obj: Context, section, max_g, max_pq, compute_s, with_s, random_tree, seed, workers, output):
    """Sayısal iddiaları yeniden üret"""
    workers = obj.settings.override(workers=workers).workers
    if section == 'pretzel-sums':
        data, failures = _pretzel_sums(obj, max_g, max_pq, compute_s)
        lines = [f"{r['g']} x {r['knot']}: {r['lower']} <= g_T <= {r['upper']}"
                 f"  (s={r['s']}, 1/2|s+sigma| = {r['classical_bound']})" for r in data['rows']]
    elif section == 'bound-sweep':
        data, failures = _bound_sweep(obj, with_s, random_tree, seed, workers)
        lines = [f"{r['name']}: " + ', '.join(
            f"{c['lower']} <= {c['invariant']} = {c['value']} <= {c['upper']}" for c in r['checks'])
            for r in data['rows']]
    else:
        data, failures = _genus_two(obj, compute_s, workers)
        lines = [_genus_two_line(r) for r in data['rows']]
    lines.append(f"ihlal: {failures}")
    obj.emit(data, lines)
    _write_output(output, data)
    return EXIT_VIOLATION if failures else EXIT_OK


# ==================== reduce ====================

@cli.command(name='reduce')
@click.argument('target', nargs=-1, required=True)
@click.option('--negative', is_flag=True, help='Negatif kesişimleri kaldır (ayna üzerinden)')
@click.option('--random-tree', is_flag=True)
@click.option('--seed', type=int, default=None)
@click.pass_obj
@guarded
def reduce_cmd(obj: Context, target, negative, random_tree, seed):
    """Yayılan ağaç indirgemesinin izi"""
    name, d = obj.resolve(target)
    fn = reduce_negative if negative else reduce_positive
    result = fn(d, tree='random' if random_tree else 'bfs', seed=seed)
    data = {'name': name, 'diagram': str(d), **result.to_dict()}
    lines = [
        f"{name}: {d}",
        f"  Gamma: {result.gamma_vertices} köşe, {len(result.gamma_edges)} kenar",
        f"  ağaç: {result.tree} (bant sayısı {result.band_count})",
        f"  D^conn: {result.connected} ({result.connected.crossing_count} kesişim)",
        f"  R1 çözümleri: {result.untwists}",
        f"  D': {result.reduced} ({result.reduced.crossing_count} kesişim)",
    ]
    lines += [f"  {'✓' if ok else '✗'} {key}" for key, ok in result.invariants().items()]
    obj.emit(data, lines)
    return EXIT_OK if all(result.invariants().values()) else EXIT_VIOLATION


# ==================== qa-check ====================

@cli.command(name='qa-check')
@click.argument('target', nargs=-1)
@click.option('--budget', type=int, default=None)
@click.option('--depth', type=int, default=None)
@click.option('--verify', 'verify_path', type=click.Path(exists=True), default=None,
              help='JSON sertifikasını doğrula')
@click.option('--output', type=click.Path(), default=None, help='Sertifikayı JSON olarak yaz')
@click.pass_obj
@guarded
def qa_check(obj: Context, target, budget, depth, verify_path, output):
    """Yarı-alternatif sertifika ara ya da doğrula"""
    if verify_path:
        cert = certificate_from_json(json.loads(Path(verify_path).read_text(encoding='utf-8')))
        ok, message = verify_certificate(cert)
        obj.emit({'verified': ok, 'message': message}, ['✓ sertifika geçerli' if ok else f'✗ {message}'])
        return EXIT_OK if ok else EXIT_VIOLATION
    name, d = obj.resolve(target)
    settings = obj.settings.override(qa_budget=budget, qa_depth=depth)
    result = qa_certify(d, settings.qa_budget, settings.qa_depth)
    data = {'name': name, **result.to_dict()}
    lines = [f"{name}: {result.status} ({result.nodes} düğüm) {result.reason}".rstrip()]
    if result.certificate:
        ok, message = verify_certificate(result.certificate)
        data['verified'] = ok
        lines.append('✓ doğrulandı' if ok else f'✗ {message}')
        _write_output(output, certificate_to_json(result.certificate))
    obj.emit(data, lines)
    if result.status == 'exhausted':
        return EXIT_BUDGET
    return EXIT_OK if data.get('verified', True) else EXIT_VIOLATION


# ==================== table ====================

@cli.command()
@click.option('--with-s', is_flag=True, help='s sütununu ekle (yavaş)')
@click.option('--workers', type=int, default=None, help='Süreç sayısı (1: sıralı)')
@click.option('--output', type=click.Path(), default=None)
@click.pass_obj
@guarded
def table(obj: Context, with_s, workers, output):
    """Korpus tablosu, isme göre sıralı"""
    settings = obj.settings.override(workers=workers)
    jobs = [TableJob(e.name, e.pd, settings, with_s) for e in obj.corpus]
    rows = run_batch(table_row, jobs, settings.workers)
    header = f"{'isim':<12}{'c':>4}{'n+':>4}{'n-':>4}{'sA':>4}{'sB':>4}{'gT':>4}{'det':>6}{'sig':>5}"
    if with_s:
        header += f"{'s':>4}"
    lines = [header]
    for r in rows:
        line = (f"{r['name']:<12}{r['crossings']:>4}{r['n_plus']:>4}{r['n_minus']:>4}{r['s_a']:>4}"
                f"{r['s_b']:>4}{r['turaev_genus']:>4}{r['det']:>6}{r['sigma']:>5}")
        if with_s:
            line += f"{'-' if r['s'] is None else r['s']:>4}"
        lines.append(line)
    obj.emit(rows, lines)
    _write_output(output, rows)
    violations = sum(1 for r in rows for b in r['bounds'].values() if not b['passed'])
    return EXIT_VIOLATION if violations else EXIT_OK


@cli.command(name='asymptotic')
@click.argument('target', nargs=-1, required=True)
@click.pass_obj
@guarded
def asymptotic(obj: Context, target):
    """s + limsup s_n/n ile 2 g_T(D) karşılaştırması (enjekte değer gerekir)"""
    name, d = obj.resolve(target)
    try:
        limsup = injected_source('limsup_s_n_over_n', records=load_injected(obj.settings.injected_path))
        value = limsup.evaluate(name=name)
    except KnotError as e:
        logger.warning("%s: %s", name, e)
        value = None
    s = s_invariant(d, ceiling=obj.settings.kh_ceiling).s
    report = asymptotic_genus_check(name, s, value, [d])
    obj.emit(report.to_dict(), [f"{name}: {report.status} ({report.note})"])
    return EXIT_VIOLATION if report.status == 'violation' else EXIT_OK


def main():
    cli(prog_name='knotlab')


if __name__ == '__main__':
    sys.exit(main())
