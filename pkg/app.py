"""
Düğüm Laboratuvarı - Ana Flask Uygulaması
PD kodlu düğüm diyagramları için Turaev cinsi, klasik değişmezler,
Khovanov homolojisi ve yarı-alternatif sertifikaları sunan JSON API
"""

from flask import Flask, request, jsonify
from flask_sqlalchemy import SQLAlchemy
from datetime import datetime
import json

from algorithms.bounds import reduce_negative, reduce_positive
from algorithms.corpus import corpus_index, ingest_corpus
from algorithms.diagram import PretzelSpec, parse_pd, pretzel
from algorithms.errors import CeilingExceeded, KnotError
from algorithms.qa import qa_certify, verify_certificate
from algorithms.report import build_report
from algorithms.settings import FIELDS, get_settings
from cli import cli

app = Flask(__name__)
app.config['SQLALCHEMY_DATABASE_URI'] = 'sqlite:///knotlab.db'
app.config['SQLALCHEMY_TRACK_MODIFICATIONS'] = False
app.config.from_prefixed_env('KNOTLAB')

db = SQLAlchemy(app)
app.cli.add_command(cli)


# ==================== VERİTABANI MODELLERİ ====================

class InvariantRecord(db.Model):
    """Hesaplanmış rapor önbelleği - (isim, PD, cisim) başına bir kayıt"""
    id = db.Column(db.Integer, primary_key=True)
    name = db.Column(db.String(100), nullable=False)
    pd = db.Column(db.Text, nullable=False)
    field = db.Column(db.String(10), nullable=False, default='q')
    report_json = db.Column(db.Text, nullable=False)
    created_at = db.Column(db.DateTime, default=datetime.utcnow)

    __table_args__ = (db.UniqueConstraint('name', 'pd', 'field', name='uq_record_key'),)

    @property
    def report(self):
        return json.loads(self.report_json)

    def to_dict(self):
        return {
            'id': self.id,
            'name': self.name,
            'pd': self.pd,
            'field': self.field,
            'report': self.report,
            'created_at': self.created_at.isoformat() if self.created_at else None
        }


# ==================== YARDIMCI FONKSİYONLAR ====================

_corpus = None


def get_corpus():
    """Korpusun tekil örneği"""
    global _corpus
    if _corpus is None:
        _corpus = corpus_index(ingest_corpus(get_settings().corpus_path))
    return _corpus


def cached_report(name, d, field):
    """Önbellekte varsa oku, yoksa hesapla ve kaydet"""
    pd = str(d)
    record = InvariantRecord.query.filter_by(name=name, pd=pd, field=field).first()
    if record:
        return record.report
    settings = get_settings().override(field=field)
    report = build_report(d, name, settings).to_dict()
    db.session.add(InvariantRecord(name=name, pd=pd, field=field,
                                   report_json=json.dumps(report, ensure_ascii=False)))
    db.session.commit()
    app.logger.info("rapor hesaplandı: %s (%s)", name, field)
    return report


def diagram_from_request(data):
    """Gövdeden {pd} ya da {name} ile diyagram"""
    if data.get('pd'):
        return data.get('name') or data['pd'], parse_pd(data['pd'])
    name = (data.get('name') or '').strip()
    if not name:
        return None, None
    entry = get_corpus().get(name)
    if entry is None:
        return name, None
    return name, entry.diagram()


def error_response(e):
    if isinstance(e, CeilingExceeded):
        return jsonify({'error': str(e), 'limit': e.limit, 'size': e.size}), 413
    return jsonify({'error': str(e)}), 400


# ==================== KORPUS API ====================

@app.route('/api/knots', methods=['GET'])
def get_knots():
    """Korpustaki düğüm isimleri"""
    return jsonify(list(get_corpus().keys()))


@app.route('/api/knots/<name>', methods=['GET'])
def get_knot(name):
    """Tek bir korpus girdisinin raporu"""
    entry = get_corpus().get(name)
    if entry is None:
        return jsonify({'error': f'Bilinmeyen düğüm: {name}'}), 404
    field = request.args.get('field', get_settings().field)
    if field not in FIELDS:
        return jsonify({'error': 'Geçersiz cisim (gf2 veya q)'}), 400
    try:
        return jsonify({'entry': entry.to_dict(), 'report': cached_report(name, entry.diagram(), field)})
    except KnotError as e:
        return error_response(e)


# ==================== HESAPLAMA API ====================

@app.route('/api/invariants', methods=['POST'])
def compute_invariants():
    """PD kodu ya da korpus adı için değişmez raporu"""
    data = request.json or {}
    field = data.get('field', get_settings().field)
    if field not in FIELDS:
        return jsonify({'error': 'Geçersiz cisim (gf2 veya q)'}), 400
    try:
        name, d = diagram_from_request(data)
    except KnotError as e:
        return error_response(e)
    if name is None:
        return jsonify({'error': 'pd ya da name zorunludur'}), 400
    if d is None:
        return jsonify({'error': f'Bilinmeyen düğüm: {name}'}), 404
    try:
        return jsonify(cached_report(name, d, field))
    except KnotError as e:
        return error_response(e)


@app.route('/api/reduce', methods=['POST'])
def reduce_diagram():
    """Yayılan ağaç indirgemesi"""
    data = request.json or {}
    try:
        name, d = diagram_from_request(data)
        if name is None:
            return jsonify({'error': 'pd ya da name zorunludur'}), 400
        if d is None:
            return jsonify({'error': f'Bilinmeyen düğüm: {name}'}), 404
        fn = reduce_negative if data.get('negative') else reduce_positive
        result = fn(d, tree=data.get('tree', 'bfs'), seed=data.get('seed'))
    except KnotError as e:
        return error_response(e)
    return jsonify({'name': name, **result.to_dict()})


@app.route('/api/qa', methods=['POST'])
def qa_search():
    """Yarı-alternatif sertifika araması"""
    data = request.json or {}
    try:
        name, d = diagram_from_request(data)
        if name is None:
            return jsonify({'error': 'pd ya da name zorunludur'}), 400
        if d is None:
            return jsonify({'error': f'Bilinmeyen düğüm: {name}'}), 404
        result = qa_certify(d, data.get('budget'), data.get('depth'))
    except KnotError as e:
        return error_response(e)
    response = {'name': name, **result.to_dict()}
    if result.certificate:
        response['verified'] = verify_certificate(result.certificate)[0]
    return jsonify(response)


@app.route('/api/pretzel/<int:p>/<int:q>', methods=['GET'])
def pretzel_report(p, q):
    """K(p,q) = P(2p+1, -2q-1, 2) raporu"""
    field = request.args.get('field', get_settings().field)
    if field not in FIELDS:
        return jsonify({'error': 'Geçersiz cisim (gf2 veya q)'}), 400
    try:
        spec = PretzelSpec(p, q)
        d = pretzel(spec)
        return jsonify(cached_report(spec.name, d, field))
    except KnotError as e:
        return error_response(e)


def init_db():
    """Veritabanı tablolarını oluştur"""
    with app.app_context():
        db.create_all()


if __name__ == '__main__':
    init_db()
    app.run(debug=False, port=5000)
