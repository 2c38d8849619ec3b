"""
Komut Satırı Testleri
click CliRunner ile komutlar ve çıkış kodları
"""

import json

import pytest
from click.testing import CliRunner

from algorithms.settings import DATA_DIR
from cli import EXIT_BUDGET, EXIT_INPUT, EXIT_OK, cli

GENUS_TWO = {
    '11n95': (3, -4, 33, 4), '12n253': (2, 2, 55, -2), '12n254': (2, -4, 65, 4),
    '12n280': (3, -2, 51, 2), '12n323': (3, 0, 53, 0), '12n356': (2, 0, 61, 0),
    '12n375': (2, -4, 57, 4), '12n452': (3, -2, 55, 2), '12n706': (4, 0, 49, 0),
    '12n729': (3, -4, 73, 4), '12n811': (3, -2, 63, 2), '12n873': (2, 0, 85, 0),
}


@pytest.fixture
def runner():
    return CliRunner()


def test_invariants_json(runner):
    result = runner.invoke(cli, ['--json', 'invariants', 'torus', '2', '3'])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert data['name'] == 'T(2,3)'
    assert data['s'] == 2
    assert data['sigma'] == -2
    assert data['turaev_genus'] == 0
    assert data['bounds']['s']['passed']


def test_invariants_text_for_corpus_name(runner):
    result = runner.invoke(cli, ['invariants', '4_1', '--no-khovanov'])
    assert result.exit_code == EXIT_OK, result.output
    assert '4_1' in result.output
    assert 'det' in result.output


def test_invariants_writes_output(runner, tmp_path):
    path = tmp_path / 'rapor.json'
    result = runner.invoke(cli, ['invariants', 'PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]', '--output', str(path)])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(path.read_text(encoding='utf-8'))
    assert data['det'] == 3
    assert data['n_minus'] == 3


def test_bad_input_exit_codes(runner):
    assert runner.invoke(cli, ['invariants', 'PD[X[1,2,3]]']).exit_code == EXIT_INPUT
    assert runner.invoke(cli, ['invariants', 'yok_boyle_dugum']).exit_code == EXIT_INPUT
    assert runner.invoke(cli, ['invariants', 'pretzel', '1', '2']).exit_code == EXIT_INPUT
    assert runner.invoke(cli, ['--field', 'z5', 'invariants', '3_1']).exit_code == 2


def test_ceiling_skips_in_report(runner):
    result = runner.invoke(cli, ['--json', '--ceiling-kh', '2', 'invariants', 'torus', '2', '3'])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert data['s'] is None
    assert 'khovanov' in data['skipped']
    assert 's' in data['skipped']


def test_ceiling_exit_code(runner):
    result = runner.invoke(cli, ['--ceiling-kh', '2', 'asymptotic', 'torus', '2', '3'])
    assert result.exit_code == EXIT_BUDGET


def test_reduce(runner):
    result = runner.invoke(cli, ['--json', 'reduce', '6_2'])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert all(data['invariants'].values())


def test_qa_check_and_verify(runner, tmp_path):
    path = tmp_path / 'sertifika.json'
    result = runner.invoke(cli, ['qa-check', 'torus', '2', '3', '--output', str(path)])
    assert result.exit_code == EXIT_OK, result.output
    assert path.exists()
    result = runner.invoke(cli, ['qa-check', '--verify', str(path)])
    assert result.exit_code == EXIT_OK, result.output
    assert '✓' in result.output


def test_qa_check_budget(runner):
    result = runner.invoke(cli, ['qa-check', 'torus', '2', '3', '--budget', '1'])
    assert result.exit_code == EXIT_BUDGET


def test_reproduce_pretzel_sums(runner):
    result = runner.invoke(cli, ['--json', 'reproduce', 'pretzel-sums', '--max-g', '2', '--max-pq', '1'])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output)
    assert data['failures'] == 0
    assert [r['upper'] for r in data['rows']] == [1, 2]


def test_reproduce_genus_two(runner):
    result = runner.invoke(cli, ['--json', 'reproduce', 'genus-two'])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.output[result.output.index('{'):])
    assert data['failures'] == 0
    rows = {r['name']: r for r in data['rows']}
    assert list(rows) == list(GENUS_TWO)
    for name, (genus, sigma, det, s) in GENUS_TWO.items():
        row = rows[name]
        assert row['diagram_genus'] == genus, name
        assert 2 * genus == row['crossings'] + 2 - row['s_a'] - row['s_b'], name
        assert (row['sigma'], row['det'], row['s']) == (sigma, det, s), name
        assert row['s_method'] == 'injected'
        assert row['status'] == ('realized' if genus == 2 else 'upper bound'), name
        assert all(c['passed'] for c in row['checks'])
        assert [c['invariant'] for c in row['checks']] == ['neg_sigma', 's']
        assert row['lower_bound']['bound'] == '0'
        assert row['lower_bound']['passed']


def small_corpus(tmp_path, names=('3_1', '4_1', '5_2', '6_2')):
    lines = (DATA_DIR / 'rolfsen.csv').read_text(encoding='utf-8').splitlines()
    rows = [line for line in lines if line.startswith('name,') or line.split(',', 1)[0] in names]
    path = tmp_path / 'kucuk.csv'
    path.write_text('\n'.join(rows) + '\n', encoding='utf-8')
    return str(path)


def test_parallel_output_matches_serial(runner, tmp_path):
    corpus = small_corpus(tmp_path)
    for command in (['reproduce', 'bound-sweep'], ['table', '--with-s']):
        outputs = []
        for workers in ('1', '2'):
            result = runner.invoke(cli, ['--json', '--corpus', corpus, *command, '--workers', workers])
            assert result.exit_code == EXIT_OK, result.output
            outputs.append(result.output)
        assert outputs[0] == outputs[1]
    rows = json.loads(outputs[0])
    assert [r['name'] for r in rows] == ['3_1', '4_1', '5_2', '6_2']


def test_bad_worker_count(runner):
    result = runner.invoke(cli, ['reproduce', 'genus-two', '--workers', '0'])
    assert result.exit_code == EXIT_INPUT


def test_asymptotic_equality(runner):
    result = runner.invoke(cli, ['--json', 'asymptotic', 'pretzel', '1', '1'])
    assert result.exit_code == EXIT_OK, result.output
    assert json.loads(result.output)['status'] == 'equality'


if __name__ == '__main__':
    print('=== CLI TESTLERİ ===\n')
    r = CliRunner()
    test_invariants_json(r)
    test_reduce(r)
    print('✓ CLI testleri geçti')
