import json
import os.path as op

import pytest

from isospec import exceptions
from isospec import reports
from isospec import scenarios
from isospec.reports import Bound, RunReport


def make_report():
    report = RunReport('ex1', 'ordinary supersymmetry', config={'dim': 4})
    report.add_residual('alpha_rel', 0.5)
    report.add_residual('extra', 2)
    report.add_fact('kernel_dim', 0)
    report.add_records('gamma', [{'n': 0, 'value': 1.0},
                                 {'n': 1, 'value': 2.0}])
    return report.evaluate({'alpha_rel': Bound('max', 1.0),
                            'n1_min_singular': Bound('min', 1.0)})


def test_bound():
    bound = Bound('max', 1e-3)
    assert bound.effective(10) == pytest.approx(1e-2)
    assert bound.check(5e-3, tol_scale=10)
    assert not bound.check(5e-3)
    assert not bound.check(None)
    assert not bound.check(float('nan'))
    at_least = Bound('min', 2)
    assert not at_least.scaled
    assert at_least.effective(100) == 2
    assert at_least.check(2.0)
    assert not at_least.check(1.5, tol_scale=100)
    with pytest.raises(exceptions.InvalidParameter):
        Bound('mean', 1)


def test_bound_from_spec():
    bound = Bound.from_spec('ratio', {'max': 0.1, 'scaled': False})
    assert (bound.kind, bound.value, bound.scaled) == ('max', 0.1, False)
    assert bound.effective(1e6) == 0.1
    for spec in ({'max': 1, 'min': 0}, {}, 1.0):
        with pytest.raises(exceptions.InvalidParameter) as excinfo:
            Bound.from_spec('ratio', spec)
        assert excinfo.value.key == 'ratio'


def test_evaluate():
    report = make_report()
    assert report.status == 'failed'
    assert report.failures == ['n1_min_singular']
    assert report.bounds == {'alpha_rel': {'max': 1.0},
                             'n1_min_singular': {'min': 1.0}}
    assert report.exit_code == 1


def test_evaluate_keeps_refusals():
    report = RunReport('ex1', 'ordinary supersymmetry')
    report.refuse(exceptions.ParameterConstraint('|alpha| = |beta|'))
    report.evaluate({'alpha_rel': Bound('max', 1.0)})
    assert report.status == 'refused'
    assert report.error == 'parameter constraint violated: |alpha| = |beta|'
    assert report.passed == {'alpha_rel': False}


def test_to_dict():
    report = make_report()
    data = report.to_dict()
    assert data['residuals'] == {'alpha_rel': 0.5, 'extra': 2.0}
    assert data['passed'] == {'alpha_rel': True, 'n1_min_singular': False}
    assert data['facts'] == {'kernel_dim': 0}
    assert 'wall_time' not in data
    report.wall_time = 0.25
    assert report.to_dict(include_timing=True)['wall_time'] == 0.25


def test_render_json_is_deterministic():
    first = reports.render_json(scenarios.run_scenario('ex1'))
    second = reports.render_json(scenarios.run_scenario('ex1'))
    assert first == second
    data = json.loads(first)
    assert data['scenario'] == 'ex1'
    assert data['status'] == 'ok'
    assert list(data) == sorted(data)


GOLDEN_SCENARIOS = ['ex1', 'ex4-diag', 'ex5-angular']


def stable_view(data):
    """
    The parts of a serialized report that do not depend on rounding: every
    field but the residual values, the record rows and the operator entries.
    """
    view = {key: data[key] for key in ('scenario', 'anchor', 'status',
                                       'error', 'config', 'dims', 'facts',
                                       'bounds', 'passed')}
    view['residuals'] = sorted(data['residuals'])
    view['records'] = {table: sorted(set().union(*rows))
                       for table, rows in data['records'].items()}
    view['operators'] = {name: op['dim']
                         for name, op in data['operators'].items()}
    return view


@pytest.mark.parametrize('name', GOLDEN_SCENARIOS)
def test_report_matches_golden(name, data_dir):
    data = json.loads(reports.render_json(scenarios.run_scenario(name)))
    golden = json.loads(data_dir.join('golden', '%s.json' % name).read())
    assert stable_view(data) == golden
    for key, value in data['residuals'].items():
        assert value is not None, key


def test_emit_matches_golden(data_dir, tmp_dir):
    golden = data_dir.join('golden')
    paths = reports.emit_report(make_report(), 'json',
                                str(tmp_dir.join('synthetic-report.json')))
    paths += reports.emit_report(make_report(), 'csv',
                                 str(tmp_dir.join('synthetic-report.csv')))
    names = [op.basename(p) for p in paths]
    assert names == [
        'synthetic-report.json',
        'synthetic-report.csv',
        'synthetic-report-gamma.csv',
    ]
    for name in names:
        assert tmp_dir.join(name).read_binary() == \
            golden.join(name).read_binary(), name


def test_float_formatting(tmp_dir):
    report = RunReport('ex1', 'ordinary supersymmetry')
    report.add_residual('alpha_rel', 0.1)
    data = json.loads(reports.render_json(report))
    assert '"alpha_rel": 0.1\n' in reports.render_json(report)
    assert data['residuals']['alpha_rel'] == 0.1
    path = tmp_dir.join('report.csv')
    reports.emit_report(report, 'csv', str(path))
    assert 'alpha_rel,0.10000000000000001,,,' in path.read().splitlines()


def test_residual_rows():
    rows = reports.residual_rows(make_report())
    assert [r['name'] for r in rows] == ['alpha_rel', 'extra',
                                         'n1_min_singular']
    assert rows[1] == {'name': 'extra', 'value': 2.0, 'bound_kind': None,
                       'bound': None, 'passed': None}
    assert rows[2]['value'] is None


def test_emit_json(tmp_dir):
    path = tmp_dir.join('report.json')
    written = reports.emit_report(make_report(), 'json', str(path))
    assert written == [str(path)]
    data = json.loads(path.read())
    assert data['records']['gamma'][1] == {'n': 1, 'value': 2.0}
    assert data['config'] == {'dim': 4}


def test_emit_csv(tmp_dir):
    path = tmp_dir.join('report.csv')
    written = reports.emit_report(make_report(), 'csv', str(path))
    assert written == [str(path), str(tmp_dir.join('report-gamma.csv'))]
    assert path.read().splitlines() == [
        'name,value,bound_kind,bound,passed',
        'alpha_rel,0.5,max,1,true',
        'extra,2,,,',
        'n1_min_singular,,min,1,false',
    ]
    assert tmp_dir.join('report-gamma.csv').read().splitlines() == [
        'n,value',
        '0,1',
        '1,2',
    ]


def test_emit_errors(tmp_dir):
    path = tmp_dir.join('missing', 'report.json')
    with pytest.raises(exceptions.ReportError) as excinfo:
        reports.emit_report(make_report(), 'json', str(path))
    assert excinfo.value.path == str(path)
    with pytest.raises(exceptions.InvalidParameter):
        reports.emit_report(make_report(), 'xml', str(tmp_dir.join('r.xml')))


def test_record_path():
    assert reports.record_path('out/report.csv', 'gamma') == \
        'out/report-gamma.csv'
    assert reports.record_path('report', 'grid') == 'report-grid.csv'


def test_render_summary():
    report = make_report()
    lines = reports.render_summary(report).splitlines()
    assert lines == [
        'ex1 (ordinary supersymmetry): failed',
        '  %-30s 0.5  (max 1: pass)' % 'alpha_rel',
        '  %-30s 2' % 'extra',
        '  %-30s n/a  (min 1: FAIL)' % 'n1_min_singular',
        '  %-30s 0' % 'kernel_dim',
    ]
    report.wall_time = 1.5
    summary = reports.render_summary(report, show_timing=True)
    assert summary.splitlines()[-1] == '  wall time: 1.500 s'


def test_render_summary_with_error():
    report = RunReport('ex4-phase', 'two-level system')
    report.fail(exceptions.NotHermitian(1.0, 1e-12))
    lines = reports.render_summary(report).splitlines()
    assert lines[0] == 'ex4-phase (two-level system): error'
    assert lines[1].startswith('  operator is not hermitian')
