import json

import pytest
from click.testing import CliRunner

from isospec import conf
from isospec.cli import main
from isospec.cli import run


def invoke(*args):
    runner = CliRunner()
    return runner.invoke(main.main, ['run'] + list(args))


def flat(output):
    return ' '.join(output.split())


def test_run_ok():
    assert run.run(['ex1'], standalone_mode=False) == 0
    result = invoke('ex1', '--dim', '20')
    assert result.exit_code == 0
    assert 'ex1 (ordinary supersymmetry): ok' in result.output.splitlines()
    assert 'wall time' not in result.output


def test_run_refused():
    result = invoke('ex4-phase', '--set', 'beta=2.0')
    assert result.exit_code == 3
    assert 'ex4-phase (two-level system): refused' in \
        result.output.splitlines()


def test_unknown_scenario():
    result = invoke('ex6')
    assert result.exit_code == 2
    lines = result.output.splitlines()
    assert 'Scenario not found in registry: ex6' in lines
    assert 'Use "isospec list" to show registered scenarios.' in lines


def test_bad_parameters():
    result = invoke('ex1', '--set', 'power=2')
    assert result.exit_code == 2
    assert 'Invalid parameters: scenario "ex1" has no parameter "power"' in \
        flat(result.output)
    result = invoke('quon-chain', '--q', '1.0')
    assert result.exit_code == 2
    result = invoke('ex2', '--set', 'reverse_level=100')
    assert result.exit_code == 2
    assert 'parameter "reverse_level" expects an integer below dim=40, ' \
        'got 100' in flat(result.output)
    result = invoke('ex1', '-s', 'dim')
    assert result.exit_code == 2
    assert 'Malformed override in command-line: dim' in \
        result.output.splitlines()


def test_invalid_tol_scale(tol_scale_var):
    tol_scale_var('abc')
    result = invoke('ex1')
    assert result.exit_code == 2
    assert 'environment variable ISOSPEC_TOL_SCALE has an invalid value' in \
        flat(result.output)


@pytest.mark.parametrize('setup_cli_env_vars', ['invalid.conf'],
                         indirect=True)
def test_invalid_conf(setup_cli_env_vars):
    result = invoke('ex1')
    assert result.exit_code == 2
    lines = result.output.splitlines()
    assert lines[0] == 'Configuration validation failed:'
    assert '- the "scale" key in the section "tolerances" failed ' \
        'validation' in lines


def test_run_json_report(tmp_dir):
    path = tmp_dir.join('ex1.json')
    result = invoke('ex1', '--out', str(path), '--format', 'json')
    assert result.exit_code == 0
    data = json.loads(path.read())
    assert data['scenario'] == 'ex1'
    assert data['status'] == 'ok'
    assert data['config']['dim'] == 30
    assert 'wall_time' not in data


def test_run_csv_report(tmp_dir):
    path = tmp_dir.join('ex2.csv')
    result = invoke('ex2', '-o', str(path), '-f', 'csv', '--timing')
    assert result.exit_code == 0
    assert 'wall time' in result.output
    assert path.read().splitlines()[0] == 'name,value,bound_kind,bound,passed'
    assert tmp_dir.join('ex2-gamma.csv').check()


@pytest.mark.parametrize('setup_cli_env_vars', ['csv.conf'], indirect=True)
def test_run_format_from_conf(setup_cli_env_vars, tmp_dir):
    path = tmp_dir.join('ex1.out')
    result = invoke('ex1', '-o', str(path))
    assert result.exit_code == 0
    assert 'wall time' in result.output
    assert path.read().startswith('name,value,bound_kind,bound,passed\n')


def test_report_write_error(tmp_dir):
    path = tmp_dir.join('missing', 'ex1.json')
    result = invoke('ex1', '-o', str(path))
    assert result.exit_code == 1
    assert 'Cannot write report: cannot write report to %s' % path in \
        flat(result.output)


def test_build_overrides():
    user_conf = conf.get_conf()
    flags = {'dim': None, 'delta': 0.25, 'q': None}
    assert run.build_overrides('gk-frame', flags, {'size': 8}, user_conf) == \
        {'size': 8, 'delta': 0.25, 'tail_tol': 1e-14}
    assert run.build_overrides('gk-frame', {}, {'tail_tol': 1e-12},
                               user_conf) == {'tail_tol': 1e-12}
    assert run.build_overrides('ex1', {'dim': 12}, {}, user_conf) == \
        {'dim': 12}
