import os
import os.path as op

import pytest
import py.path

from isospec import conf


HERE = op.dirname(__file__)


@pytest.fixture
def data_dir(request):
    """
    Return a :class:`py.path.local` object pointing to the "data" directory
    relative to the test file.
    """
    return request.fspath.dirpath('data')


@pytest.fixture
def tmp_dir(request):
    """
    Return a :class:`py.path.local` object pointing to the "tmp" directory
    relative to the test file.
    """
    tmp_dir = request.fspath.dirpath('tmp')
    if tmp_dir.isdir():
        tmp_dir.remove()
    tmp_dir.mkdir()
    return tmp_dir


@pytest.fixture(scope='session', autouse=True)
def setup_global_cli_env_vars():
    prev_vars = _setup_cli_env_vars(op.join(HERE, 'cli', 'data',
                                            'isospec.conf'))
    yield
    _restore_env_vars(prev_vars)


@pytest.fixture
def setup_cli_env_vars(request):
    """
    Point the user configuration to the file named by the test parameter,
    relative to ``tests/cli/data``.
    """
    fname = op.join(HERE, 'cli', 'data', request.param)
    prev_vars = _setup_cli_env_vars(fname)
    yield py.path.local(os.environ['ISOSPEC_USER_CONF'])
    _restore_env_vars(prev_vars)


@pytest.fixture
def tol_scale_var():
    """
    Return a function setting ``$ISOSPEC_TOL_SCALE`` for the current test.
    """
    prev_value = os.environ.get(conf.TOL_SCALE_VAR)

    def set_value(value):
        os.environ[conf.TOL_SCALE_VAR] = value

    yield set_value
    _restore_env_vars({conf.TOL_SCALE_VAR: prev_value})


def _setup_cli_env_vars(user_conf_fname):
    prev_vars = {key: os.environ.get(key)
                 for key in ('ISOSPEC_USER_CONF', conf.TOL_SCALE_VAR)}
    os.environ['ISOSPEC_USER_CONF'] = user_conf_fname
    os.environ.pop(conf.TOL_SCALE_VAR, None)
    return prev_vars


def _restore_env_vars(prev_vars):
    for key, value in prev_vars.items():
        if value is None:
            os.environ.pop(key, None)
        else:
            os.environ[key] = value
