import os
import os.path as op

import configobj
import validate
import click

from . import exceptions


THIS_DIR = op.dirname(__file__)
TOL_SCALE_VAR = 'ISOSPEC_TOL_SCALE'


def get_user_conf_fname():
    return os.environ.get(
        'ISOSPEC_USER_CONF',
        op.expanduser(op.join('~', '.config', 'isospec.conf'))
    )


def get_user_conf():
    """
    Get the user configuration.

    Return a :class:`configobj.ConfigObj` object, empty if the file does not
    exist.
    """
    return configobj.ConfigObj(get_user_conf_fname())


def get_conf():
    """
    Get the user configuration validated against ``confspec.ini``, with
    defaults filled in.

    Raise :class:`~isospec.exceptions.ConfError` if validation fails.
    """
    configspec_fname = op.join(THIS_DIR, 'confspec.ini')
    merged_conf = configobj.ConfigObj(configspec=configspec_fname)
    merged_conf.merge(get_user_conf())
    validator = validate.Validator()
    validation_results = merged_conf.validate(validator, preserve_errors=True)
    if validation_results is not True:
        raise exceptions.ConfError(merged_conf, validation_results)
    return merged_conf


def print_validation_errors(config, results):
    click.secho('Configuration validation failed:', fg='red', bold=True)
    for (section_list, key, _) in configobj.flatten_errors(config, results):
        if key is not None:
            click.secho('- the "%s" key in the section "%s" failed validation'
                        % (key, ', '.join(section_list)), fg='red')
        else:
            click.secho('- the following section was missing: %s' %
                        ', '.join(section_list), fg='red')


def get(path, conf=None):
    """
    Get the value at *path* in the validated configuration.
    """
    obj = get_conf() if conf is None else conf
    for key in path:
        obj = obj[key]
    return obj


def get_tol_scale(conf=None):
    """
    The global tolerance scale: ``$ISOSPEC_TOL_SCALE`` if set, else the
    ``[tolerances] scale`` setting.

    Raise :class:`~isospec.exceptions.InvalidEnvironment` if the variable is
    not a nonnegative number.
    """
    raw = os.environ.get(TOL_SCALE_VAR)
    if raw is None or raw == '':
        return float(get(('tolerances', 'scale'), conf))
    try:
        value = float(raw)
    except ValueError:
        raise exceptions.InvalidEnvironment(TOL_SCALE_VAR, raw)
    if not value >= 0:
        raise exceptions.InvalidEnvironment(TOL_SCALE_VAR, raw)
    return value
