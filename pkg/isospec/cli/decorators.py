import functools
import sys

import click
import yaml.error

from .. import conf
from .. import exceptions
from .. import scenarios
from .. import utils


PARAMETER_ERROR_EXIT = 2
HYPOTHESIS_ERROR_EXIT = 3
RUNTIME_ERROR_EXIT = 1


def overrides_command(func):
    """
    Add the ``--set KEY=VALUE`` option.

    The command receives an *overrides* argument, a dict of parameter values
    parsed as YAML.
    """

    @click.option('--set', '-s', 'override_specs', multiple=True,
                  metavar='KEY=VALUE', help='Override scenario parameter KEY '
                  'with VALUE, parsed as YAML; use --set multiple times to '
                  'override multiple parameters.')
    @functools.wraps(func)
    def wrapper(override_specs, **kwargs):
        overrides = scenarios.parse_overrides(override_specs)
        return func(overrides=overrides, **kwargs)

    return wrapper


def handle_conf_errors(func):
    """
    Print nice error messages on configuration validation errors.
    """

    @functools.wraps(func)
    def wrapper(**kwargs):
        try:
            return func(**kwargs)
        except exceptions.ConfError as exc:
            conf.print_validation_errors(exc.conf, exc.validation_results)
            sys.exit(PARAMETER_ERROR_EXIT)

    return wrapper


def handle_parameter_errors(func):
    """
    Print nice error messages on bad scenario names, overrides and parameter
    values.
    """

    @functools.wraps(func)
    def wrapper(**kwargs):
        try:
            return func(**kwargs)
        except exceptions.MalformedOverride as exc:
            click.secho('Malformed override in command-line: %s' % exc,
                        fg='red', bold=True)
            click.secho('')
            click.secho('Use KEY=VALUE format.', fg='green')
        except exceptions.UnknownScenario as exc:
            click.secho('Scenario not found in registry: %s' % exc.name,
                        fg='red', bold=True)
            click.secho('')
            click.secho('Use "isospec list" to show registered scenarios.',
                        fg='green')
        except exceptions.ParameterError as exc:
            utils.sechowrap('Invalid parameters: %s' % exc, fg='red',
                            bold=True)
        sys.exit(PARAMETER_ERROR_EXIT)

    return wrapper


def handle_yaml_errors(func):
    """
    Print nice error messages on yaml parse errors.
    """

    @functools.wraps(func)
    def wrapper(**kwargs):
        try:
            return func(**kwargs)
        except yaml.error.MarkedYAMLError as exc:
            click.secho(u'YAML parser error: %s' % exc, fg='red', bold=True)
        sys.exit(PARAMETER_ERROR_EXIT)

    return wrapper


def handle_hypothesis_errors(func):
    """
    Print nice error messages on refusals raised outside of a scenario run.
    """

    @functools.wraps(func)
    def wrapper(**kwargs):
        try:
            return func(**kwargs)
        except exceptions.HypothesisError as exc:
            utils.sechowrap('Refused: %s' % exc, fg='red', bold=True)
        sys.exit(HYPOTHESIS_ERROR_EXIT)

    return wrapper


def handle_report_errors(func):
    """
    Print nice error messages when reports or operator files cannot be
    written or read.
    """

    @functools.wraps(func)
    def wrapper(**kwargs):
        try:
            return func(**kwargs)
        except exceptions.ReportError as exc:
            click.secho('Cannot write report: %s' % exc, fg='red', bold=True)
        except exceptions.OperatorError as exc:
            click.secho('Invalid operator: %s' % exc, fg='red', bold=True)
        sys.exit(RUNTIME_ERROR_EXIT)

    return wrapper


def handle_all_errors():
    """
    Return a decorator that regroups all the error handling decorators.
    """

    def decorator(func):

        @handle_conf_errors
        @handle_parameter_errors
        @handle_yaml_errors
        @handle_hypothesis_errors
        @handle_report_errors
        @functools.wraps(func)
        def wrapper(**kwargs):
            return func(**kwargs)

        return wrapper

    return decorator
