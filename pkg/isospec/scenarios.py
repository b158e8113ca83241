"""
The scenario registry and the machinery that runs scenarios into
:class:`~isospec.reports.RunReport` objects.

Scenarios are declared in ``scenarios.yaml``: each one names a set of
default parameters, its own parameter overrides and the bounds its
residuals must satisfy. The checks themselves live in
:mod:`isospec.runners`.
"""

import copy
import logging
import os.path as op
import time

import numpy as np
import yaml

from . import exceptions
from . import intertwining
from . import reports
from . import runners
from . import utils
from .operators import InteriorSpec


logger = logging.getLogger(__name__)

THIS_DIR = op.dirname(__file__)
REGISTRY_FNAME = op.join(THIS_DIR, 'scenarios.yaml')


class Scenario(object):
    """
    A registered scenario.

    :attr params: the default parameters, merged over the named defaults set
    :attr bounds: residual name to :class:`~isospec.reports.Bound`
    :attr limits: parameter name to a ``{min: n, below: other}`` mapping
    """

    def __init__(self, name, anchor, description, params, bounds,
                 defaults_name=None, limits=None):
        self.name = name
        self.anchor = anchor
        self.description = description
        self.params = params
        self.bounds = bounds
        self.defaults_name = defaults_name
        self.limits = limits or {}

    def __repr__(self):
        return '<Scenario %s>' % self.name

    def resolve(self, overrides=None):
        """
        Return the parameters of a run, with *overrides* coerced to the types
        of the defaults.

        Raise :class:`~isospec.exceptions.UnknownParameter` for keys the
        scenario does not have and
        :class:`~isospec.exceptions.InvalidParameter` for values that do not
        fit.
        """
        params = copy.deepcopy(self.params)
        for key, value in sorted((overrides or {}).items()):
            if key not in params:
                raise exceptions.UnknownParameter(self.name, key)
            params[key] = coerce_value(key, params[key], value)
        check_limits(params, self.limits)
        return params

    def catalog_entry(self):
        return {
            'name': self.name,
            'anchor': self.anchor,
            'description': self.description,
            'params': self.params,
            'bounds': sorted(self.bounds),
        }


def _type_name(default):
    if isinstance(default, bool):
        return 'a boolean'
    if isinstance(default, int):
        return 'an integer'
    if isinstance(default, float):
        return 'a number'
    if isinstance(default, list):
        return 'a list'
    return 'a string'


def coerce_value(key, default, value):
    """
    Coerce *value* to the type of *default*.

    Integers are accepted where floats are expected, and list items follow
    the type of the default's first item.

    >>> coerce_value('dim', 40, 60)
    60
    >>> coerce_value('q', 0.5, 1)
    1.0
    >>> coerce_value('times', [0.1], [1, 2.5])
    [1.0, 2.5]
    """
    if default is None:
        return value
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
    elif isinstance(default, int):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
    elif isinstance(default, float):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif isinstance(default, list):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            value = [value]
        if isinstance(value, list):
            if not default:
                return value
            return [coerce_value(key, default[0], item) for item in value]
    elif isinstance(value, str):
        return value
    raise exceptions.InvalidParameter(key, value, _type_name(default))


def check_limits(params, limits):
    """
    Raise :class:`~isospec.exceptions.InvalidParameter` if a parameter of
    *params* falls outside its entry in *limits*.

    >>> check_limits({'dim': 40, 'reverse_level': 4},
    ...              {'reverse_level': {'min': 0, 'below': 'dim'}})
    """
    for key, limit in sorted(limits.items()):
        if key not in params:
            continue
        value = params[key]
        minimum = limit.get('min')
        if minimum is not None and value < minimum:
            raise exceptions.InvalidParameter(
                key, value, 'an integer >= %d' % minimum
            )
        other = limit.get('below')
        if other in params and value >= params[other]:
            raise exceptions.InvalidParameter(
                key, value, 'an integer below %s=%d' % (other, params[other])
            )


def parse_registry(fp):
    """
    Parse the registry in file object *fp*.

    Return a dict of :class:`Scenario` objects indexed by name.
    """
    data = yaml.safe_load(fp) or {}
    defaults = data.get('defaults') or {}
    limits = data.get('limits') or {}
    return {name: _normalize_scenario(name, definition, defaults, limits)
            for name, definition in (data.get('scenarios') or {}).items()}


def _normalize_scenario(name, definition, defaults, limits):
    defaults_name = definition.get('defaults')
    if defaults_name is not None and defaults_name not in defaults:
        raise exceptions.InvalidParameter(
            'defaults', defaults_name, 'one of %s' % ', '.join(defaults)
        )
    params = copy.deepcopy(defaults.get(defaults_name) or {})
    params.update(definition.get('params') or {})
    bounds = {key: reports.Bound.from_spec(key, spec)
              for key, spec in (definition.get('bounds') or {}).items()}
    return Scenario(name, definition['anchor'], definition['description'],
                    params, bounds, defaults_name, limits)


def get_registry(fname=REGISTRY_FNAME):
    with open(fname) as fp:
        return parse_registry(fp)


def get_scenario(name, registry=None):
    if registry is None:
        registry = get_registry()
    try:
        return registry[name]
    except KeyError:
        raise exceptions.UnknownScenario(name)


def list_scenarios(registry=None):
    """
    Return the catalog entries of all registered scenarios, ordered by name.
    """
    if registry is None:
        registry = get_registry()
    return [registry[name].catalog_entry() for name in sorted(registry)]


def parse_overrides(specs):
    """
    Parse ``KEY=VALUE`` override strings into a dict.

    Values are parsed as YAML. Dots in keys target nested values.

    >>> parse_overrides(['dim=60', 'times=[1, 2]'])
    {'dim': 60, 'times': [1, 2]}
    """
    ret = {}
    for spec in specs:
        path, sep, raw = spec.partition('=')
        if sep != '=' or not path:
            raise exceptions.MalformedOverride(spec)
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError:
            raise exceptions.MalformedOverride(spec)
        utils.set_path_in_dict(ret, path.split('.'), value, inplace=True)
    return ret


def _execute(report, func, *args):
    """
    Run *func*, turning refusals and numerical errors into the report's
    status. Parameter errors propagate.
    """
    start = time.perf_counter()
    try:
        func(*args)
    except exceptions.ParameterError:
        raise
    except exceptions.HypothesisError as exc:
        logger.info('%s refused: %s', report.scenario, exc)
        report.refuse(exc)
    except exceptions.IsospecError as exc:
        logger.error('%s failed: %s', report.scenario, exc)
        report.fail(exc)
    except (np.linalg.LinAlgError, ValueError, IndexError) as exc:
        logger.exception('%s failed', report.scenario)
        report.fail(exc)
    report.wall_time = time.perf_counter() - start


def run_scenario(name, overrides=None, tol_scale=1.0, registry=None):
    """
    Run scenario *name* with parameter *overrides*.

    Return a :class:`~isospec.reports.RunReport` whose status is ``'ok'``
    when every bound passes, ``'failed'`` when a residual misses its bound,
    ``'refused'`` when the inputs violate a hypothesis and ``'error'`` on
    other numerical errors. Configuration mistakes raise
    :class:`~isospec.exceptions.ParameterError`.
    """
    scenario = get_scenario(name, registry)
    params = scenario.resolve(overrides)
    try:
        runner = runners.RUNNERS[name]
    except KeyError:
        raise exceptions.UnknownScenario(name)
    report = reports.RunReport(name, scenario.anchor, config=params,
                               tol_scale=tol_scale)
    tolerances = intertwining.Tolerances(scale=tol_scale)
    logger.debug('running %s with %s', name, params)
    _execute(report, runner, params, report, tolerances)
    logger.debug('%s finished in %.3fs: %s', name, report.wall_time,
                 report.status)
    return report.evaluate(scenario.bounds)


_RESIDUAL_TOLS = intertwining.Tolerances.RESIDUALS
VERIFY_BOUNDS = {
    'alpha_rel': reports.Bound('max', _RESIDUAL_TOLS['alpha']),
    'beta_rel': reports.Bound('max', _RESIDUAL_TOLS['beta']),
    'beta_adjoint_rel': reports.Bound('max', _RESIDUAL_TOLS['beta']),
    'n1_commutation': reports.Bound('max',
                                     _RESIDUAL_TOLS['n1_commutation']),
    'gamma_rel': reports.Bound('max', _RESIDUAL_TOLS['gamma']),
}


def verify_pair(h1, x1, margin=0, kernel='refuse', tol_scale=1.0):
    """
    Build the partner of a user supplied ``(h1, x1)`` pair and check its
    properties on the interior with the given *margin*.
    """
    interior = InteriorSpec(margin)
    report = reports.RunReport('verify', 'user-supplied pair',
                               config={'margin': margin, 'kernel': kernel},
                               dims={'dim': h1.dim}, tol_scale=tol_scale)
    tolerances = intertwining.Tolerances(scale=tol_scale)
    intertwining.check_kernel_policy(kernel)
    _execute(report, runners.verify_user_pair, h1, x1, interior, kernel,
             report, tolerances)
    return report.evaluate(VERIFY_BOUNDS)
