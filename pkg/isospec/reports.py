"""
Run reports: residual maps checked against registry bounds, serialized to
JSON or CSV.
"""

import csv
import json
import logging
import math
import os.path as op

from . import exceptions
from . import templates
from . import utils


logger = logging.getLogger(__name__)

STATUSES = ('ok', 'failed', 'refused', 'error')
EXIT_CODES = {'ok': 0, 'failed': 1, 'refused': 3, 'error': 1}
FORMATS = ('json', 'csv')
CSV_COLUMNS = ('name', 'value', 'bound_kind', 'bound', 'passed')


class Bound(object):
    """
    A registry bound on a residual.

    ``max`` bounds are multiplied by the tolerance scale unless *scaled* is
    false; ``min`` bounds never are.
    """

    KINDS = ('max', 'min')

    def __init__(self, kind, value, scaled=True):
        if kind not in self.KINDS:
            raise exceptions.InvalidParameter('bound', kind,
                                              'one of max, min')
        self.kind = kind
        self.value = float(value)
        self.scaled = scaled and kind == 'max'

    def __repr__(self):
        return '<Bound %s %r>' % (self.kind, self.value)

    @classmethod
    def from_spec(cls, name, spec):
        """
        Build a bound from its registry form, ``{max: x}`` or ``{min: x}``
        with an optional ``scaled`` flag.
        """
        try:
            spec = dict(spec)
            scaled = bool(spec.pop('scaled', True))
            (kind, value), = spec.items()
        except (TypeError, ValueError):
            raise exceptions.InvalidParameter(
                name, spec, 'a bound like {max: x} or {min: x}'
            )
        return cls(kind, value, scaled)

    def effective(self, tol_scale=1.0):
        if self.scaled:
            return self.value * tol_scale
        return self.value

    def check(self, value, tol_scale=1.0):
        """
        Return True if *value* satisfies the bound. Missing and NaN values
        never do.
        """
        if value is None:
            return False
        value = float(value)
        if math.isnan(value):
            return False
        if self.kind == 'max':
            return value <= self.effective(tol_scale)
        return value >= self.value


class RunReport(object):
    """
    The outcome of a scenario run.

    :attr residuals: residual name to float
    :attr bounds: residual name to ``{"max": x}`` or ``{"min": x}``, with
        the tolerance scale applied
    :attr passed: residual name to bool
    :attr facts: non-numeric results (classifications, ``cyclic_at``...)
    :attr records: table name to a list of row dicts
    :attr operators: operator name to its serialized form
    """

    def __init__(self, scenario, anchor, config=None, status='ok', error=None,
                 dims=None, tol_scale=1.0):
        self.scenario = scenario
        self.anchor = anchor
        self.config = dict(config or {})
        self.status = status
        self.error = error
        self.dims = dict(dims or {})
        self.tol_scale = tol_scale
        self.residuals = {}
        self.bounds = {}
        self.passed = {}
        self.facts = {}
        self.records = {}
        self.operators = {}
        self.wall_time = None

    def __repr__(self):
        return '<RunReport %s %s>' % (self.scenario, self.status)

    def add_residual(self, name, value):
        self.residuals[name] = None if value is None else float(value)

    def add_residuals(self, mapping):
        for name, value in mapping.items():
            self.add_residual(name, value)

    def add_fact(self, name, value):
        self.facts[name] = value

    def add_records(self, name, rows):
        self.records[name] = [dict(row) for row in rows]

    def add_operator(self, name, op):
        self.operators[name] = op.to_dict()

    def refuse(self, exc):
        self.status = 'refused'
        self.error = str(exc)

    def fail(self, exc):
        self.status = 'error'
        self.error = str(exc)

    def evaluate(self, bounds):
        """
        Check the residuals against *bounds*, a mapping of names to
        :class:`Bound`, and settle the status of a completed run.
        """
        for name, bound in sorted(bounds.items()):
            value = self.residuals.get(name)
            self.bounds[name] = {bound.kind: bound.effective(self.tol_scale)}
            self.passed[name] = bound.check(value, self.tol_scale)
            if value is None and self.status == 'ok':
                logger.warning('%s: no residual "%s" was computed',
                               self.scenario, name)
        if self.status == 'ok' and not all(self.passed.values()):
            self.status = 'failed'
        return self

    @property
    def failures(self):
        return sorted(name for name, ok in self.passed.items() if not ok)

    @property
    def exit_code(self):
        return EXIT_CODES[self.status]

    def to_dict(self, include_timing=False):
        ret = {
            'scenario': self.scenario,
            'anchor': self.anchor,
            'status': self.status,
            'error': self.error,
            'config': self.config,
            'residuals': self.residuals,
            'bounds': self.bounds,
            'passed': self.passed,
            'dims': self.dims,
            'facts': self.facts,
            'records': self.records,
            'operators': self.operators,
        }
        if include_timing:
            ret['wall_time'] = self.wall_time
        return utils.to_builtin(ret)


def format_float(value):
    """
    >>> format_float(0.1)
    '0.10000000000000001'
    >>> format_float(None)
    ''
    """
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


def render_json(report, include_timing=False):
    return json.dumps(report.to_dict(include_timing), sort_keys=True,
                      indent=2) + '\n'


def residual_rows(report):
    """
    One row per residual or bound, sorted by name.
    """
    rows = []
    for name in sorted(set(report.residuals) | set(report.bounds)):
        bound = report.bounds.get(name, {})
        (kind, value), = bound.items() if bound else ((None, None),)
        rows.append({
            'name': name,
            'value': report.residuals.get(name),
            'bound_kind': kind,
            'bound': value,
            'passed': report.passed.get(name),
        })
    return rows


def _write_csv(path, columns, rows):
    with open(path, 'w', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_float(row.get(c)) for c in columns])


def record_path(path, table):
    stem, ext = op.splitext(path)
    return '%s-%s%s' % (stem, table, ext or '.csv')


def emit_report(report, fmt, path, include_timing=False):
    """
    Write *report* to *path* in *fmt* (``'json'`` or ``'csv'``).

    CSV reports write the residual table to *path* and each record table to
    a sibling ``<stem>-<table>.csv`` file. Return the list of written paths.

    Raise :class:`~isospec.exceptions.ReportError` if a file cannot be
    written.
    """
    if fmt not in FORMATS:
        raise exceptions.InvalidParameter('format', fmt,
                                          'one of %s' % ', '.join(FORMATS))
    written = []
    try:
        if fmt == 'json':
            with open(path, 'w') as fp:
                fp.write(render_json(report, include_timing))
            written.append(path)
        else:
            _write_csv(path, CSV_COLUMNS, residual_rows(report))
            written.append(path)
            data = report.to_dict()
            for table, rows in sorted(data['records'].items()):
                columns = sorted(set().union(*[set(r) for r in rows])) \
                    if rows else []
                table_path = record_path(path, table)
                _write_csv(table_path, columns, rows)
                written.append(table_path)
    except (IOError, OSError) as exc:
        raise exceptions.ReportError(path, exc.strerror or str(exc))
    logger.debug('wrote %s', ', '.join(written))
    return written


def summary_rows(report):
    rows = []
    for row in residual_rows(report):
        if row['bound_kind'] is None:
            verdict = ''
        else:
            verdict = '  (%s %s: %s)' % (
                row['bound_kind'], templates.format_value(row['bound']),
                'pass' if row['passed'] else 'FAIL')
        rows.append({'name': row['name'], 'value': row['value'],
                     'verdict': verdict})
    return rows


def render_summary(report, show_timing=False):
    return templates.render('report.txt', {
        'report': report,
        'rows': summary_rows(report),
        'show_timing': show_timing and report.wall_time is not None,
    })
