import json

import click

from . import decorators
from .. import conf
from .. import exceptions
from .. import intertwining
from .. import reports
from .. import scenarios
from ..operators import Operator


@click.command()
@click.option('--h1', 'h1_file', type=click.File(), required=True,
              help='JSON file holding the starting hamiltonian.')
@click.option('--x1', 'x1_file', type=click.File(), required=True,
              help='JSON file holding the intertwining operator.')
@click.option('--margin', type=click.IntRange(min=0), default=0,
              show_default=True,
              help='Number of trailing basis vectors excluded from the '
              'checks.')
@click.option('--kernel', type=click.Choice(intertwining.KERNEL_POLICIES),
              default='refuse', show_default=True,
              help='What to do when N1 vanishes on leading basis vectors.')
@click.option('--out', '-o', 'out_path', type=click.Path(dir_okay=False),
              help='Write the report, partner included, to this file.')
@click.option('--format', '-f', 'fmt', type=click.Choice(reports.FORMATS),
              help='Report format (default: from the configuration, json).')
@decorators.handle_all_errors()
@click.pass_context
def verify(context, h1_file, x1_file, margin, kernel, out_path, fmt):
    """
    Build the partner of a user supplied (h1, x1) pair and check its
    properties.

    Operators are read from JSON objects with "dim", "entries" (row-major
    [re, im] pairs) and an optional "band".
    """
    user_conf = conf.get_conf()
    tol_scale = conf.get_tol_scale(user_conf)
    if fmt is None:
        fmt = conf.get(('report', 'format'), user_conf)
    h1 = load_operator(h1_file)
    x1 = load_operator(x1_file)
    report = scenarios.verify_pair(h1, x1, margin=margin, kernel=kernel,
                                   tol_scale=tol_scale)
    click.echo(reports.render_summary(report), nl=False)
    if out_path is not None:
        reports.emit_report(report, fmt, out_path)
    context.exit(report.exit_code)


def load_operator(fp):
    """
    Read an :class:`~isospec.operators.Operator` from file object *fp*.
    """
    try:
        data = json.load(fp)
    except ValueError as exc:
        raise exceptions.OperatorError('%s is not valid JSON: %s'
                                       % (fp.name, exc))
    return Operator.from_dict(data)
