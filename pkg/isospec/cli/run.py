import click

from . import decorators
from .. import conf
from .. import reports
from .. import scenarios


# Typed flags and the scenario parameters they set
FLAG_PARAMS = ('dim', 'q', 'J1', 'J2', 'gamma', 'delta')


@click.command()
@click.argument('scenario_name', metavar='SCENARIO')
@click.option('--dim', type=int, help='Truncation dimension.')
@click.option('--q', type=float, help='Quon deformation parameter.')
@click.option('--J1', 'J1', type=float, help='Action variable of the b '
              'sector.')
@click.option('--J2', 'J2', type=float, help='Action variable of the f '
              'sector.')
@click.option('--gamma', type=float, help='Angle variable.')
@click.option('--delta', type=float, help='Vector coherent state offset.')
@click.option('--out', '-o', 'out_path', type=click.Path(dir_okay=False),
              help='Write the report to this file.')
@click.option('--format', '-f', 'fmt', type=click.Choice(reports.FORMATS),
              help='Report format (default: from the configuration, json).')
@click.option('--timing', is_flag=True, help='Include wall times in the '
              'output (also enabled by the configuration).')
@decorators.handle_all_errors()
@decorators.overrides_command
@click.pass_context
def run(context, scenario_name, out_path, fmt, timing, overrides, **flags):
    """
    Run SCENARIO and check its residuals against the registry bounds.

    Exit with 0 if every bound passes, 1 if one fails, 2 on configuration
    errors and 3 when the inputs are refused.
    """
    user_conf = conf.get_conf()
    tol_scale = conf.get_tol_scale(user_conf)
    if fmt is None:
        fmt = conf.get(('report', 'format'), user_conf)
    timing = timing or conf.get(('report', 'timing'), user_conf)
    overrides = build_overrides(scenario_name, flags, overrides, user_conf)
    report = scenarios.run_scenario(scenario_name, overrides, tol_scale)
    click.echo(reports.render_summary(report, show_timing=timing), nl=False)
    if out_path is not None:
        reports.emit_report(report, fmt, out_path, include_timing=timing)
    context.exit(report.exit_code)


def build_overrides(scenario_name, flags, overrides, user_conf):
    """
    Merge the typed flags that were given on the command line over the
    ``--set`` *overrides*.

    The ``[coherent] tail_tol`` setting applies to scenarios with a
    ``tail_tol`` parameter that was not overridden.
    """
    ret = dict(overrides)
    for name in FLAG_PARAMS:
        if flags.get(name) is not None:
            ret[name] = flags[name]
    scenario = scenarios.get_scenario(scenario_name)
    if 'tail_tol' in scenario.params and 'tail_tol' not in ret:
        ret['tail_tol'] = conf.get(('coherent', 'tail_tol'), user_conf)
    return ret
