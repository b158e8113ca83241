import click

from . import decorators
from .. import scenarios
from .. import templates


@click.command('list')
@click.option('--verbose', '-v', is_flag=True, help='Also show descriptions '
              'and the bounded residuals.')
@decorators.handle_all_errors()
def list_scenarios(verbose):
    """
    List registered scenarios with their references.
    """
    click.echo(templates.render('catalog.txt', {
        'scenarios': scenarios.list_scenarios(),
        'verbose': verbose,
    }), nl=False)
