import os.path as op

import jinja2

from . import utils


TEMPLATES_DIR = op.join(op.dirname(__file__), 'templates')


def format_value(value):
    """
    Format a residual for text output.

    >>> format_value(1.5e-13)
    '1.5e-13'
    >>> format_value(None)
    'n/a'
    """
    if value is None:
        return 'n/a'
    if isinstance(value, float):
        return '%.3g' % value
    return str(value)


def get_environment(templates_dir=TEMPLATES_DIR):
    env = jinja2.Environment(loader=jinja2.FileSystemLoader(templates_dir),
                             undefined=jinja2.StrictUndefined,
                             keep_trailing_newline=True,
                             trim_blocks=True,
                             lstrip_blocks=True)
    env.filters['value'] = format_value
    return env


def render(template, context, context_overrides={},
           templates_dir=TEMPLATES_DIR):
    """
    Render one of the packaged text templates.

    :param template: the template name, relative to *templates_dir*
    :param context: a dict containing the variables passed to the template
    :param context_overrides:
        a mapping that will be deep merged in the final context
    """
    env = get_environment(templates_dir)
    context = utils.deep_merge(context, context_overrides)
    return env.get_template(template).render(**context)
