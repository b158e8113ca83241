# Isospec documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

from isospec import __version__  # noqa: E402

extensions = ['sphinx.ext.autodoc']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Isospec'
copyright = u'2026, the isospec developers'
author = u'the isospec developers'
version = __version__
release = __version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'
html_theme = 'alabaster'
htmlhelp_basename = 'Isospecdoc'

latex_documents = [
    (master_doc, 'Isospec.tex', u'Isospec Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'isospec', u'Isospec Documentation', [author], 1),
]
