"""
Sphinx configuration for fraclab documentation.
"""

import sys
from datetime import datetime
from pathlib import Path

# Add the project root to the path so we can import the package
sys.path.insert(0, str(Path(__file__).parent.parent))

# -- Project information -----------------------------------------------------

project = 'fraclab'
copyright = f'{datetime.now().year}, fraclab developers'
author = 'fraclab developers'

# The full version, including alpha/beta/rc tags
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.autosummary',
    'sphinx_autodoc_typehints',
    'myst_parser',
]

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', 'README.md']

pygments_style = 'sphinx'

todo_include_todos = False

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'

html_theme_options = {
    'navigation_depth': 4,
    'collapse_navigation': False,
    'sticky_navigation': True,
    'includehidden': True,
    'titles_only': False,
    'prev_next_buttons_location': 'both',
}

# -- Extension configuration -------------------------------------------------

# AutoDoc options
autodoc_member_order = 'groupwise'
autodoc_typehints = 'description'
autoclass_content = 'both'

# Napoleon settings
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_init_with_doc = True
napoleon_include_private_with_doc = False

# Intersphinx mappings
intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

# MyST Parser settings
myst_enable_extensions = [
    'colon_fence',
    'deflist',
    'dollarmath',
]

master_doc = 'index'

html_sidebars = {
    '**': [
        'globaltoc.html',
        'searchbox.html',
    ]
}
