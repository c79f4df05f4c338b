# Sphinx configuration of the abelat documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
basedir = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..', 'src'))
sys.path.insert(0, basedir)
import abelat


_allowed_special_methods = ["__init__", "__call__"]


def skip(app, what, name, obj, would_skip, options):
    if name in _allowed_special_methods:
        return False
    return would_skip


def setup(app):
    app.connect("autodoc-skip-member", skip)


# -- Project information -----------------------------------------------------

project = 'abelat'
copyright = abelat.__copyright__.replace("Copyright ", "")
author = abelat.__author__
version = abelat.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'sphinx_mdinclude',
    'sphinx.ext.mathjax',
    'sphinx.ext.todo',
]

templates_path = ['_templates']
exclude_patterns = []


# -- Options for HTML output -------------------------------------------------

html_theme = 'karma_sphinx_theme'
html_static_path = ['_static']
latex_engine = 'xelatex'
latex_elements = {
    'preamble': r'\usepackage{amsmath}'
                r'\usepackage{amssymb}'
}
