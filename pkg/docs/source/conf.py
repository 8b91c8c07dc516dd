# -*- coding: utf-8 -*-
#
# majsim documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import os
import sys


# The package itself is documented from the source tree; numpy and scipy
# are real build requirements because the gate constants are computed at
# import time.
sys.path.insert(0, os.path.abspath('../..'))

# -- General configuration ----------------------------------------------------

# Add any Sphinx extension module names here, as strings. They can be
# extensions coming with Sphinx (named 'sphinx.ext.*') or your custom ones.
extensions = ['sphinx.ext.autodoc', 'sphinx.ext.doctest',
              'sphinx.ext.autosummary',
              'sphinx.ext.intersphinx', 'sphinx.ext.todo', 'numpydoc']

# Add any paths that contain templates here, relative to this directory.
templates_path = ['_templates']

# The suffix of source filenames.
source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = 'majsim'
copyright = '2025, John Evans'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1.0'

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
exclude_patterns = []

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = 'sphinx'

# -- Options for HTML output --------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
html_show_sourcelink = True

# Output file base name for HTML help builder.
htmlhelp_basename = 'majsimdoc'

# -- Options for LaTeX output -------------------------------------------------

latex_elements = {}
latex_documents = [('index', 'majsim.tex', 'majsim Documentation',
                    'John Evans', 'manual'), ]

# -- Options for manual page output -------------------------------------------

man_pages = [
    ('index', 'majsim', 'majsim Documentation',
     ['John Evans'], 1)
]

# -- Options for Texinfo output -----------------------------------------------

texinfo_documents = [('index', 'majsim', 'majsim Documentation',
                      'John Evans', 'majsim',
                      'Majorana braiding circuit simulator.', 'Miscellaneous'), ]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
}

numpydoc_show_class_members = False
