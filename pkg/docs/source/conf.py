# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import os
import sys

# Add the project's src directory so Sphinx autodoc can import the cvmfe package
sys.path.insert(
    0,
    os.path.abspath(
        os.path.join(
            os.path.dirname(__file__),
            '..',  # up from source/
            '..',  # up from docs/
            'src',
        )
    )
)

# -- Project information -----------------------------------------------------

project = 'cvmfe'
copyright = '2026, cvmfe developers'
author = 'cvmfe developers'
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.napoleon',
    'myst_parser',
]

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

templates_path: list[str] = ['_templates']
exclude_patterns: list[str] = []

# -- Mock imports to avoid autodoc import errors for missing dependencies
autodoc_mock_imports = ["numpy", "scipy", "pandas", "psutil", "pythonjsonlogger"]

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
