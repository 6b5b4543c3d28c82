"""Sphinx configuration for the qhpolytope documentation."""

import importlib.metadata
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

project = "qhpolytope"
author = "qhpolytope developers"
copyright = f"2026, {author}"

try:
    release = importlib.metadata.version(project)
except importlib.metadata.PackageNotFoundError:
    release = "0.1.0-dev"
version = ".".join(release.split(".")[:2])

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.intersphinx",
    "sphinx.ext.viewcode",
    "sphinx_autodoc_typehints",
    "myst_parser",
]

exclude_patterns = ["_build"]

# Alcove and momentum map formulas in the Markdown guides use $...$.
myst_enable_extensions = ["colon_fence", "dollarmath", "deflist"]

autosummary_generate = True
autodoc_member_order = "bysource"
autodoc_default_options = {"members": True, "show-inheritance": True}
autodoc_typehints = "description"

# Docstrings are numpy style throughout.
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_use_rtype = False
napoleon_attr_annotations = True

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}

html_theme = "furo"
html_title = f"qhpolytope {release}"
html_theme_options = {
    "source_repository": "https://github.com/gojiplus/qhpolytope/",
    "source_branch": "main",
    "source_directory": "docs/",
}
