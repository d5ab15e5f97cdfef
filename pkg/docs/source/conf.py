#
# mvmodal documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

# -- General configuration ------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "numpydoc",
    "sphinx_copybutton",
]

autosummary_generate = True
numpydoc_show_class_members = False

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "mvmodal"
copyright = "2026, mvmodal contributors"
author = "mvmodal contributors"

import mvmodal  # noqa: E402

# The short X.Y version.
version = mvmodal.__version__
# The full version, including alpha/beta/rc tags.
release = mvmodal.__version__

language = "en"
exclude_patterns = []
pygments_style = "sphinx"
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = "sphinx_rtd_theme"
import sphinx_rtd_theme  # noqa: E402

html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = []
html_sidebars = {
    "**": [
        "relations.html",  # needs 'show_related': True theme option to display
        "searchbox.html",
    ]
}
htmlhelp_basename = "mvmodal"

# -- Options for other output ---------------------------------------------

latex_documents = [
    (master_doc, "mvmodal.tex", "mvmodal Documentation", "Contributors", "manual"),
]
man_pages = [(master_doc, "mvmodal", "mvmodal Documentation", [author], 1)]
texinfo_documents = [
    (
        master_doc,
        "mvmodal",
        "mvmodal Documentation",
        author,
        "mvmodal",
        "Finite residuated lattices, many-valued Kripke semantics and modal calculi",
        "Miscellaneous",
    ),
]

default_role = "obj"

intersphinx_mapping = {
    "python": ("https://docs.python.org/3/", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "pydantic": ("https://docs.pydantic.dev/latest/", None),
}
