#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# tsalloc documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath(".."))

import tsalloc  # noqa: E402

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.viewcode",
    "sphinx_autodoc_typehints",
    "sphinx.ext.mathjax",
    "sphinx_rtd_theme",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = u"tsalloc"
copyright = u"2019, the tsalloc developers"
author = u"the tsalloc developers"
version = tsalloc.__version__
release = tsalloc.__version__

language = None
exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]
pygments_style = "sphinx"

html_theme = "sphinx_rtd_theme"
html_static_path = []
htmlhelp_basename = "tsallocdoc"

latex_documents = [(master_doc, "tsalloc.tex", u"tsalloc Documentation", author, "manual")]
man_pages = [(master_doc, "tsalloc", u"tsalloc Documentation", [author], 1)]
texinfo_documents = [
    (
        master_doc,
        "tsalloc",
        u"tsalloc Documentation",
        author,
        "tsalloc",
        "Online resource allocation with two-sided constraints.",
        "Miscellaneous",
    )
]
