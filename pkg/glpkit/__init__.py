"""Proof objects and finite semantics for the provability logic GLP."""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.

from ._version import __version__
from .formula import parse, render, pretty
from .errors import GLPError
