# coding: utf-8
"""Errors and validity reports shared by the checkers."""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


class GLPError(ValueError):
    """Base class of every domain error.

    Parameters
    ----------
    message: str
        The human readable message.
    code: str, optional
        A stable identifier of the failure, used by the command line
        reports and by tests.
    """
    code = 'glp-error'

    def __init__(self, message, code=None):
        super(GLPError, self).__init__(message)
        if code is not None:
            self.code = code


class FormulaSyntaxError(GLPError):
    code = 'syntax-error'

    def __init__(self, message, position=None, code=None):
        if position is not None:
            message = '%s (at position %d)' % (message, position)
        super(FormulaSyntaxError, self).__init__(message, code)
        self.position = position


class TautologyLimitError(GLPError):
    code = 'atom-limit'


class ProofBuildError(GLPError):
    code = 'build-precondition'


class InvalidDerivationError(GLPError):
    code = 'invalid-derivation'

    def __init__(self, message, report=None, code=None):
        super(InvalidDerivationError, self).__init__(message, code)
        self.report = report


class CoverageError(GLPError):
    code = 'uncovered-assumption'


class AlgebraError(GLPError):
    code = 'invalid-algebra'


class NotBoxFoundedError(AlgebraError):
    code = 'not-box-founded'


class FilterError(AlgebraError):
    code = 'invalid-filter'


class TopologyError(GLPError):
    code = 'invalid-topology'


class FrameError(TopologyError):
    code = 'not-a-frame'


class BudgetError(GLPError):
    code = 'budget-exceeded'


class FormatError(GLPError):
    code = 'format-error'


@dataclass(frozen=True)
class Violation:
    """A single failed condition found by a checker."""
    code: str
    message: str
    node: Optional[object] = None

    def __str__(self):
        if self.node is None:
            return '%s: %s' % (self.code, self.message)
        return '%s at %s: %s' % (self.code, self.node, self.message)


@dataclass
class Report:
    """The outcome of a check: valid iff no violations were recorded."""
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self):
        return not self.violations

    @property
    def codes(self):
        return [v.code for v in self.violations]

    def add(self, code, message, node=None):
        self.violations.append(Violation(code, message, node))

    def extend(self, other):
        self.violations.extend(other.violations)

    def raise_for_violations(self, what='derivation'):
        if self.violations:
            first = self.violations[0]
            raise InvalidDerivationError(
                'Invalid %s: %s' % (what, first), report=self, code=first.code)

    def __bool__(self):
        return self.valid
