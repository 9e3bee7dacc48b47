# coding: utf-8
"""glpkit command handlers: the operations behind the ``glpk`` verbs.

Every translation re-checks its own output and raises
`InvalidDerivationError` when the check fails.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import logging
import os

from .algebra import check_glp, is_box_founded
from .cyclic import classify_cyclic, cyclic_to_hilbert, judge_cyclic
from .errors import BudgetError, InvalidDerivationError
from .hilbert import Judgment, assumption_free, check_hilbert, classify_hilbert
from .infinitary import (
    bisimilar, check_inf, check_omega, classify_inf, classify_omega,
    inf_to_omega, omega_to_inf, ravel, unravel
)
from .neighbourhood import DEFAULT_SEARCH_BUDGET, search_countermodel


def get_search_budget():
    """Get the countermodel search budget.

    The ``GLPK_BUDGET`` environment variable overrides the default.
    """
    value = os.environ.get('GLPK_BUDGET')
    if not value:
        return DEFAULT_SEARCH_BUDGET
    try:
        budget = int(value)
    except ValueError:
        raise BudgetError('GLPK_BUDGET must be an integer, got %r' % value,
                          code='bad-budget')
    if budget < 1:
        raise BudgetError('GLPK_BUDGET must be positive', code='bad-budget')
    return budget


def _regular(pf):
    # graphs are folded into a cyclic presentation first
    if pf.kind == 'graph':
        return unravel(ravel(pf.derivation))
    return unravel(pf.derivation)


def check_proof(pf, sigma=None, gamma=None):
    """Check a proof file against ``Sigma; Gamma``.

    Parameters
    ----------
    pf: ProofFile
    sigma, gamma: iterable of Formula, optional
        Override the lists stored in the file.

    Returns
    -------
    Judgment
    """
    sigma = pf.sigma if sigma is None else sigma
    gamma = pf.gamma if gamma is None else gamma
    d = pf.derivation
    if pf.kind == 'hilbert':
        return check_hilbert(d, sigma, gamma)
    if pf.kind == 'cyclic':
        return judge_cyclic(d, sigma, gamma)
    if pf.kind == 'omega':
        return check_omega(d, sigma, gamma)
    try:
        r = _regular(pf)
    except InvalidDerivationError as ex:
        judgment = Judgment(sigma=tuple(sigma), gamma=tuple(gamma), witness=d)
        judgment.extend(ex.report)
        return judgment
    return check_inf(r, sigma, gamma)


def classify_proof(pf):
    """The local and boxed assumption leaves of a proof file."""
    if pf.kind == 'hilbert':
        return classify_hilbert(pf.derivation)
    if pf.kind == 'cyclic':
        return classify_cyclic(pf.derivation)
    if pf.kind == 'omega':
        return classify_omega(pf.derivation)
    return classify_inf(_regular(pf))


def _require(judgment, what):
    if not judgment.valid:
        raise InvalidDerivationError(
            'the %s fails its own check: %s' % (what, judgment.violations[0]),
            report=judgment, code='self-check')
    return judgment


def to_hilbert(pf, normalize=False, logger=None):
    """Translate a cyclic proof file into an assumption-free derivation."""
    logger = logger or logging.getLogger('glpkit')
    result = cyclic_to_hilbert(pf.derivation, normalize=normalize, logger=logger)
    judgment = _require(check_hilbert(result), 'translated derivation')
    if not assumption_free(result):
        raise InvalidDerivationError('the translated derivation has assumptions',
                                     code='self-check')
    logger.info('Translated into %d nodes', len(result))
    return result, judgment


def ravel_graph(pf, logger=None):
    """Fold a graph file into a cyclic derivation of the same unravelling."""
    logger = logger or logging.getLogger('glpkit')
    result = ravel(pf.derivation)
    judge_cyclic(result).raise_for_violations('ravelled derivation')
    if not bisimilar(result, pf.derivation):
        raise InvalidDerivationError('the ravelled derivation unfolds differently',
                                     code='self-check')
    logger.info('Ravelled into %d nodes with %d back-links',
                len(result), len(result.backlinks))
    return result


def to_omega(pf, sigma=None, gamma=None, logger=None):
    """Translate a cyclic or graph file into an ω-derivation."""
    sigma = pf.sigma if sigma is None else sigma
    gamma = pf.gamma if gamma is None else gamma
    logger = logger or logging.getLogger('glpkit')
    result = inf_to_omega(_regular(pf), sigma, gamma, logger=logger)
    judgment = _require(check_omega(result, sigma, gamma), 'ω-derivation')
    return result, judgment


def to_inf(pf, sigma=None, gamma=None, logger=None):
    """Translate an ω file into a cyclic presentation of an ∞-derivation."""
    sigma = pf.sigma if sigma is None else sigma
    gamma = pf.gamma if gamma is None else gamma
    logger = logger or logging.getLogger('glpkit')
    r = omega_to_inf(pf.derivation, logger=logger)
    judgment = _require(check_inf(r, sigma, gamma), '∞-derivation')
    return r.presentation, judgment


def check_algebra(a):
    """`check_glp` plus box-foundedness of every level."""
    report = check_glp(a)
    for i in range(a.levels):
        if not is_box_founded(a, i):
            report.add('not-box-founded', 'level %d is not box-founded' % i, i)
    return report


def search(sigma, gamma, phi, max_points, max_levels=1, mode='glocal',
           logger=None):
    """`search_countermodel` with the configured budget."""
    return search_countermodel(sigma, gamma, phi, max_points, max_levels,
                               mode=mode, budget=get_search_budget(),
                               logger=logger)
