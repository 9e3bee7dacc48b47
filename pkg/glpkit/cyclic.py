# coding: utf-8
"""Cyclic derivations: checking, leaf classification and back-link elimination."""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import logging

from .derivation import Derivation, LeafClassification, Rule
from .errors import CoverageError, InvalidDerivationError, Report
from .formula import Box, Imp, big_conj, conj, pretty, unique
from .hilbert import (
    Judgment, build_boxed_implication, build_by_taut, build_transitivity,
    check_hilbert, check_inference, lob
)


def check_cyclic(c, max_atoms=None):
    """Check the inferences and the back-link side conditions of `c`.

    A back-linked leaf must point at a strict ancestor carrying the same
    formula, and a nec node must lie on the path from the target down to
    the leaf.

    Returns
    -------
    Report
    """
    report = c.structure_report()
    if not report.valid:
        return report
    for i in c.preorder():
        node = c[i]
        if node.rule == Rule.LINK or node.backlink is not None:
            _check_backlink(c, i, report)
        elif not check_inference(c, i, report, max_atoms):
            report.add('unexpected-rule', '%s is not allowed in a cyclic derivation'
                       % node.rule.value, i)
    return report


def _check_backlink(c, leaf, report):
    node = c[leaf]
    if node.rule != Rule.LINK or node.backlink is None:
        report.add('malformed-inference', 'link leaves need a back-link target', leaf)
        return
    path = c.path(leaf)
    target = node.backlink
    if target not in path[:-1]:
        report.add('backlink-not-ancestor',
                   'target %r is not a strict ancestor' % (target,), leaf)
        return
    if c[target].formula != node.formula:
        report.add('backlink-formula-mismatch', '%s differs from %s'
                   % (pretty(node.formula), pretty(c[target].formula)), leaf)
    segment = path[path.index(target):-1]
    if not any(c[i].rule == Rule.NEC for i in segment):
        report.add('backlink-no-nec', 'no nec between target %r and the leaf'
                   % (target,), leaf)


def _classify(c, root, links, mode='cyclic'):
    # Leaves of `links` are live back-links; any other link leaf counts as
    # an assumption (its back-link has been erased).
    targets = set(c[l].backlink for l in links)
    local, boxed = [], []
    stack = [(root, False, False)]
    while stack:
        i, under_nec, through_target = stack.pop()
        node = c[i]
        if node.is_leaf and node.rule != Rule.AXIOM and i not in links:
            if not under_nec:
                local.append((i, node.formula))
            if under_nec or through_target:
                boxed.append((i, node.formula))
        flags = (under_nec or node.rule == Rule.NEC,
                 through_target or i in targets)
        stack.extend((ch, ) + flags for ch in reversed(node.children))
    return LeafClassification(tuple(local), tuple(boxed), mode)


def _require_valid(c):
    check_cyclic(c).raise_for_violations('cyclic derivation')


def classify_cyclic(c):
    """Split the assumption leaves of `c` into local and boxed ones.

    A leaf is local when no nec node lies on its path to the root and
    boxed when a nec node or a back-link target lies on that path.  A leaf
    below a back-link target without an intermediate nec is both.
    """
    _require_valid(c)
    return _classify(c, c.root, frozenset(c.backlinks))


def judge_cyclic(c, sigma=(), gamma=(), max_atoms=None):
    """Check `c` and its classification against ``Sigma; Gamma``.

    Returns
    -------
    Judgment
    """
    sigma, gamma = unique(sigma), unique(gamma)
    judgment = Judgment(sigma=sigma, gamma=gamma, witness=c)
    judgment.extend(check_cyclic(c, max_atoms))
    if not judgment.valid:
        return judgment
    judgment.conclusion = c.conclusion
    judgment.classification = _classify(c, c.root, frozenset(c.backlinks))
    judgment.classification.uncovered(sigma, gamma, judgment)
    return judgment


def lemma_formula(local, boxed, conclusion):
    """``/\\local & /\\[0]boxed -> conclusion``."""
    return Imp(conj(big_conj(local), big_conj([Box(0, f) for f in boxed])),
               conclusion)


def normalized_formula(local, boxed, conclusion):
    """`lemma_formula` with the empty-conjunction placeholders removed."""
    conjuncts = list(local) + [Box(0, f) for f in boxed]
    if not conjuncts:
        return conclusion
    return Imp(big_conj(conjuncts), conclusion)


class _Eliminator(object):
    """The back-link elimination, one instance per translated derivation."""

    def __init__(self, c, logger):
        self.c = c
        self.logger = logger

    def lemma(self, root, links):
        c = self.c
        node = c[root]
        inside = set(c.preorder(root))
        links = frozenset(l for l in links if l in inside)
        cls = _classify(c, root, links)
        goal = lemma_formula(cls.local_formulas, cls.boxed_formulas, node.formula)

        to_root = sorted(l for l in links if c[l].backlink == root)
        if to_root:
            return self._erase(root, links, to_root[0], goal)
        if node.is_leaf:
            if node.rule == Rule.AXIOM:
                return build_by_taut(goal, [Derivation.leaf(node.formula)])
            if root in links:
                raise InvalidDerivationError(
                    'back-link %r leaves the sub-derivation' % root)
            return build_by_taut(goal)
        if node.rule == Rule.MP:
            minor, major = node.children
            return build_by_taut(goal, [self.lemma(minor, links),
                                        self.lemma(major, links)])
        if node.rule == Rule.NEC:
            return self._box(node.children[0], links, goal)
        raise InvalidDerivationError('unexpected rule %s' % node.rule.value)

    def _box(self, child, links, goal):
        # [0] both sides of the premise's lemma, then collapse [0][0] to [0]
        inner = self.lemma(child, links)
        cls = _classify(self.c, child, links)
        local, boxed = list(cls.local_formulas), list(cls.boxed_formulas)
        conjuncts = local + [Box(0, f) for f in boxed]
        flat = build_by_taut(Imp(big_conj(conjuncts), inner.conclusion.right), [inner])
        boxed_lemma = build_boxed_implication(flat, conjuncts, 0)
        return build_by_taut(goal, [boxed_lemma] +
                             [build_transitivity(f, 0) for f in boxed])

    def _erase(self, root, links, link, goal):
        c = self.c
        self.logger.debug('Erasing back-link %s to node %s', link, root)
        phi = c[root].formula
        rest = links - {link}
        inner = self.lemma(root, rest)
        cls = _classify(c, root, rest)
        local = list(cls.local_formulas)
        boxed = list(unique(f for i, f in cls.boxed if i != link))
        box_phi = Box(0, phi)

        # /\local & /\[0]boxed -> ([0]phi -> phi)
        conjuncts = local + [Box(0, f) for f in boxed]
        step = build_by_taut(Imp(big_conj(conjuncts), Imp(box_phi, phi)), [inner])
        # /\[0]local & /\[0]boxed -> [0]phi, by Löb
        boxed_step = build_boxed_implication(step, conjuncts, 0)
        reflected = build_by_taut(
            Imp(big_conj([Box(0, f) for f in local + boxed]), box_phi),
            [boxed_step, Derivation.leaf(lob(0, phi))] +
            [build_transitivity(f, 0) for f in boxed])
        return build_by_taut(goal, [step, reflected])


def cyclic_to_hilbert(c, normalize=False, logger=None):
    """Translate a cyclic derivation into an assumption-free ordinary one.

    Parameters
    ----------
    c: Derivation
        A valid cyclic derivation of φ.
    normalize: bool, optional
        Conclude `normalized_formula` instead of `lemma_formula`.

    Returns
    -------
    Derivation
        A proof of ``/\\LA & /\\[0]BA -> φ`` where LA and BA are the local
        and boxed assumption formulas of `c`.
    """
    logger = logger or logging.getLogger('glpkit')
    _require_valid(c)
    links = frozenset(c.backlinks)
    logger.debug('Translating a cyclic derivation with %d back-links', len(links))
    raw = _Eliminator(c, logger).lemma(c.root, links)
    if not normalize:
        return raw
    cls = _classify(c, c.root, links)
    target = normalized_formula(cls.local_formulas, cls.boxed_formulas, c.conclusion)
    return build_by_taut(target, [raw])


def eliminate_cycles(c, sigma=(), gamma=(), logger=None):
    """Turn ``Sigma; Gamma |-cycl φ`` into an ordinary judgment.

    Raises
    ------
    CoverageError
        When the classification of `c` is not covered by `sigma`, `gamma`.
    """
    cls = classify_cyclic(c)
    report = cls.uncovered(sigma, gamma)
    if not report.valid:
        raise CoverageError(str(report.violations[0]))
    raw = cyclic_to_hilbert(c, logger=logger)
    premises = [raw]
    premises.extend(Derivation.leaf(f, Rule.ASSUMPTION) for f in cls.local_formulas)
    premises.extend(Derivation.nec(Derivation.leaf(f, Rule.ASSUMPTION))
                    for f in cls.boxed_formulas)
    return check_hilbert(build_by_taut(c.conclusion, premises), sigma, gamma)
