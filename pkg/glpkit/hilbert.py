# coding: utf-8
"""The Hilbert calculus of GLP.

Axioms (i) tautologies over modal atoms, (ii) distribution, (iii) Löb,
(iv) ``<i>p -> [i+1]<i>p`` and (v) ``[i]p -> [i+1]p``; rules modus ponens
and necessitation for ``[0]``.  Besides the checker this module holds the
small proof-building combinators the translators are written with.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from .derivation import Derivation, LeafClassification, Rule
from .errors import ProofBuildError, Report, TautologyLimitError
from .formula import (
    Bot, Box, Formula, Imp, big_conj, conj, implies_all, modal_atoms,
    pretty, top, unique
)

logger = logging.getLogger(__name__)

MAX_TAUTOLOGY_ATOMS = 20


class AxiomKind(Enum):
    TAUTOLOGY = 'i'
    DISTRIBUTION = 'ii'
    LOB = 'iii'
    DIAMOND_UP = 'iv'
    MONOTONE = 'v'


@dataclass
class Judgment(Report):
    """A checked claim ``Sigma; Gamma |- conclusion`` and its witness."""
    sigma: Tuple[Formula, ...] = ()
    gamma: Tuple[Formula, ...] = ()
    conclusion: Optional[Formula] = None
    witness: Optional[Derivation] = None
    classification: LeafClassification = field(default_factory=LeafClassification)

    @property
    def boxed_leaves(self):
        return self.classification.boxed_formulas

    @property
    def local_leaves(self):
        return self.classification.local_formulas


# Axioms

def _truth_columns(n):
    """One bitmask per atom; bit j is the atom's value in assignment j."""
    size = 1 << n
    full = (1 << size) - 1
    columns = []
    for k in range(n):
        run = 1 << k
        column = ((1 << run) - 1) << run
        length = 2 * run
        while length < size:
            column |= column << length
            length *= 2
        columns.append(column & full)
    return columns, full


def _truth_table(f, values, full):
    if f in values:
        return values[f]
    if f == Bot:
        return 0
    left = _truth_table(f.left, values, full)
    right = _truth_table(f.right, values, full)
    return (full ^ left) | right


def is_tautology(f, max_atoms=None):
    """Whether `f` is a classical tautology over its modal atoms.

    All assignments are evaluated at once as bit vectors.

    Raises
    ------
    TautologyLimitError
        When `f` has more than `max_atoms` modal atoms.
    """
    max_atoms = MAX_TAUTOLOGY_ATOMS if max_atoms is None else max_atoms
    atoms = modal_atoms(f)
    if len(atoms) > max_atoms:
        raise TautologyLimitError(
            'Formula has %d modal atoms, the limit is %d' % (len(atoms), max_atoms))
    columns, full = _truth_columns(len(atoms))
    return _truth_table(f, dict(zip(atoms, columns)), full) == full


def _negated(f):
    if isinstance(f, Imp) and f.right == Bot:
        return f.left
    return None


def _structural_axiom(f):
    if not isinstance(f, Imp):
        return None
    left, right = f.left, f.right
    if isinstance(left, Box) and isinstance(right, Imp):
        i, body = left.index, left.body
        if (isinstance(body, Imp) and right.left == Box(i, body.left) and
                right.right == Box(i, body.right)):
            return AxiomKind.DISTRIBUTION
    if isinstance(left, Box) and isinstance(left.body, Imp):
        i, body = left.index, left.body
        if body.left == Box(i, body.right) and right == Box(i, body.right):
            return AxiomKind.LOB
    inner = _negated(left)
    if isinstance(inner, Box) and _negated(inner.body) is not None:
        if right == Box(inner.index + 1, left):
            return AxiomKind.DIAMOND_UP
    if isinstance(left, Box) and right == Box(left.index + 1, left.body):
        return AxiomKind.MONOTONE
    return None


def is_axiom(f, max_atoms=None):
    """The first axiom scheme (i)..(v) that `f` is an instance of, or None."""
    kind = _structural_axiom(f)
    try:
        if is_tautology(f, max_atoms):
            return AxiomKind.TAUTOLOGY
    except TautologyLimitError:
        logger.debug('Skipping tautology test for %s', pretty(f))
    return kind


def distribution(i, a, b):
    return Imp(Box(i, Imp(a, b)), Imp(Box(i, a), Box(i, b)))


def lob(i, a):
    return Imp(Box(i, Imp(Box(i, a), a)), Box(i, a))


def monotone(i, a):
    return Imp(Box(i, a), Box(i + 1, a))


# Checking

def check_inference(d, node_id, report, max_atoms=None):
    """Check the rule at `node_id`; False if the rule is not a Hilbert rule."""
    node = d[node_id]
    rule = node.rule
    if rule in (Rule.AXIOM, Rule.ASSUMPTION):
        if node.children:
            report.add('malformed-inference', '%s node has premises' % rule.value, node_id)
        elif rule == Rule.AXIOM and is_axiom(node.formula, max_atoms) is None:
            report.add('not-an-axiom', '%s is not an axiom' % pretty(node.formula), node_id)
        return True
    if rule == Rule.MP:
        if len(node.children) != 2:
            report.add('malformed-inference', 'mp needs two premises', node_id)
            return True
        minor, major = (d[c].formula for c in node.children)
        expected = Imp(minor, node.formula)
        if major != expected:
            report.add('malformed-inference', 'expected %s, found %s'
                       % (pretty(expected), pretty(major)), node_id)
        return True
    if rule == Rule.NEC:
        if len(node.children) != 1:
            report.add('malformed-inference', 'nec needs one premise', node_id)
            return True
        expected = Box(0, d[node.children[0]].formula)
        if node.formula != expected:
            report.add('malformed-inference', 'expected %s, found %s'
                       % (pretty(expected), pretty(node.formula)), node_id)
        return True
    return False


def classify_hilbert(d):
    """Assumption leaves: boxed iff a nec node lies on the path to the root."""
    local, boxed = [], []
    stack = [(d.root, False)]
    while stack:
        i, under_nec = stack.pop()
        node = d[i]
        if node.rule == Rule.ASSUMPTION:
            (boxed if under_nec else local).append((i, node.formula))
        flag = under_nec or node.rule == Rule.NEC
        stack.extend((c, flag) for c in reversed(node.children))
    return LeafClassification(tuple(local), tuple(boxed), 'hilbert')


def check_hilbert(d, sigma=(), gamma=(), max_atoms=None):
    """Check an ordinary derivation against ``Sigma; Gamma``.

    Parameters
    ----------
    d: Derivation
        A finite tree over the rules ax, asm, mp and nec.
    sigma, gamma: iterable of Formula
        Assumptions allowed under a box and at the root respectively.

    Returns
    -------
    Judgment
    """
    sigma, gamma = unique(sigma), unique(gamma)
    judgment = Judgment(sigma=sigma, gamma=gamma, witness=d)
    d.structure_report(judgment)
    if not judgment.valid:
        return judgment
    for i in d.preorder():
        if not check_inference(d, i, judgment, max_atoms):
            judgment.add('unexpected-rule', '%s is not a Hilbert rule'
                         % d[i].rule.value, i)
    judgment.conclusion = d.conclusion
    judgment.classification = classify_hilbert(d)
    judgment.classification.uncovered(sigma, gamma, judgment)
    return judgment


def assumption_free(d):
    return not any(n.rule in (Rule.ASSUMPTION, Rule.LINK) for n in d.nodes.values())


# Combinators

def build_by_taut(goal, premises=(), max_atoms=None):
    """Derive `goal` from `premises` by one tautology and modus ponens.

    Raises
    ------
    ProofBuildError
        When the conjunction of the premises does not tautologically
        imply `goal`.
    """
    premises = list(premises)
    axiom = implies_all([p.conclusion for p in premises], goal)
    try:
        ok = is_tautology(axiom, max_atoms)
    except TautologyLimitError as ex:
        raise ProofBuildError(str(ex), code=ex.code)
    if not ok:
        raise ProofBuildError('%s does not follow tautologically' % pretty(goal))
    d = Derivation.leaf(axiom, Rule.AXIOM)
    for p in premises:
        d = Derivation.mp(p, d)
    return d


def build_lifted_nec(d, i):
    """From an assumption-free proof of X derive ``[i]X``.

    Necessitation gives ``[0]X``; the instances ``[j]X -> [j+1]X`` of
    axiom (v) raise it to level i.
    """
    result = Derivation.nec(d)
    body = d.conclusion
    for j in range(i):
        result = Derivation.mp(result, Derivation.leaf(monotone(j, body)))
    return result


def _box_mono(d, i):
    imp = d.conclusion
    boxed = build_lifted_nec(d, i)
    return Derivation.mp(boxed, Derivation.leaf(distribution(i, imp.left, imp.right)))


def build_box_mono(d, i=0):
    """From a proof of ``a -> b`` derive ``[0]a -> [0]b``.

    Only level 0 is offered, matching the necessitation rule.
    """
    if i != 0:
        raise ProofBuildError('box monotonicity is only built for level 0, got %d' % i)
    if not assumption_free(d):
        raise ProofBuildError('derivation has assumption leaves', code='has-assumptions')
    if not isinstance(d.conclusion, Imp):
        raise ProofBuildError('%s is not an implication' % pretty(d.conclusion),
                              code='not-an-implication')
    return _box_mono(d, 0)


def build_chain(*derivations):
    """Compose proofs of ``a -> b``, ``b -> c``, ... into ``a -> z``."""
    first, last = derivations[0].conclusion, derivations[-1].conclusion
    return build_by_taut(Imp(first.left, last.right), derivations)


def build_box_conj(formulas, i=0):
    """Derive ``/\\[i]x -> [i](/\\x)`` for the list `formulas`."""
    formulas = list(formulas)
    boxed = [Box(i, f) for f in formulas]
    if not formulas:
        lifted = build_lifted_nec(build_by_taut(top()), i)
        return build_by_taut(Imp(top(), Box(i, top())), [lifted])
    if len(formulas) == 1:
        return build_by_taut(Imp(boxed[0], boxed[0]))
    head, rest = formulas[0], formulas[1:]
    tail = big_conj(rest)
    pair = build_by_taut(Imp(head, Imp(tail, conj(head, tail))))
    step = _box_mono(pair, i)
    k = Derivation.leaf(distribution(i, tail, conj(head, tail)))
    goal = Imp(big_conj(boxed), Box(i, big_conj(formulas)))
    return build_by_taut(goal, [step, k, build_box_conj(rest, i)])


def build_boxed_implication(d, conjuncts, i=0):
    """From ``/\\xs -> y`` (assumption-free) derive ``/\\[i]xs -> [i]y``.

    `conjuncts` is the list xs; the antecedent of `d` must be
    ``big_conj(xs)``.
    """
    conjuncts = list(conjuncts)
    imp = d.conclusion
    if imp.left != big_conj(conjuncts):
        raise ProofBuildError('antecedent is not the conjunction of the given list')
    goal = Imp(big_conj([Box(i, x) for x in conjuncts]), Box(i, imp.right))
    return build_by_taut(goal, [build_box_conj(conjuncts, i), _box_mono(d, i)])


def build_transitivity(f, i=0):
    """Derive ``[i]f -> [i][i]f`` from Löb's axiom.

    With ``s = f & [i]f``: ``[i]f -> [i]([i]s -> s)`` by monotonicity,
    Löb gives ``[i]s`` and monotonicity once more ``[i][i]f``.
    """
    bf = Box(i, f)
    s = conj(f, bf)
    bs = Box(i, s)
    s_to_bf = _box_mono(build_by_taut(Imp(s, f)), i)            # [i]s -> [i]f
    step = build_by_taut(Imp(f, Imp(bs, s)), [s_to_bf])         # f -> ([i]s -> s)
    boxed_step = _box_mono(step, i)                             # [i]f -> [i]([i]s -> s)
    to_bbf = _box_mono(build_by_taut(Imp(s, bf)), i)            # [i]s -> [i][i]f
    return build_by_taut(Imp(bf, Box(i, bf)),
                         [boxed_step, Derivation.leaf(lob(i, s)), to_bbf])
