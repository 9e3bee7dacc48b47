# coding: utf-8
"""Deterministic corpora of derivations, algebras and models.

The generators are sound by construction; the test-suite checks the
proof objects against the algebras and models built here.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import kripke_algebra
from .derivation import Derivation, ProofNode, Rule
from .formula import Box, Imp, Var, parse
from .hilbert import lob, monotone
from .neighbourhood import Model, glp_spaces, space_to_frame


@dataclass(frozen=True)
class Shape:
    """A proof tree written top-down.

    `name` labels a node so that a ``link`` leaf further down can point
    back at it through `link`.
    """
    formula: object
    rule: Rule
    children: Tuple['Shape', ...] = ()
    name: Optional[str] = None
    link: Optional[str] = None


def build(shape):
    """Number `shape` in pre-order and resolve its back-links."""
    ids = {}
    order = []
    stack = [shape]
    while stack:
        s = stack.pop()
        order.append(s)
        stack.extend(reversed(s.children))
    position = dict((id(s), k) for k, s in enumerate(order))
    for s in order:
        if s.name is not None:
            ids[s.name] = position[id(s)]
    nodes = {}
    for k, s in enumerate(order):
        nodes[k] = ProofNode(
            s.formula, s.rule, tuple(position[id(ch)] for ch in s.children),
            None if s.link is None else ids[s.link])
    return Derivation(nodes, 0)


def _leaf(formula, rule=Rule.ASSUMPTION):
    return Shape(formula, rule)


def _link(formula, target):
    return Shape(formula, Rule.LINK, link=target)


def _nec(premise):
    return Shape(Box(0, premise.formula), Rule.NEC, (premise,))


def _mp(formula, minor, major, name=None):
    return Shape(formula, Rule.MP, (minor, major), name)


def _reflection(phi, name):
    # phi from [0]phi (back-link) and the assumption [0]phi -> phi
    return _mp(phi, _nec(_link(phi, name)), _leaf(Imp(Box(0, phi), phi)), name)


def reflection(phi):
    """The one-loop derivation of φ from the assumption ``[0]φ -> φ``."""
    return build(_reflection(phi, 'root'))


def ladder(phi, psi):
    """φ and ψ alternate along the loop, each through a nec."""
    inner = _mp(psi, _nec(_link(phi, 'root')), _leaf(Imp(Box(0, phi), psi)))
    return build(_mp(phi, _nec(inner), _leaf(Imp(Box(0, psi), phi)), 'root'))


def multi_link(phi, count):
    """`count` back-links to the root, peeled off one modus ponens each."""
    box_phi = Box(0, phi)
    goal = phi
    goals = []
    for _ in range(count):
        goals.append(goal)
        goal = Imp(box_phi, goal)
    node = _leaf(goal)
    for g in reversed(goals):
        node = _mp(g, _nec(_link(phi, 'root')), node)
    return build(Shape(node.formula, node.rule, node.children, 'root'))


def inner_link(p, q):
    """q from p and ``p -> q``, with the loop on the inner node for p."""
    return build(_mp(q, _reflection(p, 'inner'), _leaf(Imp(p, q))))


def boxed_reflection(phi):
    """Necessitation applied to `reflection`."""
    return build(_nec(_reflection(phi, 'loop')))


def hilbert_corpus():
    """Small ordinary derivations over ax, asm, mp and nec."""
    p, q = Var('p'), Var('q')
    p_to_p = _leaf(Imp(p, p), Rule.AXIOM)
    shapes = [
        ('tautology', p_to_p),
        ('nec-tautology', _nec(p_to_p)),
        ('mp-assumptions', _mp(q, _leaf(p), _leaf(Imp(p, q)))),
        ('nec-assumption', _nec(_leaf(p))),
        ('monotone', _mp(Box(1, p), _nec(_leaf(p)),
                         _leaf(monotone(0, p), Rule.AXIOM))),
        ('lob', _leaf(lob(0, p), Rule.AXIOM)),
    ]
    return [(name, build(shape)) for name, shape in shapes]


CORPUS_FORMULAS = ('p', 'q', '[0]p', 'p -> q', '[1]p')


def cyclic_corpus(logger=None):
    """The cyclic derivations used as a proof corpus, with their names.

    Every entry has at least one and at most 3 back-links, and at most 12
    nodes.
    """
    logger = logger or logging.getLogger('glpkit')
    formulas = [parse(text) for text in CORPUS_FORMULAS]
    p, q = Var('p'), Var('q')
    entries = []
    for k, phi in enumerate(formulas):
        entries.append(('reflection-%d' % k, reflection(phi)))
    for k, (phi, psi) in enumerate([(p, q), (q, Box(1, p)), (Box(0, p), q),
                                    (Imp(p, q), p), (q, p)]):
        entries.append(('ladder-%d' % k, ladder(phi, psi)))
    for k, phi in enumerate(formulas[:3]):
        entries.append(('two-links-%d' % k, multi_link(phi, 2)))
    for k, (a, b) in enumerate([(p, q), (Box(0, q), p), (p, Box(0, q))]):
        entries.append(('inner-link-%d' % k, inner_link(a, b)))
    for k, phi in enumerate(formulas[:3]):
        entries.append(('boxed-reflection-%d' % k, boxed_reflection(phi)))
    for k, phi in enumerate(formulas[:3]):
        entries.append(('three-links-%d' % k, multi_link(phi, 3)))
    logger.debug('Generated %d corpus derivations', len(entries))
    return entries


def strict_orders(n):
    """Every strict partial order on n points, as sets of pairs."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in range(1 << len(pairs)):
        relation = set(p for k, p in enumerate(pairs) if bits >> k & 1)
        if any((b, a) in relation for a, b in relation):
            continue
        if any((a, c) not in relation for a, b in relation
               for b2, c in relation if b == b2):
            continue
        yield relation


def kripke_levels(max_points=3):
    """Magari algebras of the strict orders on up to `max_points` points."""
    for n in range(1, max_points + 1):
        names = tuple(str(k) for k in range(n))
        for relation in strict_orders(n):
            yield kripke_algebra(names, relation)


def corpus_algebras(max_points=3, max_levels=2):
    """The GLP-algebras of the GLP-spaces within the bounds."""
    for s in glp_spaces(max_points, max_levels):
        yield space_to_frame(s)


def corpus_models(names, max_points=3, max_levels=2):
    """Every model over `names` on the corpus spaces."""
    names = sorted(names)
    for s in glp_spaces(max_points, max_levels):
        frame = space_to_frame(s)
        for masks in itertools.product(range(1 << len(s.points)), repeat=len(names)):
            yield Model(s, dict(zip(names, masks)), frame)
