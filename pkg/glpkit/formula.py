# coding: utf-8
"""Formulas of GLP: representation, parsing and printing.

Only four constructors are stored: variables, falsum, implication and the
boxes ``[i]``.  Everything else accepted by the parser (``~``, ``T``,
``&``, ``|``, ``<->`` and the diamonds ``<i>``) is expanded on the way in.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .errors import FormulaSyntaxError


class Formula(object):
    """Base class of the formula constructors."""
    __slots__ = ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class _Bot(Formula):
    pass


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    index: int
    body: Formula

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 0:
            raise FormulaSyntaxError(
                'Box index must be a natural number, got %r' % (self.index,),
                code='bad-box-index')


Bot = _Bot()


# Abbreviations

def neg(f):
    return Imp(f, Bot)


def top():
    return Imp(Bot, Bot)


def conj(a, b):
    return neg(Imp(a, neg(b)))


def disj(a, b):
    return Imp(neg(a), b)


def iff(a, b):
    return conj(Imp(a, b), Imp(b, a))


def diamond(i, f):
    return neg(Box(i, neg(f)))


def big_conj(formulas):
    """Right-nested conjunction in list order; the empty list gives T."""
    formulas = list(formulas)
    if not formulas:
        return top()
    result = formulas[-1]
    for f in reversed(formulas[:-1]):
        result = conj(f, result)
    return result


def implies_all(premises, goal):
    """The curried implication ``p1 -> (p2 -> ... -> goal)``."""
    result = goal
    for p in reversed(list(premises)):
        result = Imp(p, result)
    return result


def unique(formulas):
    """Drop structural duplicates, keeping the first occurrence."""
    seen = set()
    result = []
    for f in formulas:
        if f not in seen:
            seen.add(f)
            result.append(f)
    return tuple(result)


# Structural utilities

def modal_atoms(f):
    """The maximal subformulas of `f` that are variables or boxes."""
    atoms = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Imp):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, (Var, Box)):
            atoms.append(g)
    return unique(atoms)


def subformulas(f):
    result = []
    stack = [f]
    while stack:
        g = stack.pop()
        result.append(g)
        if isinstance(g, Imp):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Box):
            stack.append(g.body)
    return unique(result)


def variables(*formulas):
    names = []
    for f in formulas:
        names.extend(g.name for g in subformulas(f) if isinstance(g, Var))
    return tuple(sorted(set(names)))


def box_indices(f):
    return tuple(sorted({g.index for g in subformulas(f) if isinstance(g, Box)}))


def depth(f):
    """Modal depth: the nesting depth of boxes."""
    if isinstance(f, Imp):
        return max(depth(f.left), depth(f.right))
    if isinstance(f, Box):
        return 1 + depth(f.body)
    return 0


def substitute(f, mapping):
    """Replace atoms (variables or whole boxes) according to `mapping`."""
    if f in mapping:
        return mapping[f]
    if isinstance(f, Imp):
        return Imp(substitute(f.left, mapping), substitute(f.right, mapping))
    if isinstance(f, Box):
        return Box(f.index, substitute(f.body, mapping))
    return f


# Printing

def render(f):
    """Canonical text: every implication is parenthesized."""
    if isinstance(f, Var):
        return f.name
    if f == Bot:
        return 'F'
    if isinstance(f, Box):
        return '[%d]%s' % (f.index, render(f.body))
    return '(%s -> %s)' % (render(f.left), render(f.right))


def _match_neg(f):
    if isinstance(f, Imp) and f.right == Bot:
        return f.left
    return None


def pretty(f):
    """Display text that folds the abbreviations back in.

    The output is accepted by `parse` and yields the same formula.
    """
    if isinstance(f, Var):
        return f.name
    if f == Bot:
        return 'F'
    if isinstance(f, Box):
        return '[%d]%s' % (f.index, pretty(f.body))
    if f == top():
        return 'T'
    inner = _match_neg(f)
    if inner is not None:
        # a & b is ~(a -> ~b)
        if isinstance(inner, Imp) and _match_neg(inner.right) is not None:
            return '(%s & %s)' % (pretty(inner.left), pretty(_match_neg(inner.right)))
        # <i>a is ~[i]~a
        if isinstance(inner, Box) and _match_neg(inner.body) is not None:
            return '<%d>%s' % (inner.index, pretty(_match_neg(inner.body)))
        return '~%s' % pretty(inner)
    return '(%s -> %s)' % (pretty(f.left), pretty(f.right))


# Parsing

_TOKEN = re.compile(r"""
    (?P<space>\s+)
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
  | (?P<const>[FT])
  | (?P<op><->|->|&|\|)
  | (?P<box>\[\s*(?P<bidx>[^\]]*?)\s*\])
  | (?P<dia><\s*(?P<didx>[0-9]+)\s*>)
  | (?P<neg>~)
  | (?P<lpar>\()
  | (?P<rpar>\))
""", re.VERBOSE)

_NAT = re.compile(r'^[0-9]+$')

_BINARY = {
    '->': Imp,
    '&': conj,
    '|': disj,
    '<->': iff,
}


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError('Unexpected character %r' % text[pos], pos)
        kind = m.lastgroup
        if kind == 'bidx' or kind == 'didx':
            kind = 'box' if m.group('box') else 'dia'
        if kind == 'box':
            index = m.group('bidx')
            if not _NAT.match(index):
                raise FormulaSyntaxError(
                    'Box index %r is not a natural number' % index, pos,
                    code='bad-box-index')
            tokens.append(('box', int(index), pos))
        elif kind == 'dia':
            tokens.append(('dia', int(m.group('didx')), pos))
        elif kind != 'space':
            tokens.append((kind, m.group(kind), pos))
        pos = m.end()
    tokens.append(('end', None, len(text)))
    return tokens


class _Parser(object):

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        token = self.tokens[self.pos]
        if kind is not None and token[0] != kind:
            raise FormulaSyntaxError(
                'Expected %s, found %s' % (kind, token[1] or token[0]), token[2])
        self.pos += 1
        return token

    def top_level(self):
        left = self.formula()
        if self.peek()[0] == 'op':
            op = self.take()[1]
            left = _BINARY[op](left, self.formula())
        self.take('end')
        return left

    def formula(self):
        kind, value, pos = self.take()
        if kind == 'ident':
            return Var(value)
        if kind == 'const':
            return Bot if value == 'F' else top()
        if kind == 'neg':
            return neg(self.formula())
        if kind == 'box':
            return Box(value, self.formula())
        if kind == 'dia':
            return diamond(value, self.formula())
        if kind == 'lpar':
            left = self.formula()
            if self.peek()[0] == 'op':
                op = self.take()[1]
                left = _BINARY[op](left, self.formula())
            self.take('rpar')
            return left
        raise FormulaSyntaxError('Unexpected %s' % (value or kind), pos)


def parse(text):
    """Parse `text` into a fully desugared formula.

    Parameters
    ----------
    text: str
        A formula such as ``"[0]([0]p -> p) -> [0]p"``.

    Returns
    -------
    Formula
    """
    if not isinstance(text, str):
        raise FormulaSyntaxError('Expected a string, got %r' % (text,))
    return _Parser(text).top_level()


def parse_list(text):
    """Parse a comma separated list of formulas; blank input gives ()."""
    return unique(parse(part) for part in text.split(',') if part.strip())
