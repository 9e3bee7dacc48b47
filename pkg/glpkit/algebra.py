# coding: utf-8
"""Finite Magari and GLP-algebras over powerset Boolean algebras.

Elements are bitmasks over the atoms (bit k set iff atom k belongs to the
subset).  An algebra carries finitely many box tables; ``[i]`` for i past
the last table is the constant-1 operator.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import FrozenSet, Tuple

from .errors import AlgebraError, FilterError, GLPError, NotBoxFoundedError, Report
from .formula import Bot, Box, Var

MAX_ALGEBRA_ATOMS = 10


# Bitsets

def bit_indices(mask):
    """Indices of the set bits of `mask`, ascending."""
    result = []
    k = 0
    while mask:
        if mask & 1:
            result.append(k)
        mask >>= 1
        k += 1
    return result


def compress(mask, support):
    """Pack the bits of `mask` that lie in `support` into a dense mask."""
    result = 0
    for j, k in enumerate(bit_indices(support)):
        if mask >> k & 1:
            result |= 1 << j
    return result


def expand(mask, support):
    """Inverse of `compress` on subsets of `support`."""
    result = 0
    for j, k in enumerate(bit_indices(support)):
        if mask >> j & 1:
            result |= 1 << k
    return result


@functools.total_ordering
class _Infinity(object):
    """Height of the unit: above every natural, and ∞ + 1 = ∞."""
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(_Infinity, cls).__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'INFINITY'

    def __str__(self):
        return 'inf'

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash('INFINITY')

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


class FiniteGLPAlgebra(object):
    """A powerset algebra with finitely many explicit box tables.

    Parameters
    ----------
    atoms: sequence of str
        Names of the atoms; the carrier is every subset of them.
    boxes: sequence of sequences of int
        ``boxes[i][x]`` is ``[i]x``; every table has ``2**len(atoms)``
        entries.
    max_atoms: int, optional
        The carrier bound, `MAX_ALGEBRA_ATOMS` by default.
    """

    def __init__(self, atoms, boxes, max_atoms=None):
        max_atoms = MAX_ALGEBRA_ATOMS if max_atoms is None else max_atoms
        self.atoms = tuple(atoms)
        if len(self.atoms) > max_atoms:
            raise AlgebraError('%d atoms exceed the limit of %d'
                               % (len(self.atoms), max_atoms), code='too-many-atoms')
        self.size = 1 << len(self.atoms)
        self.top = self.size - 1
        self.boxes = tuple(tuple(table) for table in boxes)
        for i, table in enumerate(self.boxes):
            if len(table) != self.size:
                raise AlgebraError('box table %d has %d entries, expected %d'
                                   % (i, len(table), self.size), code='bad-table')
            if any(not 0 <= y < self.size for y in table):
                raise AlgebraError('box table %d leaves the carrier' % i,
                                   code='bad-table')

    def __repr__(self):
        return '<FiniteGLPAlgebra %d atoms, %d levels>' % (len(self.atoms), self.levels)

    def __eq__(self, other):
        if not isinstance(other, FiniteGLPAlgebra):
            return NotImplemented
        return self.atoms == other.atoms and self.boxes == other.boxes

    def __hash__(self):
        return hash((self.atoms, self.boxes))

    @property
    def levels(self):
        return len(self.boxes)

    def elements(self):
        return range(self.size)

    def box(self, i, x):
        if i < len(self.boxes):
            return self.boxes[i][x]
        return self.top

    def neg(self, x):
        return self.top ^ x

    def imp(self, x, y):
        return (self.top ^ x) | y

    def diamond(self, i, x):
        return self.neg(self.box(i, self.neg(x)))

    def leq(self, x, y):
        return x & (self.top ^ y) == 0

    def names(self, x):
        return [self.atoms[k] for k in bit_indices(x)]


def kripke_algebra(points, relation):
    """The Magari algebra of a finite strict order.

    ``[0]V`` is the set of points all of whose successors lie in V.

    Parameters
    ----------
    points: sequence of str
    relation: iterable of (int, int)
        Pairs ``(w, u)`` with u a successor of w, by point index.
    """
    points = tuple(points)
    relation = set(relation)
    for w, u in relation:
        if w == u:
            raise AlgebraError('relation is reflexive at %s' % points[w])
        for v, t in relation:
            if v == u and (w, t) not in relation:
                raise AlgebraError('relation is not transitive at %s' % points[u])
    successors = [0] * len(points)
    for w, u in relation:
        successors[w] |= 1 << u
    table = []
    for V in range(1 << len(points)):
        table.append(sum(1 << w for w in range(len(points))
                         if successors[w] & ~V == 0))
    return FiniteGLPAlgebra(points, [table])


# Identities

def check_magari(atoms, table):
    """Check ``[]1 = 1``, ``[](x & y) = []x & []y`` and ``[]([]x -> x) = []x``.

    Parameters
    ----------
    atoms: sequence of str or int
        The atoms, or just their number.
    table: sequence of int
        The box table.

    Returns
    -------
    Report
        With the first violation of each identity.
    """
    n = atoms if isinstance(atoms, int) else len(atoms)
    size = 1 << n
    top = size - 1
    report = Report()
    if len(table) != size:
        report.add('bad-table', 'table has %d entries, expected %d' % (len(table), size))
        return report
    if table[top] != top:
        report.add('box-top', '[]1 is not 1', top)
    for x, y in itertools.product(range(size), repeat=2):
        if table[x & y] != table[x] & table[y]:
            report.add('box-meet', '[](x & y) differs from []x & []y', (x, y))
            break
    for x in range(size):
        if table[(top ^ table[x]) | x] != table[x]:
            report.add('box-lob', '[]([]x -> x) differs from []x', x)
            break
    return report


def check_glp(a):
    """Check every level and the conditions linking consecutive levels."""
    report = Report()
    for i, table in enumerate(a.boxes):
        for v in check_magari(len(a.atoms), table).violations:
            report.add(v.code, 'level %d: %s' % (i, v.message), v.node)
    for i in range(a.levels):
        for x in a.elements():
            d = a.diamond(i, x)
            if not a.leq(d, a.box(i + 1, d)):
                report.add('diamond-up', 'level %d: <i>x is not below [i+1]<i>x' % i, x)
                break
        for x in a.elements():
            if not a.leq(a.box(i, x), a.box(i + 1, x)):
                report.add('box-monotone', 'level %d: [i]x is not below [i+1]x' % i, x)
                break
    return report


# Well-founded relations

def wf_height(lower):
    """Heights in a finite well-founded relation.

    Parameters
    ----------
    lower: mapping
        ``lower[a]`` is the collection of b with b ≺ a.

    Returns
    -------
    dict
        ``ht(a) = max(ht(b) + 1 for b ≺ a)``, 0 for minimal a.

    Raises
    ------
    AlgebraError
        When the relation has a cycle.
    """
    heights = {}
    on_stack = set()
    for start in lower:
        if start in heights:
            continue
        stack = [(start, iter(lower[start]))]
        on_stack.add(start)
        while stack:
            node, below = stack[-1]
            for b in below:
                if b in on_stack:
                    raise AlgebraError('relation has a cycle through %r' % (b,),
                                       code='cyclic-relation')
                if b not in heights:
                    on_stack.add(b)
                    stack.append((b, iter(lower.get(b, ()))))
                    break
            else:
                stack.pop()
                on_stack.discard(node)
                heights[node] = max([heights[b] + 1 for b in lower.get(node, ())],
                                    default=0)
    return heights


def product_wf(first, second):
    """Componentwise product of two relations."""
    return dict(((c1, c2), [(b1, b2) for b1 in first[c1] for b2 in second[c2]])
                for c1 in first for c2 in second)


def is_monotone_map(f, first, second):
    """Whether b ≺ c implies f(b) ≺ f(c)."""
    return all(f(b) in set(second.get(f(c), ()))
               for c in first for b in first[c])


def is_strict_order(lower):
    """Irreflexive and transitive."""
    below = dict((a, set(bs)) for a, bs in lower.items())
    for a, bs in below.items():
        if a in bs:
            return False
        for b in bs:
            if not below.get(b, set()) <= bs:
                return False
    return True


def precedence(a, i=0):
    """The relation b ≺ c iff ``[i]b <= c`` on the elements other than 1."""
    rest = [x for x in a.elements() if x != a.top]
    boxes = dict((b, a.box(i, b)) for b in rest)
    return dict((c, [b for b in rest if a.leq(boxes[b], c)]) for c in rest)


def is_box_founded(a, i=0):
    try:
        wf_height(precedence(a, i))
    except AlgebraError:
        return False
    return True


def heights(a, i=0):
    """The height table of level `i`; the unit has height `INFINITY`.

    Raises
    ------
    NotBoxFoundedError
    """
    try:
        table = wf_height(precedence(a, i))
    except AlgebraError:
        raise NotBoxFoundedError('level %d is not box-founded' % i)
    table[a.top] = INFINITY
    return table


# Filters

@dataclass(frozen=True)
class Filter:
    members: FrozenSet[int]

    def __contains__(self, x):
        return x in self.members

    def __len__(self):
        return len(self.members)

    @property
    def least(self):
        return functools.reduce(lambda x, y: x & y, self.members)


def is_filter(a, members):
    members = set(members)
    if not members:
        return False
    for x in members:
        for y in a.elements():
            if a.leq(x, y) and y not in members:
                return False
    return all(x & y in members for x in members for y in members)


def generated_filter(a, elements):
    """The least filter containing `elements`: the up-set of their meet."""
    least = a.top
    for x in elements:
        least &= x
    return Filter(frozenset(x for x in a.elements() if x & least == least))


def M_gamma(a, level, gamma, table=None):
    """The elements of height at least `gamma`."""
    table = heights(a, level) if table is None else table
    return Filter(frozenset(x for x in a.elements() if gamma <= table[x]))


def is_open_filter(a, members):
    """A filter closed under every box."""
    members = set(members)
    if not is_filter(a, members):
        return False
    return all(a.box(i, x) in members for i in range(a.levels) for x in members)


@dataclass(frozen=True)
class Quotient:
    algebra: FiniteGLPAlgebra
    projection: Tuple[int, ...]

    def __call__(self, x):
        return self.projection[x]


def quotient(a, members):
    """The quotient of `a` by an open filter and its canonical map.

    For a powerset algebra the filter is the up-set of its least element
    m, and ``x ~ y`` iff ``x & m == y & m``; the quotient is the powerset
    of the atoms in m.

    Raises
    ------
    FilterError
        When `members` is not an open filter.
    """
    members = set(members)
    if not is_filter(a, members):
        raise FilterError('not a filter')
    if not is_open_filter(a, members):
        raise FilterError('filter is not open', code='filter-not-open')
    least = functools.reduce(lambda x, y: x & y, members)
    projection = tuple(compress(x & least, least) for x in a.elements())
    atoms = [a.atoms[k] for k in bit_indices(least)]
    boxes = []
    for i in range(a.levels):
        boxes.append([projection[a.box(i, expand(y, least))]
                      for y in range(1 << len(atoms))])
    result = FiniteGLPAlgebra(atoms, boxes)
    for i in range(a.levels):
        for x in a.elements():
            if projection[a.box(i, x)] != result.box(i, projection[x]):
                raise FilterError('level %d is not compatible with the filter' % i,
                                  code='filter-not-open')
    return Quotient(result, projection)


# Valuations

def evaluate(a, valuation, f):
    """The value of `f` in `a` under `valuation` (variable name to element)."""
    cache = {}

    def value(g):
        if g in cache:
            return cache[g]
        if isinstance(g, Var):
            if g.name not in valuation:
                raise AlgebraError('no value for variable %s' % g.name,
                                   code='unbound-variable')
            result = valuation[g.name]
        elif g == Bot:
            result = 0
        elif isinstance(g, Box):
            result = a.box(g.index, value(g.body))
        else:
            result = a.imp(value(g.left), value(g.right))
        cache[g] = result
        return result

    return value(f)


MODES = ('local', 'global', 'glocal')


def alg_consequence_check(a, valuation, sigma, gamma, phi, mode='glocal'):
    """Evaluate one instance of algebraic consequence.

    glocal: if ``[0]v(s) = 1`` for every s in sigma, then v(phi) lies in
    the filter generated by v(gamma).  local is glocal with an empty
    sigma; global: if v(g) = 1 for every g in gamma then v(phi) = 1.

    Raises
    ------
    NotBoxFoundedError
        When level 0 of `a` is not box-founded.
    """
    if mode not in MODES:
        raise GLPError('unknown mode %r' % (mode,), code='bad-mode')
    if not is_box_founded(a, 0):
        raise NotBoxFoundedError('level 0 is not box-founded')
    value = functools.partial(evaluate, a, valuation)
    if mode == 'global':
        if all(value(g) == a.top for g in gamma):
            return value(phi) == a.top
        return True
    if mode == 'glocal' and not all(a.box(0, value(s)) == a.top for s in sigma):
        return True
    return value(phi) in generated_filter(a, [value(g) for g in gamma])
