# coding: utf-8
"""Finite topologies, GLP-spaces and their models.

Subsets of a carrier of n points are bitmasks, exactly as the elements of
a `FiniteGLPAlgebra`, so a space converts to its frame by computing the
co-derived set operators.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from .algebra import FiniteGLPAlgebra, check_glp, compress, evaluate, expand
from .errors import BudgetError, FrameError, GLPError, Report, TopologyError
from .formula import variables

DEFAULT_SEARCH_BUDGET = 1000000

MODES = ('local', 'global', 'glocal')


def _point_names(n):
    return tuple(str(k) for k in range(n))


@dataclass(frozen=True)
class FiniteTopology:
    """A topology on the points ``0..n-1`` given by its family of opens.

    Raises
    ------
    TopologyError
        When `opens` misses the empty set or the carrier, is not closed
        under union and intersection, or leaves the carrier.
    """
    points: Tuple[str, ...]
    opens: FrozenSet[int]

    def __post_init__(self):
        full = (1 << len(self.points)) - 1
        opens = self.opens
        if 0 not in opens or full not in opens:
            raise TopologyError('opens must contain the empty set and the carrier')
        for u in opens:
            if u & ~full:
                raise TopologyError('open set %d leaves the carrier' % u)
        for u, v in itertools.combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise TopologyError('opens are not closed under union and intersection',
                                    code='not-closed')

    @property
    def size(self):
        return len(self.points)

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def key(self):
        return tuple(sorted(self.opens))

    def is_open(self, V):
        return V in self.opens

    def minimal_neighbourhood(self, x):
        """The least open set containing point `x`."""
        result = self.full
        for u in self.opens:
            if u >> x & 1:
                result &= u
        return result

    def neighbourhoods(self, x):
        return sorted(u for u in self.opens if u >> x & 1)

    def _check_subset(self, V):
        if V & ~self.full or V < 0:
            raise TopologyError('%r is not a subset of the carrier' % (V,),
                                code='not-a-subset')

    def d(self, V):
        """Limit points: every neighbourhood of x meets V outside x."""
        self._check_subset(V)
        return sum(1 << x for x in range(self.size)
                   if self.minimal_neighbourhood(x) & V & ~(1 << x))

    def cd(self, V):
        """Points with a punctured neighbourhood inside V."""
        self._check_subset(V)
        return self.full ^ self.d(self.full ^ V)

    def cb_ranks(self):
        """Cantor-Bendixson ranks, and the perfect residue.

        Returns
        -------
        (dict, int)
            Rank of every point removed by iterated isolated-point removal,
            and the mask of the points that are never removed.
        """
        ranks = {}
        rest = self.full
        rank = 0
        while rest:
            isolated = [x for x in range(self.size) if rest >> x & 1 and
                        self.minimal_neighbourhood(x) & rest == 1 << x]
            if not isolated:
                break
            for x in isolated:
                ranks[x] = rank
                rest &= ~(1 << x)
            rank += 1
        return ranks, rest

    def is_Td(self):
        """Every point is closed in one of its open neighbourhoods."""
        return all(any(u & ~(1 << x) in self.opens for u in self.neighbourhoods(x))
                   for x in range(self.size))


def d_op(t, V):
    return t.d(V)


def cd_op(t, V):
    return t.cd(V)


def is_scattered(t):
    return t.cb_ranks()[1] == 0


def cb_rank(t):
    return t.cb_ranks()[0]


def is_Td(t):
    return t.is_Td()


# Constructors

def discrete(points):
    points = tuple(points)
    return FiniteTopology(points, frozenset(range(1 << len(points))))


def indiscrete(points):
    points = tuple(points)
    return FiniteTopology(points, frozenset({0, (1 << len(points)) - 1}))


def from_order(points, relation):
    """The topology of down-sets of a preorder.

    Parameters
    ----------
    relation: iterable of (int, int)
        Pairs ``(a, b)`` meaning a lies below b; reflexivity is implied
        and the transitive closure is taken.
    """
    points = tuple(points)
    n = len(points)
    below = [1 << x for x in range(n)]
    for a, b in relation:
        below[b] |= 1 << a
    changed = True
    while changed:
        changed = False
        for x in range(n):
            closure = below[x]
            for y in range(n):
                if below[x] >> y & 1:
                    closure |= below[y]
            if closure != below[x]:
                below[x] = closure
                changed = True
    opens = frozenset(U for U in range(1 << n)
                      if all(below[x] & ~U == 0 for x in range(n) if U >> x & 1))
    return FiniteTopology(points, opens)


def chain(n):
    """The topology of down-sets of the chain ``0 < 1 < ... < n-1``."""
    return from_order(_point_names(n), [(k, k + 1) for k in range(n - 1)])


def all_topologies(n):
    """Every topology on n points, in canonical order.

    Finite topologies are exactly the down-set topologies of preorders.
    """
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    found = {}
    for bits in range(1 << len(pairs)):
        relation = [p for k, p in enumerate(pairs) if bits >> k & 1]
        rel = set(relation)
        if any((a, c) not in rel for a, b in rel for b2, c in rel
               if b == b2 and a != c):
            continue
        t = from_order(_point_names(n), relation)
        found[t.key()] = t
    return [found[k] for k in sorted(found)]


def scattered_topologies(n):
    return [t for t in all_topologies(n) if is_scattered(t)]


# GLP-spaces

@dataclass(frozen=True)
class FiniteGLPSpace:
    """A carrier with topologies τ₀ … τ_{k-1}; τ_i for i ≥ k is discrete."""
    points: Tuple[str, ...]
    topologies: Tuple[FiniteTopology, ...]

    @property
    def levels(self):
        return len(self.topologies)

    @property
    def full(self):
        return (1 << len(self.points)) - 1

    def topology(self, i):
        if i < len(self.topologies):
            return self.topologies[i]
        return discrete(self.points)

    def key(self):
        return (len(self.points), tuple(t.key() for t in self.topologies))


def check_glp_space(s):
    """Scatteredness, τ_i ⊆ τ_{i+1} and d_i(V) open in τ_{i+1}.

    Returns
    -------
    Report
        With the first violating ``(i, V)`` of each condition.
    """
    report = Report()
    for i, t in enumerate(s.topologies):
        if t.points != s.points:
            report.add('carrier-mismatch', 'topology %d has another carrier' % i, i)
    if not report.valid:
        return report
    for i in range(s.levels):
        t, up = s.topology(i), s.topology(i + 1)
        if not is_scattered(t):
            report.add('not-scattered', 'topology %d is not scattered' % i, i)
        missing = sorted(t.opens - up.opens)
        if missing:
            report.add('not-increasing', 'open set %d of topology %d is not open in %d'
                       % (missing[0], i, i + 1), (i, missing[0]))
        for V in range(s.full + 1):
            if not up.is_open(t.d(V)):
                report.add('derived-not-open', 'd_%d(%d) is not open in topology %d'
                           % (i, V, i + 1), (i, V))
                break
    return report


def space_to_frame(s):
    """The powerset algebra with ``[i] = cd_i``."""
    return FiniteGLPAlgebra(
        s.points, [[t.cd(V) for V in range(s.full + 1)] for t in s.topologies])


def frame_to_space(a):
    """Recover the unique topologies ``τ_i = {U : U ⊆ [i]U}`` of a GLP-frame.

    Raises
    ------
    FrameError
        When the tables are not a GLP-algebra or a recovered topology does
        not reproduce its box.
    """
    report = check_glp(a)
    if not report.valid:
        raise FrameError(str(report.violations[0]))
    topologies = []
    for i in range(a.levels):
        opens = frozenset(U for U in a.elements() if a.leq(U, a.box(i, U)))
        try:
            t = FiniteTopology(a.atoms, opens)
        except TopologyError as ex:
            raise FrameError('level %d: %s' % (i, ex))
        for V in a.elements():
            if t.cd(V) != a.box(i, V):
                raise FrameError('level %d: the recovered topology does not '
                                 'reproduce the box at %d' % (i, V))
        topologies.append(t)
    return FiniteGLPSpace(a.atoms, tuple(topologies))


def _as_frame(frame):
    if isinstance(frame, FiniteGLPSpace):
        return space_to_frame(frame)
    return frame


def open_subframe(frame, subset):
    """The frame on `subset` with ``[i]'V = subset & [i]V``.

    Raises
    ------
    TopologyError
        When `subset` is not open in τ₀.
    """
    a = _as_frame(frame)
    if not a.leq(subset, a.box(0, subset)):
        raise TopologyError('%d is not 0-open' % subset, code='not-open')
    atoms = [a.atoms[k] for k in range(len(a.atoms)) if subset >> k & 1]
    boxes = [[compress(a.box(i, expand(y, subset)) & subset, subset)
              for y in range(1 << len(atoms))] for i in range(a.levels)]
    return FiniteGLPAlgebra(atoms, boxes)


class Model(object):
    """A frame (a `FiniteGLPSpace` or a `FiniteGLPAlgebra`) with a valuation.

    Parameters
    ----------
    frame: FiniteGLPSpace or FiniteGLPAlgebra
    valuation: mapping
        Variable name to a subset mask.
    """

    def __init__(self, frame, valuation, algebra=None):
        self.frame = frame
        self.valuation = dict(valuation)
        self.algebra = _as_frame(frame) if algebra is None else algebra

    def __repr__(self):
        return '<Model %d points, %s>' % (len(self.points), sorted(self.valuation))

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return self.frame == other.frame and self.valuation == other.valuation

    def __hash__(self):
        return hash((self.frame, tuple(sorted(self.valuation.items()))))

    @property
    def points(self):
        return self.algebra.atoms

    @property
    def full(self):
        return self.algebra.top

    def zero_open(self, V):
        return self.algebra.leq(V, self.algebra.box(0, V))


def restrict_model(m, subset):
    """The submodel on a 0-open `subset`, with ``v'(p) = subset & v(p)``."""
    if isinstance(m.frame, FiniteGLPSpace):
        if not m.zero_open(subset):
            raise TopologyError('%d is not 0-open' % subset, code='not-open')
        names = tuple(p for k, p in enumerate(m.points) if subset >> k & 1)
        frame = FiniteGLPSpace(names, tuple(
            FiniteTopology(names, frozenset(compress(u, subset) for u in t.opens
                                            if u & ~subset == 0))
            for t in m.frame.topologies))
    else:
        frame = open_subframe(m.algebra, subset)
    valuation = dict((p, compress(v & subset, subset)) for p, v in m.valuation.items())
    return Model(frame, valuation)


def eval_model(m, f):
    """The truth set of `f` in `m`."""
    return evaluate(m.algebra, m.valuation, f)


def sem_consequence_check(m, x, sigma, gamma, phi, mode='glocal', U=None):
    """Whether the consequence instance holds at world `x` of `m`.

    local: Gamma at x implies phi at x.  global: Gamma everywhere implies
    phi at x.  glocal: Gamma at x and Sigma at every other world imply phi
    at x; with `U`, Sigma is only required on ``U - {x}``.

    Raises
    ------
    TopologyError
        When `U` is not a 0-open set containing `x`.
    """
    if mode not in MODES:
        raise GLPError('unknown mode %r' % (mode,), code='bad-mode')
    full = m.full
    point = 1 << x
    if U is not None:
        if not (U >> x & 1) or not m.zero_open(U) or U & ~full:
            raise TopologyError('%r is not a 0-neighbourhood of %s' % (U, m.points[x]),
                                code='not-a-neighbourhood')
    truth = dict((f, eval_model(m, f)) for f in list(sigma) + list(gamma) + [phi])
    if mode == 'global':
        premise = all(truth[g] == full for g in gamma)
    else:
        premise = all(truth[g] & point for g in gamma)
        if mode == 'glocal':
            around = (full if U is None else U) & ~point
            premise = premise and all(truth[s] & around == around for s in sigma)
    return not premise or bool(truth[phi] & point)


# Search

def _extensions(n, t, scattered):
    # topologies that may follow t in a GLP-space
    derived = set(t.d(V) for V in range(1 << n))
    return [u for u in scattered if t.opens <= u.opens and derived <= u.opens]


def glp_spaces(max_points, max_levels, min_points=1):
    """Every GLP-space up to the bounds, in canonical order.

    A trailing discrete level is left implicit, so each space appears once.
    """
    for n in range(min_points, max_points + 1):
        scattered = scattered_topologies(n)
        names = _point_names(n)
        found = []
        frontier = [(t,) for t in scattered]
        while frontier:
            following = []
            for levels in frontier:
                last = levels[-1]
                if len(levels) > 1 and len(last.opens) == 1 << n:
                    continue
                found.append(FiniteGLPSpace(names, levels))
                if len(levels) < max_levels:
                    following.extend(levels + (u,) for u in _extensions(n, last, scattered))
            frontier = following
        for s in sorted(found, key=FiniteGLPSpace.key):
            yield s


@dataclass(frozen=True)
class Countermodel:
    model: Model
    world: int
    neighbourhood: Optional[int] = None

    @property
    def point(self):
        return self.model.points[self.world]


def _valuations(names, n):
    for masks in itertools.product(range(1 << n), repeat=len(names)):
        yield dict(zip(names, masks))


def search_countermodel(sigma, gamma, phi, max_points=3, max_levels=1,
                        mode='glocal', budget=None, shard=None, logger=None):
    """The first countermodel to the instance within the bounds, or None.

    Parameters
    ----------
    max_points, max_levels: int
        Bounds on the carrier size and the number of explicit topologies.
    budget: int, optional
        Cap on the enumeration size, `DEFAULT_SEARCH_BUDGET` by default.
    shard: (int, int), optional
        ``(index, count)``: only inspect spaces whose enumeration position
        is ``index`` modulo ``count``.

    Raises
    ------
    BudgetError
        When the enumeration exceeds `budget`.
    """
    logger = logger or logging.getLogger('glpkit')
    budget = DEFAULT_SEARCH_BUDGET if budget is None else budget
    if max_points < 1 or max_levels < 1:
        raise GLPError('search bounds must be at least 1', code='bad-bound')
    sigma, gamma = list(sigma), list(gamma)
    names = variables(phi, *(sigma + gamma))
    cost = 1 << (max_points * (max_points - 1))
    if cost > budget:
        raise BudgetError('enumerating topologies on %d points exceeds the budget of %d'
                          % (max_points, budget))
    spaces = list(glp_spaces(max_points, max_levels))
    cost = sum(1 << (len(s.points) * len(names)) for s in spaces)
    if cost > budget:
        raise BudgetError('%d models exceed the budget of %d' % (cost, budget))
    logger.debug('Searching %d spaces, %d models', len(spaces), cost)
    for k, s in enumerate(spaces):
        if shard is not None and k % shard[1] != shard[0]:
            continue
        frame = space_to_frame(s)
        for valuation in _valuations(names, len(s.points)):
            m = Model(s, valuation, frame)
            for x in range(len(s.points)):
                if not sem_consequence_check(m, x, sigma, gamma, phi, mode):
                    logger.debug('Countermodel on %d points at world %d', len(s.points), x)
                    return Countermodel(m, x)
    return None
