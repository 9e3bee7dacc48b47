# coding: utf-8
"""Regular ∞-derivations and lasso-presented ω-derivations.

A regular ∞-derivation is handled through a finite presentation: either a
cyclic derivation (a tree with back-links) or a shared graph, i.e. a node
table whose children may be shared and may point back up.  ω-derivations
are ordinary trees in which a node may apply the ω-rule to an eventually
periodic list of premises.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, replace
from typing import FrozenSet, List, Tuple

from .cyclic import check_cyclic
from .derivation import Derivation, LeafClassification, ProofNode, Rule
from .errors import CoverageError, Report
from .formula import Box, Formula, Imp, big_conj, pretty, unique
from .hilbert import Judgment, build_box_mono, build_by_taut, check_inference


# Presentations

def as_graph(c):
    """The shared-graph form of a cyclic derivation.

    Back-linked leaves disappear; their parents point at the targets.
    """
    def resolve(i):
        node = c[i]
        return node.backlink if node.rule == Rule.LINK else i

    nodes = {}
    for i in c.preorder():
        node = c[i]
        if node.rule == Rule.LINK:
            continue
        nodes[i] = replace(node, children=tuple(resolve(ch) for ch in node.children))
    return Derivation(nodes, c.root)


def graph_report(g, max_atoms=None):
    """Check a shared graph: reachability, inferences and nec on every cycle."""
    report = Report()
    if g.root not in g.nodes:
        report.add('missing-root', 'root %r is not a node' % (g.root,))
        return report
    for i, node in sorted(g.nodes.items()):
        for ch in node.children:
            if ch not in g.nodes:
                report.add('missing-node', 'child %r does not exist' % (ch,), i)
    if not report.valid:
        return report
    reached = set(g.preorder())
    for i in sorted(set(g.nodes) - reached):
        report.add('disconnected-graph', 'node is not reachable from the root', i)
    for i in sorted(reached):
        node = g[i]
        if node.rule == Rule.LINK or node.backlink is not None:
            report.add('unexpected-backlink', 'graphs share nodes instead', i)
        elif not check_inference(g, i, report, max_atoms):
            report.add('unexpected-rule', '%s is not allowed here' % node.rule.value, i)
    cycle = _nec_free_cycle(g)
    if cycle is not None:
        report.add('nec-free-cycle', 'a cycle through %r has no nec node' % (cycle,), cycle)
    return report


def _nec_free_cycle(g):
    # Depth-first search over the edges that do not leave a nec node.
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict((i, WHITE) for i in g.nodes)
    for start in sorted(g.nodes):
        if colour[start] != WHITE:
            continue
        stack = [(start, iter(_local_children(g, start)))]
        colour[start] = GREY
        while stack:
            i, children = stack[-1]
            for ch in children:
                if colour[ch] == GREY:
                    return ch
                if colour[ch] == WHITE:
                    colour[ch] = GREY
                    stack.append((ch, iter(_local_children(g, ch))))
                    break
            else:
                colour[i] = BLACK
                stack.pop()
    return None


def _local_children(g, i):
    node = g[i]
    if node.rule == Rule.NEC:
        return ()
    return node.children


class RegularInfDerivation(object):
    """A regular ∞-derivation given by a cyclic presentation."""

    def __init__(self, presentation):
        self.presentation = presentation
        self._graph = None

    def __repr__(self):
        return '<RegularInfDerivation of %s, %d nodes>' % (
            pretty(self.conclusion), len(self.presentation))

    @property
    def conclusion(self):
        return self.presentation.conclusion

    def graph(self):
        if self._graph is None:
            self._graph = as_graph(self.presentation)
        return self._graph


def unravel(c):
    """View the cyclic derivation `c` as the regular ∞-derivation it unfolds to."""
    report = check_cyclic(c)
    if report.valid:
        report.extend(graph_report(as_graph(c)))
    report.raise_for_violations('cyclic presentation')
    return RegularInfDerivation(c)


# Bisimulation

def _refine(g, ids):
    """Bisimulation classes of the nodes `ids` by partition refinement."""
    def number(keys):
        table = {}
        return dict((i, table.setdefault(keys[i], len(table))) for i in ids)

    classes = number(dict((i, (g[i].rule, g[i].formula)) for i in ids))
    count = len(set(classes.values()))
    while True:
        keys = dict((i, (classes[i], tuple(classes[ch] for ch in g[i].children)))
                    for i in ids)
        refined = number(keys)
        new_count = len(set(refined.values()))
        classes = refined
        if new_count == count:
            return classes
        count = new_count


def bisimilar(first, second):
    """Whether two presentations unfold to the same infinite tree."""
    graphs = []
    for p in (first, second):
        if isinstance(p, RegularInfDerivation):
            p = p.graph()
        elif p.backlinks:
            p = as_graph(p)
        graphs.append(p)
    nodes = {}
    for tag, g in enumerate(graphs):
        for i, node in g.nodes.items():
            nodes[(tag, i)] = replace(
                node, children=tuple((tag, ch) for ch in node.children))
    union = Derivation(nodes, (0, graphs[0].root))
    classes = _refine(union, sorted(nodes))
    return classes[(0, graphs[0].root)] == classes[(1, graphs[1].root)]


def ravel(g, max_atoms=None):
    """Fold a shared graph into a cyclic derivation.

    Nodes are grouped into bisimulation classes; the graph is unfolded from
    the root and a branch is cut, with a back-link, as soon as it reaches a
    class that already occurs on the path.
    """
    graph_report(g, max_atoms).raise_for_violations('graph presentation')
    reached = g.preorder()
    classes = _refine(g, reached)
    nodes = {}
    on_path = {}

    def visit(v):
        node_id = len(nodes)
        k = classes[v]
        if k in on_path:
            nodes[node_id] = ProofNode(g[v].formula, Rule.LINK, (), on_path[k])
            return node_id
        nodes[node_id] = None
        on_path[k] = node_id
        children = tuple(visit(ch) for ch in g[v].children)
        del on_path[k]
        nodes[node_id] = ProofNode(g[v].formula, g[v].rule, children)
        return node_id

    visit(g.root)
    return Derivation(nodes, 0)


# Classification, slices and heights

def classify_inf(r):
    """Local and boxed assumption occurrences of the unravelling of `r`.

    Runs over the states (node, below a nec) of the shared graph, which
    are exactly the kinds of occurrences in the infinite tree.
    """
    g = r.graph()
    local, boxed = [], []
    seen = set()
    stack = [(g.root, False)]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        i, under_nec = state
        node = g[i]
        if node.rule == Rule.ASSUMPTION:
            (boxed if under_nec else local).append((i, node.formula))
        flag = under_nec or node.rule == Rule.NEC
        stack.extend((ch, flag) for ch in reversed(node.children))
    order = dict((i, k) for k, i in enumerate(_bfs(g)))
    local.sort(key=lambda e: order[e[0]])
    boxed.sort(key=lambda e: order[e[0]])
    return LeafClassification(tuple(local), tuple(boxed), 'inf')


def check_inf(r, sigma=(), gamma=(), max_atoms=None):
    """Check ``Sigma; Gamma |-inf φ`` for the regular derivation `r`.

    The occurrence-based classification of `classify_inf` is used, so the
    result may differ from `judge_cyclic` on the presentation.

    Returns
    -------
    Judgment
    """
    sigma, gamma = unique(sigma), unique(gamma)
    judgment = Judgment(sigma=sigma, gamma=gamma, witness=r.presentation)
    judgment.extend(graph_report(r.graph(), max_atoms))
    if not judgment.valid:
        return judgment
    judgment.conclusion = r.conclusion
    judgment.classification = classify_inf(r)
    judgment.classification.uncovered(sigma, gamma, judgment)
    return judgment


def _bfs(g):
    order, seen = [], {g.root}
    queue = deque([g.root])
    while queue:
        i = queue.popleft()
        order.append(i)
        for ch in g[i].children:
            if ch not in seen:
                seen.add(ch)
                queue.append(ch)
    return order


@dataclass(frozen=True)
class SliceSequence:
    """The eventually periodic sequence of slices of a regular derivation.

    Slice n holds the nodes with exactly n nec applications between them
    and the root; ``xi(n)`` is the conjunction of their formulas.
    """
    preperiod: int
    period: int
    slice_sets: Tuple[FrozenSet[int], ...]
    slice_formulas: Tuple[Formula, ...]

    def index(self, n):
        if n < self.preperiod:
            return n
        return self.preperiod + (n - self.preperiod) % self.period

    def xi(self, n):
        return self.slice_formulas[self.index(n)]

    def members(self, n):
        return self.slice_sets[self.index(n)]


def slices(r):
    """Compute the slice sequence of `r` up to its first repetition."""
    g = r.graph()
    order = dict((i, k) for k, i in enumerate(_bfs(g)))

    def closure(start):
        result = set()
        stack = list(start)
        while stack:
            i = stack.pop()
            if i in result:
                continue
            result.add(i)
            stack.extend(_local_children(g, i))
        return frozenset(result)

    sets = [closure([g.root])]
    seen = {sets[0]: 0}
    while True:
        current = sets[-1]
        following = closure(g[i].children[0] for i in current
                            if g[i].rule == Rule.NEC)
        if following in seen:
            preperiod = seen[following]
            break
        seen[following] = len(sets)
        sets.append(following)
    formulas = tuple(
        big_conj(unique(g[i].formula for i in sorted(s, key=order.get)))
        for s in sets)
    return SliceSequence(preperiod, len(sets) - preperiod, tuple(sets), formulas)


def local_height(d):
    """The longest branch of the main fragment of `d`.

    The main fragment stops at nec nodes and keeps only the leftmost
    premise of an ω-rule.
    """
    if isinstance(d, RegularInfDerivation):
        d = d.presentation
    heights = {}
    for i in reversed(d.preorder()):
        node = d[i]
        if node.is_leaf or node.rule == Rule.NEC:
            heights[i] = 0
        elif node.rule == Rule.OMEGA:
            heights[i] = 1 + heights[node.omega.premise(0)]
        else:
            heights[i] = 1 + max(heights[ch] for ch in node.children)
    return heights[d.root]


# ω-derivations

def _check_omega_node(w, i, report):
    node = w[i]
    lasso = node.omega
    if (lasso is None or not lasso.phi_cycle or not lasso.prem_cycle or
            tuple(node.children) != lasso.children):
        report.add('omega-malformed-lasso',
                   'an ω node needs non-empty cycles matching its premises', i)
        return
    for n in range(lasso.horizon):
        expected = Imp(Box(0, lasso.phi(n + 1, node.formula)), lasso.phi(n, node.formula))
        found = w[lasso.premise(n)].formula
        if found != expected:
            report.add('omega-pattern-mismatch', 'premise %d concludes %s, expected %s'
                       % (n, pretty(found), pretty(expected)), i)
            return


def omega_report(w, max_atoms=None):
    """Rule-local check of an ω-derivation."""
    report = w.structure_report()
    if not report.valid:
        return report
    for i in w.preorder():
        node = w[i]
        if node.rule == Rule.LINK or node.backlink is not None:
            report.add('unexpected-backlink', 'ω-derivations are well-founded', i)
        elif node.rule == Rule.OMEGA:
            _check_omega_node(w, i, report)
        elif not check_inference(w, i, report, max_atoms):
            report.add('unexpected-rule', '%s is not allowed here' % node.rule.value, i)
    return report


def classify_omega(w):
    """Assumption leaves of an ω-derivation.

    Every premise of an ω-rule but the leftmost one is boxed; a cycle
    premise that also serves as the leftmost one contributes both ways.
    """
    local, boxed = [], []
    seen = set()
    stack = [(w.root, False)]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        i, is_boxed = state
        node = w[i]
        if node.rule == Rule.ASSUMPTION:
            (boxed if is_boxed else local).append((i, node.formula))
        if node.rule == Rule.OMEGA:
            lasso = node.omega
            for n, ch in enumerate(lasso.prem_prefix):
                stack.append((ch, is_boxed or n > 0))
            for k, ch in enumerate(lasso.prem_cycle):
                stack.append((ch, True))
                if not lasso.prem_prefix and k == 0:
                    stack.append((ch, is_boxed))
        else:
            flag = is_boxed or node.rule == Rule.NEC
            stack.extend((ch, flag) for ch in node.children)
    order = dict((i, k) for k, i in enumerate(w.preorder()))
    local.sort(key=lambda e: order[e[0]])
    boxed.sort(key=lambda e: order[e[0]])
    return LeafClassification(tuple(local), tuple(boxed), 'omega')


def check_omega(w, sigma=(), gamma=(), max_atoms=None):
    """Check an ω-derivation against ``Sigma; Gamma``.

    The premise pattern is verified for every position below the lasso
    horizon; from `stable_from` on, the triple (φ_n, φ_{n+1}, premise n)
    repeats with the period of the lasso, so those positions cover all n.

    Returns
    -------
    Judgment
    """
    sigma, gamma = unique(sigma), unique(gamma)
    judgment = Judgment(sigma=sigma, gamma=gamma, witness=w)
    judgment.extend(omega_report(w, max_atoms))
    if not judgment.valid:
        return judgment
    judgment.conclusion = w.conclusion
    judgment.classification = classify_omega(w)
    judgment.classification.uncovered(sigma, gamma, judgment)
    return judgment


class _SliceTranslator(object):
    """Builds the premises ``[0]xi_{n+1} -> xi_n`` of the ω-rule."""

    def __init__(self, g, sl):
        self.g = g
        self.sl = sl
        self.order = dict((i, k) for k, i in enumerate(_bfs(g)))
        self.memo = {}

    def node_proof(self, a, n):
        # [0]xi_{n+1} -> psi_a for a node a of slice n
        key = (a, self.sl.index(n))
        if key in self.memo:
            return self.memo[key]
        node = self.g[a]
        box_next = Box(0, self.sl.xi(n + 1))
        target = Imp(box_next, node.formula)
        if node.rule in (Rule.AXIOM, Rule.ASSUMPTION):
            proof = build_by_taut(target, [Derivation.leaf(node.formula, node.rule)])
        elif node.rule == Rule.NEC:
            premise = self.g[node.children[0]].formula
            proof = build_box_mono(build_by_taut(Imp(self.sl.xi(n + 1), premise)))
        else:
            proof = build_by_taut(target, [self.node_proof(ch, n)
                                           for ch in node.children])
        self.memo[key] = proof
        return proof

    def premise(self, n):
        members = sorted(self.sl.members(n), key=self.order.get)
        firsts = {}
        for a in members:
            firsts.setdefault(self.g[a].formula, a)
        goal = Imp(Box(0, self.sl.xi(n + 1)), self.sl.xi(n))
        return build_by_taut(goal, [self.node_proof(a, n) for a in firsts.values()])


def inf_to_omega(r, sigma=(), gamma=(), logger=None):
    """Translate a regular ∞-derivation into an ω-derivation.

    Raises
    ------
    CoverageError
        When the assumptions of `r` are not covered by `sigma`, `gamma`.
    """
    logger = logger or logging.getLogger('glpkit')
    report = classify_inf(r).uncovered(sigma, gamma)
    if not report.valid:
        raise CoverageError(str(report.violations[0]))
    if not r.presentation.backlinks:
        logger.debug('No back-links, the tree is its own ω-derivation')
        return r.presentation.canonical()
    g = r.graph()
    sl = slices(r)
    logger.debug('Slices: preperiod %d, period %d', sl.preperiod, sl.period)
    translator = _SliceTranslator(g, sl)
    prem_prefix = [translator.premise(n) for n in range(sl.preperiod)]
    prem_cycle = [translator.premise(n)
                  for n in range(sl.preperiod, sl.preperiod + sl.period)]
    start = max(sl.preperiod, 1)
    phi_prefix = [sl.xi(k) for k in range(1, start)]
    phi_cycle = [sl.xi(k) for k in range(start, start + sl.period)]
    omega = Derivation.infer(Rule.OMEGA, sl.xi(0), prem_prefix + prem_cycle,
                             omega=(phi_prefix, phi_cycle, len(prem_prefix)))
    return Derivation.mp(omega, build_by_taut(Imp(sl.xi(0), r.conclusion)))


def _placeholder(d):
    for i, node in d.nodes.items():
        if node.rule == Rule.LINK and node.backlink is None:
            return i
    return None


def omega_to_inf(w, logger=None):
    """Replace every ω-rule application of `w` by a ladder of mp and nec.

    Rung n derives φ_n from ``[0]φ_{n+1}`` (nec over rung n+1) and premise
    n.  Once the rungs repeat, the nec of the last rung is back-linked to
    the first repeated one.
    """
    logger = logger or logging.getLogger('glpkit')
    omega_report(w).raise_for_violations('ω-derivation')

    def convert(i):
        node = w[i]
        if node.is_leaf:
            return Derivation.leaf(node.formula, node.rule)
        if node.rule != Rule.OMEGA:
            return Derivation.infer(node.rule, node.formula,
                                    [convert(ch) for ch in node.children])
        return ladder(node)

    def ladder(node):
        lasso = node.omega
        period, stable = lasso.period, lasso.stable_from

        def rung(n):
            return (lasso.phi(n, node.formula), lasso.phi(n + 1, node.formula),
                    lasso.premise(n))

        loop = next(m for m in range(stable + 1)
                    if all(rung(n) == rung(n + period) for n in range(m, stable)))
        logger.debug('Ladder with %d straight rungs and a loop of %d', loop, period)
        premises = {}

        def premise(n):
            key = lasso.premise(n)
            if key not in premises:
                premises[key] = convert(key)
            return premises[key]

        top = loop + period - 1
        phi = lasso.phi(top + 1, node.formula)
        d = Derivation.leaf(phi, Rule.LINK)
        for n in range(top, -1, -1):
            d = Derivation.infer(Rule.MP, lasso.phi(n, node.formula),
                                 [Derivation.nec(d), premise(n)])
            if n == loop:
                hole = _placeholder(d)
                d.nodes[hole] = replace(d.nodes[hole], backlink=d.root)
        return d

    return RegularInfDerivation(convert(w.root).canonical())
