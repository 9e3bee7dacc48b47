# coding: utf-8
"""Proof trees as node tables.

Every proof object of the package (ordinary, cyclic and ω-derivations) is a
`Derivation`: a table of `ProofNode` records keyed by integer ids plus a
root id.  Back-links and ω-lassos are extra fields on the nodes.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import Report
from .formula import Box, Formula, pretty, unique


class Rule(Enum):
    AXIOM = 'ax'
    ASSUMPTION = 'asm'
    MP = 'mp'
    NEC = 'nec'
    LINK = 'link'
    OMEGA = 'omega'


LEAF_RULES = (Rule.AXIOM, Rule.ASSUMPTION, Rule.LINK)


@dataclass(frozen=True)
class OmegaLasso:
    """Eventually periodic data of an ω-rule application.

    The formulas φ₁, φ₂, ... are `phi_prefix` followed by `phi_cycle`
    repeated forever; premise n (n ≥ 0) is the node `prem_prefix[n]` or a
    node of the repeated `prem_cycle`.  Premise n must conclude
    ``[0]φ_{n+1} -> φ_n``, φ₀ being the conclusion of the ω node.
    """
    phi_prefix: Tuple[Formula, ...]
    phi_cycle: Tuple[Formula, ...]
    prem_prefix: Tuple[int, ...]
    prem_cycle: Tuple[int, ...]

    def phi(self, n, conclusion):
        if n == 0:
            return conclusion
        k = n - 1
        if k < len(self.phi_prefix):
            return self.phi_prefix[k]
        k -= len(self.phi_prefix)
        return self.phi_cycle[k % len(self.phi_cycle)]

    def premise(self, n):
        if n < len(self.prem_prefix):
            return self.prem_prefix[n]
        k = n - len(self.prem_prefix)
        return self.prem_cycle[k % len(self.prem_cycle)]

    @property
    def children(self):
        return tuple(self.prem_prefix) + tuple(self.prem_cycle)

    @property
    def period(self):
        a, b = len(self.phi_cycle), len(self.prem_cycle)
        return a * b // gcd(a, b)

    @property
    def stable_from(self):
        """First n from which (φ_n, φ_{n+1}, premise n) is periodic."""
        return max(len(self.prem_prefix), len(self.phi_prefix) + 1)

    @property
    def horizon(self):
        # positions below this bound determine every position
        return self.stable_from + self.period

    def relabel(self, mapping):
        return replace(
            self,
            prem_prefix=tuple(mapping[i] for i in self.prem_prefix),
            prem_cycle=tuple(mapping[i] for i in self.prem_cycle))


@dataclass(frozen=True)
class ProofNode:
    formula: Formula
    rule: Rule
    children: Tuple[int, ...] = ()
    backlink: Optional[int] = None
    omega: Optional[OmegaLasso] = None

    @property
    def is_leaf(self):
        return not self.children

    def relabel(self, mapping):
        return ProofNode(
            self.formula, self.rule,
            tuple(mapping[c] for c in self.children),
            None if self.backlink is None else mapping.get(self.backlink, self.backlink),
            None if self.omega is None else self.omega.relabel(mapping))


@dataclass(frozen=True)
class LeafClassification:
    """Assumption leaves split into local and boxed occurrences.

    Entries are ``(leaf id, formula)`` pairs in pre-order.  Depending on
    the kind of derivation a leaf may occur in both tuples.
    """
    local: Tuple[Tuple[int, Formula], ...] = ()
    boxed: Tuple[Tuple[int, Formula], ...] = ()
    mode: str = 'hilbert'

    @property
    def local_formulas(self):
        return unique(f for _, f in self.local)

    @property
    def boxed_formulas(self):
        return unique(f for _, f in self.boxed)

    def uncovered(self, sigma, gamma, report=None):
        """Record every boxed leaf outside `sigma` and local leaf outside `gamma`."""
        report = report if report is not None else Report()
        sigma, gamma = set(sigma), set(gamma)
        for leaf, f in self.boxed:
            if f not in sigma:
                report.add('boxed-not-in-sigma',
                           '%s not in Sigma' % pretty(f), leaf)
        for leaf, f in self.local:
            if f not in gamma:
                report.add('local-not-in-gamma',
                           '%s not in Gamma' % pretty(f), leaf)
        return report

    def covered_by(self, sigma, gamma):
        return self.uncovered(sigma, gamma).valid


class Derivation(object):
    """A rooted proof tree stored as a node table.

    Parameters
    ----------
    nodes: mapping
        Node id to `ProofNode`.
    root: int
        The id of the root node.
    """

    def __init__(self, nodes, root=0):
        self.nodes = dict(nodes)
        self.root = root

    def __repr__(self):
        return '<Derivation of %s, %d nodes>' % (pretty(self.conclusion), len(self))

    def __len__(self):
        return len(self.nodes)

    def __getitem__(self, node_id):
        return self.nodes[node_id]

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.root == other.root and self.nodes == other.nodes

    def __hash__(self):
        return hash((self.root, len(self.nodes)))

    @property
    def conclusion(self):
        return self.nodes[self.root].formula

    # Construction

    @classmethod
    def leaf(cls, formula, rule=Rule.AXIOM):
        return cls({0: ProofNode(formula, rule)}, 0)

    @classmethod
    def infer(cls, rule, formula, premises, omega=None):
        """Build a derivation whose root applies `rule` to `premises`.

        The premises are copied in pre-order after the new root, so the
        result is numbered 0..n-1 in pre-order again.
        """
        nodes = {}
        roots = []
        offset = 1
        for premise in premises:
            table = premise.canonical()
            mapping = dict((i, i + offset) for i in table.nodes)
            for i, node in table.nodes.items():
                nodes[i + offset] = node.relabel(mapping)
            roots.append(offset)
            offset += len(table)
        lasso = None
        if omega is not None:
            phi_prefix, phi_cycle, n_prefix = omega
            lasso = OmegaLasso(tuple(phi_prefix), tuple(phi_cycle),
                               tuple(roots[:n_prefix]), tuple(roots[n_prefix:]))
        nodes[0] = ProofNode(formula, rule, tuple(roots), None, lasso)
        return cls(nodes, 0)

    @classmethod
    def mp(cls, minor, major):
        """Modus ponens: from ``psi`` and ``psi -> phi`` infer ``phi``."""
        return cls.infer(Rule.MP, major.conclusion.right, [minor, major])

    @classmethod
    def nec(cls, premise):
        return cls.infer(Rule.NEC, Box(0, premise.conclusion), [premise])

    # Traversal

    def preorder(self, start=None):
        start = self.root if start is None else start
        order = []
        seen = set()
        stack = [start]
        while stack:
            i = stack.pop()
            if i in seen or i not in self.nodes:
                continue
            seen.add(i)
            order.append(i)
            stack.extend(reversed(self.nodes[i].children))
        return order

    def parents(self):
        result = {}
        for i, node in self.nodes.items():
            for c in node.children:
                result.setdefault(c, i)
        return result

    def path(self, node_id):
        """Node ids from the root down to `node_id`."""
        parents = self.parents()
        path = [node_id]
        while path[-1] != self.root:
            path.append(parents[path[-1]])
        path.reverse()
        return path

    def leaves(self):
        return [i for i in self.preorder() if self.nodes[i].is_leaf]

    @property
    def backlinks(self):
        return dict((i, n.backlink) for i, n in self.nodes.items()
                    if n.backlink is not None)

    @property
    def has_omega(self):
        return any(n.rule == Rule.OMEGA for n in self.nodes.values())

    def canonical(self):
        """Renumber the nodes 0..n-1 in pre-order from the root."""
        order = self.preorder()
        if order == list(range(len(self.nodes))):
            return self
        mapping = dict((old, new) for new, old in enumerate(order))
        return Derivation(
            dict((mapping[i], self.nodes[i].relabel(mapping)) for i in order), 0)

    def subtree(self, node_id):
        """The sub-derivation rooted at `node_id`, renumbered in pre-order."""
        order = self.preorder(node_id)
        mapping = dict((old, new) for new, old in enumerate(order))
        return Derivation(
            dict((mapping[i], self.nodes[i].relabel(mapping)) for i in order), 0)

    def structure_report(self, report=None):
        """Check that the table is a finite tree hanging from the root."""
        report = report if report is not None else Report()
        if self.root not in self.nodes:
            report.add('missing-root', 'root %r is not a node' % (self.root,))
            return report
        seen_parent = {}
        for i, node in sorted(self.nodes.items()):
            for c in node.children:
                if c not in self.nodes:
                    report.add('missing-node', 'child %r does not exist' % (c,), i)
                elif c in seen_parent or c == self.root:
                    report.add('not-a-tree', 'node %r has more than one parent' % (c,), i)
                else:
                    seen_parent[c] = i
            if node.backlink is not None:
                if node.children:
                    report.add('backlink-on-inner-node',
                               'only leaves carry back-links', i)
                if node.backlink not in self.nodes:
                    report.add('missing-node',
                               'back-link target %r does not exist' % (node.backlink,), i)
        if report.valid:
            reached = set(self.preorder())
            for i in sorted(set(self.nodes) - reached):
                report.add('unreachable-node', 'node is not below the root', i)
        return report
