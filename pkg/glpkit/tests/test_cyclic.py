# coding: utf-8
"""Test cyclic derivations and the back-link elimination"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from unittest import TestCase

import pytest

from glpkit.corpus import cyclic_corpus, inner_link, ladder, multi_link
from glpkit.cyclic import (
    check_cyclic, classify_cyclic, cyclic_to_hilbert, eliminate_cycles,
    judge_cyclic, lemma_formula, normalized_formula
)
from glpkit.derivation import Derivation, ProofNode, Rule
from glpkit.errors import CoverageError, InvalidDerivationError
from glpkit.formula import Box, Imp, big_conj, conj, parse, top
from glpkit.hilbert import assumption_free, check_hilbert

from .utils import BOX_P, P, Q, REFLECTION_CONCLUSION, REFLECT_P, reflection_proof


class TestCheckCyclic(TestCase):

    def test_reflection_proof_is_valid(self):
        c = reflection_proof()
        assert len(c) == 4
        assert c.backlinks == {2: 0}
        assert check_cyclic(c).valid

    def test_target_not_an_ancestor(self):
        c = reflection_proof()
        c.nodes[2] = ProofNode(P, Rule.LINK, (), 3)
        assert 'backlink-not-ancestor' in check_cyclic(c).codes

    def test_formula_mismatch(self):
        nodes = {
            0: ProofNode(P, Rule.MP, (1, 3)),
            1: ProofNode(Box(0, Q), Rule.NEC, (2,)),
            2: ProofNode(Q, Rule.LINK, (), 0),
            3: ProofNode(Imp(Box(0, Q), P), Rule.ASSUMPTION),
        }
        assert check_cyclic(Derivation(nodes)).codes == ['backlink-formula-mismatch']

    def test_no_nec_on_the_loop(self):
        nodes = {
            0: ProofNode(P, Rule.MP, (1, 2)),
            1: ProofNode(P, Rule.LINK, (), 0),
            2: ProofNode(parse('p -> p'), Rule.AXIOM),
        }
        assert check_cyclic(Derivation(nodes)).codes == ['backlink-no-nec']

    def test_link_without_target(self):
        c = reflection_proof()
        c.nodes[2] = ProofNode(P, Rule.LINK)
        assert check_cyclic(c).codes == ['malformed-inference']

    def test_backlink_on_inner_node(self):
        c = reflection_proof()
        c.nodes[1] = ProofNode(BOX_P, Rule.NEC, (2,), 0)
        assert 'backlink-on-inner-node' in check_cyclic(c).codes

    def test_omega_is_rejected(self):
        c = reflection_proof()
        c.nodes[3] = ProofNode(REFLECT_P, Rule.OMEGA)
        assert 'unexpected-rule' in check_cyclic(c).codes


class TestClassification(TestCase):

    def test_reflection_proof_leaf_is_local_and_boxed(self):
        cls = classify_cyclic(reflection_proof())
        assert cls.local == ((3, REFLECT_P),)
        assert cls.boxed == ((3, REFLECT_P),)

    def test_leaf_below_nec_is_only_boxed(self):
        c = ladder(P, Q)
        cls = classify_cyclic(c)
        assert cls.local_formulas == (Imp(Box(0, Q), P),)
        assert cls.boxed_formulas == (Imp(Box(0, P), Q), Imp(Box(0, Q), P))

    def test_inner_target_only_boxes_its_subtree(self):
        cls = classify_cyclic(inner_link(P, Q))
        assert cls.local_formulas == (REFLECT_P, Imp(P, Q))
        assert cls.boxed_formulas == (REFLECT_P,)

    def test_invalid_input(self):
        c = reflection_proof()
        c.nodes[2] = ProofNode(P, Rule.LINK, (), 3)
        with pytest.raises(InvalidDerivationError) as excinfo:
            classify_cyclic(c)
        assert excinfo.value.code == 'backlink-not-ancestor'
        assert not excinfo.value.report.valid

    def test_judge_cyclic(self):
        judgment = judge_cyclic(reflection_proof(), [REFLECT_P], [REFLECT_P])
        assert judgment.valid
        assert judgment.conclusion == P
        judgment = judge_cyclic(reflection_proof(), [], [REFLECT_P])
        assert judgment.codes == ['boxed-not-in-sigma']


class TestTranslation(TestCase):

    def test_reflection_proof(self):
        d = cyclic_to_hilbert(reflection_proof(), normalize=True)
        assert check_hilbert(d).valid
        assert assumption_free(d)
        assert d.conclusion == REFLECTION_CONCLUSION

    def test_raw_conclusion(self):
        d = cyclic_to_hilbert(reflection_proof())
        assert d.conclusion == lemma_formula([REFLECT_P], [REFLECT_P], P)
        assert d.conclusion == Imp(conj(REFLECT_P, Box(0, REFLECT_P)), P)

    def test_formulas(self):
        assert lemma_formula([], [], P) == Imp(conj(top(), top()), P)
        assert normalized_formula([], [], P) == P
        assert normalized_formula([P], [Q], P) == Imp(big_conj([P, Box(0, Q)]), P)

    def test_corpus(self):
        for name, c in cyclic_corpus():
            cls = classify_cyclic(c)
            d = cyclic_to_hilbert(c)
            assert check_hilbert(d).valid, name
            assert assumption_free(d), name
            assert d.conclusion == lemma_formula(
                cls.local_formulas, cls.boxed_formulas, c.conclusion), name

    def test_three_links(self):
        c = multi_link(P, 3)
        assert len(c) == 10
        assert len(c.backlinks) == 3
        d = cyclic_to_hilbert(c, normalize=True)
        leaf = parse('[0]p -> ([0]p -> ([0]p -> p))')
        assert d.conclusion == Imp(conj(leaf, Box(0, leaf)), P)

    def test_eliminate_cycles(self):
        judgment = eliminate_cycles(reflection_proof(), [REFLECT_P], [REFLECT_P])
        assert judgment.valid
        assert judgment.conclusion == P
        assert judgment.local_leaves == (REFLECT_P,)
        assert judgment.boxed_leaves == (REFLECT_P,)

    def test_eliminate_cycles_coverage(self):
        with pytest.raises(CoverageError):
            eliminate_cycles(reflection_proof(), [], [REFLECT_P])
        with pytest.raises(CoverageError):
            eliminate_cycles(reflection_proof(), [REFLECT_P], [])

    def test_corpus_size(self):
        corpus = cyclic_corpus()
        assert len([c for _, c in corpus if c.backlinks]) >= 20
        for name, c in corpus:
            assert c.backlinks, name
            assert len(c) <= 12, name
            assert len(c.backlinks) <= 3, name
            assert check_cyclic(c).valid, name
