# coding: utf-8
"""Test finite Magari and GLP-algebras"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from unittest import TestCase

import pytest

from glpkit.algebra import (
    INFINITY, FiniteGLPAlgebra, M_gamma, alg_consequence_check, check_glp,
    check_magari, compress, evaluate, expand, generated_filter, heights,
    is_box_founded, is_filter, is_monotone_map, is_open_filter,
    is_strict_order, kripke_algebra, product_wf, quotient, wf_height
)
from glpkit.corpus import corpus_algebras, kripke_levels
from glpkit.errors import AlgebraError, FilterError, GLPError, NotBoxFoundedError
from glpkit.formula import Box, parse
from glpkit.hilbert import lob

from .utils import P, REFLECT_P


def chain_algebra():
    # x sees y
    return kripke_algebra(['x', 'y'], [(0, 1)])


class TestAlgebra(TestCase):

    def test_kripke_table(self):
        a = chain_algebra()
        assert a.boxes == ((2, 2, 3, 3),)
        assert a.box(5, 0) == a.top
        assert a.names(a.box(0, 0)) == ['y']
        assert a.diamond(0, 2) == 1

    def test_kripke_rejects_non_orders(self):
        with pytest.raises(AlgebraError):
            kripke_algebra(['x'], [(0, 0)])
        with pytest.raises(AlgebraError):
            kripke_algebra(['x', 'y', 'z'], [(0, 1), (1, 2)])

    def test_bad_tables(self):
        with pytest.raises(AlgebraError) as excinfo:
            FiniteGLPAlgebra(['x'], [[1, 1, 1]])
        assert excinfo.value.code == 'bad-table'
        with pytest.raises(AlgebraError) as excinfo:
            FiniteGLPAlgebra(['x'], [[1, 4]])
        assert excinfo.value.code == 'bad-table'
        with pytest.raises(AlgebraError) as excinfo:
            FiniteGLPAlgebra(['a%d' % k for k in range(11)], [])
        assert excinfo.value.code == 'too-many-atoms'

    def test_bitsets(self):
        assert compress(0b1010, 0b1110) == 0b101
        assert expand(0b101, 0b1110) == 0b1010

    def test_infinity(self):
        assert INFINITY + 1 is INFINITY
        assert 1 + INFINITY is INFINITY
        assert 5 < INFINITY
        assert not INFINITY < 5
        assert str(INFINITY) == 'inf'


class TestIdentities(TestCase):

    def test_magari(self):
        assert check_magari(2, [2, 2, 3, 3]).valid
        assert check_magari(['x', 'y'], [3, 3, 3, 3]).valid

    def test_identity_box_fails_lob(self):
        assert check_magari(2, [0, 1, 2, 3]).codes == ['box-lob']

    def test_box_top(self):
        assert check_magari(2, [0, 0, 0, 0]).codes == ['box-top']

    def test_bad_length(self):
        assert check_magari(2, [3, 3]).codes == ['bad-table']

    def test_kripke_levels_are_magari(self):
        levels = list(kripke_levels(3))
        assert len(levels) == 1 + 3 + 19
        for a in levels:
            assert check_magari(a.atoms, a.boxes[0]).valid
            assert is_box_founded(a)

    def test_glp(self):
        a = FiniteGLPAlgebra(['x', 'y'], [[2, 2, 3, 3], [3, 3, 3, 3]])
        assert check_glp(a).valid

    def test_glp_box_monotone(self):
        a = FiniteGLPAlgebra(['x', 'y'], [[3, 3, 3, 3], [2, 2, 3, 3]])
        report = check_glp(a)
        assert report.codes == ['box-monotone']
        assert report.violations[0].message.startswith('level 0')


class TestHeights(TestCase):

    def test_wf_height(self):
        lower = {'a': [], 'b': ['a'], 'c': ['a', 'b']}
        assert wf_height(lower) == {'a': 0, 'b': 1, 'c': 2}

    def test_cycle(self):
        with pytest.raises(AlgebraError) as excinfo:
            wf_height({'a': ['b'], 'b': ['a']})
        assert excinfo.value.code == 'cyclic-relation'

    def test_product(self):
        first = {0: [], 1: [0]}
        prod = product_wf(first, first)
        assert prod[(1, 1)] == [(0, 0)]
        assert prod[(0, 1)] == []
        assert wf_height(prod)[(1, 1)] == 1

    def test_monotone_map(self):
        first = {0: [], 1: [0]}
        assert is_monotone_map(lambda x: x + 1, first, {1: [], 2: [1]})
        assert not is_monotone_map(lambda x: x, first, {0: [], 1: []})

    def test_strict_order(self):
        assert is_strict_order({'a': [], 'b': ['a'], 'c': ['a', 'b']})
        assert not is_strict_order({'a': [], 'b': ['a'], 'c': ['b']})
        assert not is_strict_order({'a': ['a']})

    def test_chain_heights(self):
        a = chain_algebra()
        assert heights(a) == {0: 0, 1: 0, 2: 1, 3: INFINITY}

    def test_not_box_founded(self):
        a = FiniteGLPAlgebra(['x'], [[0, 1]])
        assert not is_box_founded(a)
        with pytest.raises(NotBoxFoundedError):
            heights(a)


class TestFilters(TestCase):

    def test_generated_filter(self):
        a = chain_algebra()
        f = generated_filter(a, [1])
        assert f.members == frozenset([1, 3])
        assert f.least == 1
        assert 3 in f
        assert len(generated_filter(a, [])) == 1

    def test_M_gamma(self):
        a = chain_algebra()
        f = M_gamma(a, 0, 1)
        assert f.members == frozenset([2, 3])
        assert is_open_filter(a, f.members)
        assert M_gamma(a, 0, 0).members == frozenset(a.elements())
        assert M_gamma(a, 0, INFINITY).members == frozenset([3])

    def test_is_filter(self):
        a = chain_algebra()
        assert is_filter(a, [1, 3])
        assert not is_filter(a, [])
        assert not is_filter(a, [1])
        assert not is_open_filter(a, [1, 3])

    def test_quotient(self):
        a = chain_algebra()
        q = quotient(a, M_gamma(a, 0, 1).members)
        assert q.algebra.atoms == ('y',)
        assert q.algebra.boxes == ((1, 1),)
        assert [q(x) for x in a.elements()] == [0, 0, 1, 1]

    def test_quotient_rejects(self):
        a = chain_algebra()
        with pytest.raises(FilterError) as excinfo:
            quotient(a, [1, 3])
        assert excinfo.value.code == 'filter-not-open'
        with pytest.raises(FilterError) as excinfo:
            quotient(a, [1])
        assert excinfo.value.code == 'invalid-filter'


class TestConsequence(TestCase):

    def test_evaluate(self):
        a = chain_algebra()
        assert evaluate(a, {'p': 1}, Box(0, P)) == 2
        assert evaluate(a, {'p': 1}, parse('F')) == 0
        with pytest.raises(AlgebraError) as excinfo:
            evaluate(a, {}, P)
        assert excinfo.value.code == 'unbound-variable'

    def test_lob_holds(self):
        a = chain_algebra()
        for v in a.elements():
            assert alg_consequence_check(a, {'p': v}, [], [], lob(0, P))

    def test_reflection_needs_both_lists(self):
        a = chain_algebra()
        for v in a.elements():
            assert alg_consequence_check(a, {'p': v}, [REFLECT_P], [REFLECT_P], P)
        assert not alg_consequence_check(a, {'p': 2}, [REFLECT_P], [], P)
        assert not alg_consequence_check(a, {'p': 0}, [], [REFLECT_P], P, mode='local')

    def test_global(self):
        a = chain_algebra()
        for v in a.elements():
            assert alg_consequence_check(a, {'p': v}, [], [REFLECT_P], P, mode='global')

    def test_errors(self):
        a = chain_algebra()
        with pytest.raises(GLPError) as excinfo:
            alg_consequence_check(a, {'p': 0}, [], [], P, mode='sideways')
        assert excinfo.value.code == 'bad-mode'
        with pytest.raises(NotBoxFoundedError):
            alg_consequence_check(FiniteGLPAlgebra(['x'], [[0, 1]]), {'p': 0}, [], [], P)


class TestCorpusLaws(TestCase):
    """Identities, heights and filters over every corpus algebra."""

    def setUp(self):
        self.algebras = list(kripke_levels(4)) + list(corpus_algebras(3, 2))

    def test_kripke_levels_on_four_points(self):
        assert len(list(kripke_levels(4))) == 1 + 3 + 19 + 219

    def test_identities_and_foundedness(self):
        for a in self.algebras:
            assert check_glp(a).valid, a
            for i in range(a.levels):
                assert is_box_founded(a, i), (a, i)

    def test_height_laws(self):
        for a in self.algebras:
            ht = heights(a)
            for x in a.elements():
                assert ht[x] + 1 <= ht[a.box(0, x)], (a, x)
                for y in a.elements():
                    assert ht[x & y] == min(ht[x], ht[y]), (a, x, y)

    def test_M_gamma_is_a_filter(self):
        for a in self.algebras:
            ht = heights(a)
            for gamma in set(ht.values()) | {0}:
                assert is_filter(a, M_gamma(a, 0, gamma, ht).members), (a, gamma)

    def test_quotients_by_open_filters(self):
        for a in self.algebras:
            for m in a.elements():
                f = generated_filter(a, [m])
                if a.box(0, m) != a.top or not is_open_filter(a, f.members):
                    continue
                q = quotient(a, f.members).algebra
                assert check_glp(q).valid, (a, m)
                for i in range(q.levels):
                    assert is_box_founded(q, i), (a, m, i)
