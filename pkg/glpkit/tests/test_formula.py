# coding: utf-8
"""Test parsing and printing of formulas"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from unittest import TestCase

import pytest

from glpkit.errors import FormulaSyntaxError
from glpkit.formula import (
    Bot, Box, Imp, Var, big_conj, conj, depth, diamond, modal_atoms, neg,
    parse, parse_list, pretty, render, substitute, top, variables
)
from glpkit.hilbert import lob

p, q, r = Var('p'), Var('q'), Var('r')


class TestParse(TestCase):

    def test_lob_instance(self):
        assert parse('[0]([0]p -> p) -> [0]p') == lob(0, p)

    def test_outer_parentheses_optional(self):
        assert parse('(p -> q)') == parse('p -> q') == Imp(p, q)

    def test_constants(self):
        assert parse('F') == Bot
        assert parse('T') == Imp(Bot, Bot)

    def test_abbreviations(self):
        assert parse('~p') == Imp(p, Bot)
        assert parse('p & q') == neg(Imp(p, neg(q)))
        assert parse('p | q') == Imp(neg(p), q)
        assert parse('<1>p') == neg(Box(1, neg(p)))
        assert parse('p <-> q') == conj(Imp(p, q), Imp(q, p))

    def test_nested(self):
        f = parse('[2](p -> <0>(q & ~r))')
        assert f == Box(2, Imp(p, diamond(0, conj(q, neg(r)))))

    def test_identifiers(self):
        assert parse('x_1Y') == Var('x_1Y')

    def test_errors(self):
        for text in ['p q', '(p -> q', 'P', 'p ->', '[]p', '']:
            with pytest.raises(FormulaSyntaxError):
                parse(text)

    def test_bad_box_index(self):
        with pytest.raises(FormulaSyntaxError) as excinfo:
            parse('[x]p')
        assert excinfo.value.code == 'bad-box-index'
        with pytest.raises(FormulaSyntaxError) as excinfo:
            Box(-1, p)
        assert excinfo.value.code == 'bad-box-index'

    def test_error_position(self):
        with pytest.raises(FormulaSyntaxError) as excinfo:
            parse('p -> $')
        assert excinfo.value.position == 5

    def test_parse_list(self):
        assert parse_list('p, [0]p, p') == (p, Box(0, p))
        assert parse_list('') == ()


class TestRender(TestCase):

    def test_every_implication_parenthesized(self):
        assert render(Imp(Bot, Bot)) == '(F -> F)'
        assert render(lob(0, p)) == '([0]([0]p -> p) -> [0]p)'

    def test_round_trip(self):
        for text in ['p', 'F', 'T', '[3]~p', '<0>p -> [1]<0>p',
                     '(p & q) | ~[0]r', 'p <-> [2]q']:
            f = parse(text)
            assert parse(render(f)) == f
            assert parse(pretty(f)) == f

    def test_pretty(self):
        assert pretty(parse('p & q')) == '(p & q)'
        assert pretty(parse('<0>p')) == '<0>p'
        assert pretty(parse('~p')) == '~p'
        assert pretty(top()) == 'T'
        assert str(parse('p -> q')) == '(p -> q)'


class TestStructure(TestCase):

    def test_modal_atoms(self):
        f = parse('([0]p -> p) -> [0]p')
        assert modal_atoms(f) == (Box(0, p), p)
        assert modal_atoms(Bot) == ()

    def test_big_conj(self):
        assert big_conj([]) == top()
        assert big_conj([p]) == p
        assert big_conj([p, q, r]) == conj(p, conj(q, r))

    def test_variables_and_depth(self):
        f = parse('[0](q -> [1]p)')
        assert variables(f, r) == ('p', 'q', 'r')
        assert depth(f) == 2
        assert depth(p) == 0

    def test_substitute(self):
        f = substitute(parse('[0]p -> p'), {p: q})
        assert f == parse('[0]q -> q')

    def test_structural_equality(self):
        assert parse('[0]p') == Box(0, Var('p'))
        assert len(set([parse('p -> q'), Imp(p, q)])) == 1
