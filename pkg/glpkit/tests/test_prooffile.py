# coding: utf-8
"""Test reading and writing proof, algebra and model files"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
import json
import os
from unittest import TestCase

import pytest
from ipython_genutils.tempdir import TemporaryDirectory

from glpkit.algebra import kripke_algebra
from glpkit.errors import FormatError
from glpkit.formula import parse
from glpkit.infinitary import as_graph, inf_to_omega, unravel
from glpkit.neighbourhood import Model, search_countermodel
from glpkit.prooffile import (
    algebra_from_dict, algebra_to_dict, countermodel_to_dict, dumps, guess_kind,
    model_from_dict, model_to_dict, proof_from_dict, proof_to_dict, read_algebra,
    read_model, read_proof, write_algebra, write_proof
)

from .utils import REFLECT_P, chain_space, reflection_proof


class TestProofFiles(TestCase):

    def setUp(self):
        self.tempdir = TemporaryDirectory()
        self.path = os.path.join(self.tempdir.name, 'proof.json')

    def tearDown(self):
        self.tempdir.cleanup()

    def test_reflection_proof_layout(self):
        data = proof_to_dict(reflection_proof(), [REFLECT_P], [REFLECT_P])
        assert data['kind'] == 'cyclic'
        assert data['sigma'] == ['([0]p -> p)']
        assert data['nodes'][2] == dict(id=2, formula='p', rule='link',
                                        children=[], backlink=0)
        assert data['nodes'][0]['children'] == [1, 3]

    def test_round_trip(self):
        write_proof(self.path, reflection_proof(), [REFLECT_P], [REFLECT_P])
        pf = read_proof(self.path)
        assert pf.derivation == reflection_proof()
        assert pf.kind == 'cyclic'
        assert pf.sigma == (REFLECT_P,)
        with open(self.path) as fid:
            text = fid.read()
        assert text == dumps(proof_to_dict(pf.derivation, pf.sigma, pf.gamma, pf.kind))
        assert text.endswith('}\n')

    def test_omega_round_trip(self):
        w = inf_to_omega(unravel(reflection_proof()), [REFLECT_P], [REFLECT_P])
        data = json.loads(dumps(proof_to_dict(w)))
        pf = proof_from_dict(data)
        assert pf.kind == 'omega'
        assert pf.derivation == w

    def test_guess_kind(self):
        assert guess_kind(reflection_proof()) == 'cyclic'
        assert guess_kind(as_graph(reflection_proof())) == 'graph'
        assert guess_kind(reflection_proof().subtree(3)) == 'hilbert'

    def test_format_errors(self):
        node = dict(id=0, formula='p', rule='asm')
        bad = [
            [],
            dict(nodes=None),
            dict(nodes=[dict(node, rule='cut')]),
            dict(nodes=[dict(node, formula='p ->')]),
            dict(nodes=[dict(node, formula=3)]),
            dict(nodes=[node, node]),
            dict(nodes=[node], kind='sequent'),
            dict(nodes=[node], root='0'),
            dict(nodes=[dict(node, children=['1'])]),
            dict(nodes=[dict(node, rule='omega')]),
            dict(nodes=[dict(node, backlink='0')]),
            dict(nodes=[node], sigma='p'),
        ]
        for data in bad:
            with pytest.raises(FormatError):
                proof_from_dict(data)

    def test_unreadable_files(self):
        with pytest.raises(FormatError):
            read_proof(os.path.join(self.tempdir.name, 'missing.json'))
        with open(self.path, 'w') as fid:
            fid.write('{"nodes": [')
        with pytest.raises(FormatError) as excinfo:
            read_proof(self.path)
        assert 'not valid JSON' in str(excinfo.value)


class TestAlgebraFiles(TestCase):

    def test_round_trip(self):
        a = kripke_algebra(['x', 'y'], [(0, 1)])
        data = algebra_to_dict(a)
        assert data['boxes'] == [{'0': 2, '1': 2, '2': 3, '3': 3}]
        assert algebra_from_dict(json.loads(dumps(data))) == a
        with TemporaryDirectory() as td:
            path = os.path.join(td, 'algebra.json')
            write_algebra(path, a)
            assert read_algebra(path) == a

    def test_format_errors(self):
        bad = [
            dict(boxes=[]),
            dict(atoms=['x'], boxes=[[0, 1]]),
            dict(atoms=['x'], boxes=[{'0': 1}]),
            dict(atoms=['x'], boxes=[{'zero': 1, '1': 1}]),
            dict(atoms=['x'], boxes=[{'0': 1, '1': 5}]),
        ]
        for data in bad:
            with pytest.raises(FormatError):
                algebra_from_dict(data)


class TestModelFiles(TestCase):

    def test_round_trip(self):
        m = Model(chain_space(3), {'p': 1})
        data = model_to_dict(m)
        assert data['topologies'] == [[0, 1, 3, 7]]
        assert model_from_dict(json.loads(dumps(data))) == m

    def test_countermodel(self):
        cm = search_countermodel([], [], parse('[0]([0]p -> p) -> p'))
        data = countermodel_to_dict(cm)
        assert data['world'] == '0'
        with TemporaryDirectory() as td:
            path = os.path.join(td, 'model.json')
            with open(path, 'w') as fid:
                fid.write(dumps(data))
            assert read_model(path) == cm.model

    def test_format_errors(self):
        bad = [
            dict(points='01'),
            dict(points=['0', '1'], topologies=[[1, 3]]),
            dict(points=['0'], valuation={'p': 'x'}),
            dict(points=['0'], valuation={'p': 2}),
            dict(points=['0'], topologies=[None]),
        ]
        for data in bad:
            with pytest.raises(FormatError):
                model_from_dict(data)
