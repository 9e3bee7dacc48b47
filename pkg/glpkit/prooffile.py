# coding: utf-8
"""JSON readers and canonical writers for proof, algebra and model files.

A proof file holds a node table::

    {"kind": "cyclic", "root": 0,
     "nodes": [{"id": 0, "formula": "p", "rule": "mp", "children": [1, 3]},
               ...,
               {"id": 2, "formula": "p", "rule": "link", "children": [],
                "backlink": 0}],
     "sigma": ["([0]p -> p)"], "gamma": []}

ω nodes carry ``phi_prefix`` and ``phi_cycle`` (formula strings) and
``prem_prefix`` and ``prem_cycle`` (node ids); their children are the two
id lists concatenated.  The writer sorts keys and nodes, so writing a file
that was read back reproduces it byte for byte.
"""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import FiniteGLPAlgebra
from .derivation import Derivation, OmegaLasso, ProofNode, Rule
from .errors import FormatError, GLPError
from .formula import Formula, parse, render
from .neighbourhood import FiniteGLPSpace, FiniteTopology, Model

KINDS = ('hilbert', 'cyclic', 'graph', 'omega')


@dataclass
class ProofFile:
    derivation: Derivation
    sigma: Tuple[Formula, ...] = ()
    gamma: Tuple[Formula, ...] = ()
    kind: Optional[str] = None


def guess_kind(d):
    if d.has_omega:
        return 'omega'
    if d.structure_report().valid:
        return 'cyclic' if d.backlinks else 'hilbert'
    return 'graph'


def _formula(text, where):
    if not isinstance(text, str):
        raise FormatError('%s: formula must be a string' % where)
    try:
        return parse(text)
    except GLPError as ex:
        raise FormatError('%s: %s' % (where, ex))


def _formulas(items, where):
    if not isinstance(items, list):
        raise FormatError('%s must be a list' % where)
    return tuple(_formula(t, where) for t in items)


def _ids(items, where):
    if not isinstance(items, list) or not all(isinstance(i, int) for i in items):
        raise FormatError('%s must be a list of node ids' % where)
    return tuple(items)


def _node(entry):
    if not isinstance(entry, dict) or 'id' not in entry:
        raise FormatError('every node needs an id')
    where = 'node %r' % (entry['id'],)
    try:
        rule = Rule(entry.get('rule'))
    except ValueError:
        raise FormatError('%s: unknown rule %r' % (where, entry.get('rule')))
    formula = _formula(entry.get('formula'), where)
    children = _ids(entry.get('children', []), where + ' children')
    backlink = entry.get('backlink')
    if backlink is not None and not isinstance(backlink, int):
        raise FormatError('%s: backlink must be a node id' % where)
    omega = None
    if rule == Rule.OMEGA:
        omega = OmegaLasso(
            _formulas(entry.get('phi_prefix', []), where + ' phi_prefix'),
            _formulas(entry.get('phi_cycle', []), where + ' phi_cycle'),
            _ids(entry.get('prem_prefix', []), where + ' prem_prefix'),
            _ids(entry.get('prem_cycle', []), where + ' prem_cycle'))
        if not omega.phi_cycle or not omega.prem_cycle:
            raise FormatError('%s: omega cycles must not be empty' % where)
        children = omega.children
    return ProofNode(formula, rule, children, backlink, omega)


def proof_from_dict(data):
    """Read the JSON structure of a proof file.

    Raises
    ------
    FormatError
    """
    if not isinstance(data, dict):
        raise FormatError('a proof file is a JSON object')
    entries = data.get('nodes')
    if not isinstance(entries, list):
        raise FormatError('missing node table')
    nodes = {}
    for entry in entries:
        node = _node(entry)
        if entry['id'] in nodes:
            raise FormatError('duplicate node id %r' % (entry['id'],))
        nodes[entry['id']] = node
    root = data.get('root', 0)
    if not isinstance(root, int):
        raise FormatError('root must be a node id')
    kind = data.get('kind')
    if kind is not None and kind not in KINDS:
        raise FormatError('unknown kind %r' % (kind,))
    d = Derivation(nodes, root)
    return ProofFile(d, _formulas(data.get('sigma', []), 'sigma'),
                     _formulas(data.get('gamma', []), 'gamma'), kind or guess_kind(d))


def proof_to_dict(d, sigma=(), gamma=(), kind=None):
    entries = []
    for i, node in sorted(d.nodes.items()):
        entry = dict(id=i, formula=render(node.formula), rule=node.rule.value,
                     children=list(node.children))
        if node.backlink is not None:
            entry['backlink'] = node.backlink
        if node.omega is not None:
            entry['phi_prefix'] = [render(f) for f in node.omega.phi_prefix]
            entry['phi_cycle'] = [render(f) for f in node.omega.phi_cycle]
            entry['prem_prefix'] = list(node.omega.prem_prefix)
            entry['prem_cycle'] = list(node.omega.prem_cycle)
        entries.append(entry)
    return dict(kind=kind or guess_kind(d), root=d.root, nodes=entries,
                sigma=[render(f) for f in sigma], gamma=[render(f) for f in gamma])


def dumps(data):
    return json.dumps(data, indent=4, sort_keys=True, ensure_ascii=False) + '\n'


def _load(path):
    try:
        with open(path) as fid:
            return json.load(fid)
    except (IOError, OSError) as ex:
        raise FormatError('cannot read %s: %s' % (path, ex))
    except ValueError as ex:
        raise FormatError('%s is not valid JSON: %s' % (path, ex))


def _write(path, data):
    with open(path, 'w') as fid:
        fid.write(dumps(data))


def read_proof(path):
    return proof_from_dict(_load(path))


def write_proof(path, d, sigma=(), gamma=(), kind=None):
    _write(path, proof_to_dict(d, sigma, gamma, kind))


# Algebras

def algebra_from_dict(data):
    """Read ``{"atoms": [...], "boxes": [{"mask": image, ...}, ...]}``."""
    if not isinstance(data, dict) or not isinstance(data.get('atoms'), list):
        raise FormatError('an algebra file needs a list of atoms')
    atoms = data['atoms']
    size = 1 << len(atoms)
    boxes = []
    for i, table in enumerate(data.get('boxes', [])):
        if not isinstance(table, dict):
            raise FormatError('box %d must map masks to images' % i)
        try:
            entries = dict((int(k), v) for k, v in table.items())
        except ValueError:
            raise FormatError('box %d has a key that is not a mask' % i)
        missing = [x for x in range(size) if x not in entries]
        if missing:
            raise FormatError('box %d has no image for %d' % (i, missing[0]))
        boxes.append([entries[x] for x in range(size)])
    try:
        return FiniteGLPAlgebra(atoms, boxes)
    except GLPError as ex:
        raise FormatError(str(ex))


def algebra_to_dict(a):
    return dict(atoms=list(a.atoms),
                boxes=[dict((str(x), y) for x, y in enumerate(table))
                       for table in a.boxes])


def read_algebra(path):
    return algebra_from_dict(_load(path))


def write_algebra(path, a):
    _write(path, algebra_to_dict(a))


# Models

def model_from_dict(data):
    """Read ``{"points": [...], "topologies": [[opens]], "valuation": {...}}``."""
    if not isinstance(data, dict) or not isinstance(data.get('points'), list):
        raise FormatError('a model file needs a list of points')
    points = tuple(data['points'])
    valuation = data.get('valuation', {})
    if not isinstance(valuation, dict) or \
            not all(isinstance(v, int) for v in valuation.values()):
        raise FormatError('the valuation maps variables to masks')
    try:
        topologies = tuple(FiniteTopology(points, frozenset(opens))
                           for opens in data.get('topologies', []))
    except (GLPError, TypeError) as ex:
        raise FormatError('invalid topology: %s' % ex)
    full = (1 << len(points)) - 1
    for p, v in valuation.items():
        if v & ~full or v < 0:
            raise FormatError('value of %s leaves the carrier' % p)
    return Model(FiniteGLPSpace(points, topologies), valuation)


def model_to_dict(m):
    s = m.frame
    return dict(points=list(s.points),
                topologies=[sorted(t.opens) for t in s.topologies],
                valuation=dict(m.valuation))


def read_model(path):
    return model_from_dict(_load(path))


def countermodel_to_dict(found):
    data = model_to_dict(found.model)
    data['world'] = found.point
    return data
