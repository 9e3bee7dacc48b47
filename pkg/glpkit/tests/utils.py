# coding: utf-8
"""Shared fixtures for the glpkit tests."""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from glpkit.corpus import Shape, build, reflection
from glpkit.derivation import Rule
from glpkit.formula import Bot, Box, Imp, Var, parse
from glpkit.neighbourhood import FiniteGLPSpace, chain, discrete

P = Var('p')
Q = Var('q')
BOX_P = Box(0, P)
REFLECT_P = Imp(BOX_P, P)

#: The normalized conclusion of the translated reflection derivation.
REFLECTION_CONCLUSION = parse('(([0]p -> p) & [0]([0]p -> p)) -> p')


def reflection_proof():
    """p from [0]p (back-linked to the root) and the assumption [0]p -> p."""
    return reflection(P)


def reflection_unrolled():
    """`reflection_proof` with the loop entered one step later."""
    inner = Shape(P, Rule.MP, (
        Shape(BOX_P, Rule.NEC, (Shape(P, Rule.LINK, link='inner'),)),
        Shape(REFLECT_P, Rule.ASSUMPTION)), name='inner')
    return build(Shape(P, Rule.MP, (
        Shape(BOX_P, Rule.NEC, (inner,)),
        Shape(REFLECT_P, Rule.ASSUMPTION))))


def chain_space(n=3, levels=1):
    """The down-set topology of the chain 0 < 1 < ..., then discrete levels."""
    t = chain(n)
    return FiniteGLPSpace(t.points, (t,) + (discrete(t.points),) * (levels - 1))


def random_formula(rng, depth, names=('p', 'q'), levels=2):
    """A formula of depth at most `depth` drawn with the generator `rng`."""
    if depth == 0 or rng.random() < 0.25:
        k = rng.randrange(len(names) + 1)
        return Bot if k == len(names) else Var(names[k])
    if rng.random() < 0.5:
        return Imp(random_formula(rng, depth - 1, names, levels),
                   random_formula(rng, depth - 1, names, levels))
    return Box(rng.randrange(levels), random_formula(rng, depth - 1, names, levels))
