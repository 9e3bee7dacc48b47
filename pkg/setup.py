#!/usr/bin/env python
# coding: utf-8

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from os.path import join as pjoin
import io
import os
import sys

from setuptools import setup


HERE = os.path.abspath(os.path.dirname(__file__))

NAME = 'glpkit'
DESCRIPTION = 'Proof objects and finite semantics for the provability logic GLP.'
LONG_DESCRIPTION = """
Checkers and translations for ordinary, cyclic, ∞- and ω-derivations of
GLP with local and boxed assumptions, together with finite GLP-algebras,
finite GLP-spaces and a bounded countermodel search.
"""


def ensure_python(minimum):
    if sys.version_info < minimum:
        raise ValueError('Python version %s.%s unsupported' % sys.version_info[:2])


def get_version(file, name='__version__'):
    """Get the version of the package from the given file by
    executing it and extracting the given `name`.
    """
    path = os.path.realpath(file)
    version_ns = {}
    with io.open(path, encoding="utf8") as f:
        exec(f.read(), {}, version_ns)
    return version_ns[name]


def find_packages(top=pjoin(HERE, NAME)):
    """The package and its sub-packages."""
    packages = []
    for d, dirs, _ in os.walk(top):
        if os.path.exists(pjoin(d, '__init__.py')):
            packages.append(os.path.relpath(d, HERE).replace(os.path.sep, '.'))
        else:
            dirs[:] = []
    return packages


ensure_python((3, 7))

VERSION = get_version(pjoin(HERE, NAME, '_version.py'))


setup_args = dict(
    name             = NAME,
    description      = DESCRIPTION,
    long_description = LONG_DESCRIPTION,
    version          = VERSION,
    packages         = find_packages(),
    author           = 'glpkit Development Team',
    license          = 'BSD',
    platforms        = "Linux, Mac OS X, Windows",
    keywords         = ['logic', 'provability', 'proof theory', 'topology'],
    python_requires  = '>=3.7',
    classifiers      = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)


setup_args['install_requires'] = [
    'jupyter_core',
    'traitlets',
    'ipython_genutils',
]

setup_args['extras_require'] = {
    'test': ['pytest'],
}

setup_args['entry_points'] = {
    'console_scripts': [
        'glpk = glpkit.glpapp:main',
    ]
}


if __name__ == '__main__':
    setup(**setup_args)
