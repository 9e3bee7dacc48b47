# coding: utf-8
"""The ``glpk`` command line: one application per verb."""

# Copyright (c) glpkit Development Team.
# Distributed under the terms of the Modified BSD License.
from __future__ import print_function

import json
import sys
import traceback

from jupyter_core.application import JupyterApp, NoStart, base_aliases, base_flags
from traitlets import Bool, Enum, Int, Unicode

from ._version import __version__
from .algebra import heights, is_box_founded
from .commands import (
    check_algebra, check_proof, classify_proof, ravel_graph, search,
    to_hilbert, to_inf, to_omega
)
from .errors import (
    BudgetError, FormatError, FormulaSyntaxError, GLPError, TopologyError
)
from .formula import parse, parse_list, pretty
from .neighbourhood import MODES, eval_model, sem_consequence_check
from .prooffile import (
    countermodel_to_dict, dumps, proof_to_dict, read_algebra, read_model,
    read_proof
)

#: Exit statuses.
VALID, INVALID, USAGE = 0, 1, 2


class UsageError(GLPError):
    code = 'usage'


# Errors that mean the input could not be understood.
USAGE_ERRORS = (FormatError, FormulaSyntaxError, BudgetError, TopologyError,
                UsageError, IOError, OSError)


flags = dict(base_flags)
flags['json'] = (
    {'BaseGLPApp': {'json_output': True}},
    "Emit machine-readable JSON reports."
)
flags['normalize'] = (
    {'BaseGLPApp': {'normalize': True}},
    "Drop the empty-conjunction placeholders from the translated conclusion."
)

aliases = dict(base_aliases)
aliases['sigma'] = 'BaseGLPApp.sigma'
aliases['gamma'] = 'BaseGLPApp.gamma'
aliases['phi'] = 'BaseGLPApp.phi'
aliases['mode'] = 'BaseGLPApp.mode'
aliases['o'] = 'BaseGLPApp.output'
aliases['output'] = 'BaseGLPApp.output'
aliases['model'] = 'BaseGLPApp.model'
aliases['world'] = 'BaseGLPApp.world'
aliases['search'] = 'BaseGLPApp.max_points'
aliases['levels'] = 'BaseGLPApp.max_levels'


class BaseGLPApp(JupyterApp):
    name = "glpk"
    version = __version__
    flags = flags
    aliases = aliases

    json_output = Bool(False, config=True,
        help="Whether to print reports as JSON")

    normalize = Bool(False, config=True,
        help="Whether translations conclude the normalized formula")

    sigma = Unicode(None, allow_none=True, config=True,
        help="Comma separated formulas assumed at every other world (boxed assumptions)")

    gamma = Unicode(None, allow_none=True, config=True,
        help="Comma separated formulas assumed at the world itself (local assumptions)")

    phi = Unicode('', config=True,
        help="The formula to evaluate or to test as a consequence")

    mode = Enum(MODES, default_value='glocal', config=True,
        help="The consequence relation")

    output = Unicode('', config=True,
        help="Where to write the produced file, standard output by default")

    model = Unicode('', config=True,
        help="A model file to evaluate in")

    world = Unicode('', config=True,
        help="The point of the model to evaluate at")

    max_points = Int(3, config=True,
        help="Largest carrier inspected by the countermodel search")

    max_levels = Int(1, config=True,
        help="Largest number of explicit topologies in the countermodel search")

    def start(self):
        try:
            status = self.run_task()
        except Exception as ex:
            _, _, exc_traceback = sys.exc_info()
            msg = traceback.format_exception(ex.__class__, ex, exc_traceback)
            for line in msg:
                self.log.debug(line)
            self.log.error(str(ex))
            status = USAGE if isinstance(ex, USAGE_ERRORS) else INVALID
        sys.exit(status or VALID)

    def run_task(self):
        return VALID

    def exit(self, exit_status=0):
        # command line errors from traitlets arrive with status 1
        super(BaseGLPApp, self).exit(USAGE if exit_status == 1 else exit_status)

    def _log_format_default(self):
        """A default format for messages"""
        return "%(message)s"

    # Helpers

    def formulas(self, value):
        if value is None:
            return None
        return parse_list(value)

    def formula(self):
        if not self.phi:
            raise UsageError('--phi is required')
        return parse(self.phi)

    def input_path(self):
        if not self.extra_args:
            raise UsageError('an input file is required')
        return self.extra_args[0]

    def emit(self, data, lines):
        if self.json_output:
            sys.stdout.write(dumps(data))
        else:
            for line in lines:
                print(line)

    def write(self, data):
        if self.output:
            with open(self.output, 'w') as fid:
                fid.write(dumps(data))
            self.log.info('Wrote %s', self.output)
        else:
            sys.stdout.write(dumps(data))


def _classification_data(cls):
    return dict(local=[[i, pretty(f)] for i, f in cls.local],
                boxed=[[i, pretty(f)] for i, f in cls.boxed])


def _classification_lines(cls):
    lines = []
    for i, f in cls.local:
        lines.append('local %s %s' % (i, pretty(f)))
    for i, f in cls.boxed:
        lines.append('boxed %s %s' % (i, pretty(f)))
    return lines


def _judgment_data(judgment):
    data = dict(valid=judgment.valid,
                violations=[dict(code=v.code, message=v.message,
                                 node=None if v.node is None else str(v.node))
                            for v in judgment.violations])
    if judgment.conclusion is not None:
        data['conclusion'] = pretty(judgment.conclusion)
    data.update(_classification_data(judgment.classification))
    return data


def _judgment_lines(judgment):
    lines = ['valid' if judgment.valid else 'invalid']
    if judgment.conclusion is not None:
        lines.append('conclusion %s' % pretty(judgment.conclusion))
    lines.extend('violation %s' % v for v in judgment.violations)
    return lines + _classification_lines(judgment.classification)


class CheckApp(BaseGLPApp):
    description = "Check a proof file against Sigma and Gamma"

    def run_task(self):
        pf = read_proof(self.input_path())
        judgment = check_proof(pf, self.formulas(self.sigma), self.formulas(self.gamma))
        self.emit(_judgment_data(judgment), _judgment_lines(judgment))
        return VALID if judgment.valid else INVALID


class ClassifyApp(BaseGLPApp):
    description = "Print the local and boxed assumption leaves of a proof file"

    def run_task(self):
        cls = classify_proof(read_proof(self.input_path()))
        self.emit(_classification_data(cls), _classification_lines(cls))


class ToHilbertApp(BaseGLPApp):
    description = "Translate a cyclic derivation into an ordinary one"

    def run_task(self):
        pf = read_proof(self.input_path())
        result, judgment = to_hilbert(pf, normalize=self.normalize, logger=self.log)
        self.write(proof_to_dict(result, kind='hilbert'))


class RavelApp(BaseGLPApp):
    description = "Fold a graph presentation into a cyclic derivation"

    def run_task(self):
        pf = read_proof(self.input_path())
        result = ravel_graph(pf, logger=self.log)
        self.write(proof_to_dict(result, pf.sigma, pf.gamma, kind='cyclic'))


class ToOmegaApp(BaseGLPApp):
    description = "Translate a regular ∞-derivation into an ω-derivation"

    def run_task(self):
        pf = read_proof(self.input_path())
        sigma, gamma = self.formulas(self.sigma), self.formulas(self.gamma)
        result, judgment = to_omega(pf, sigma, gamma, logger=self.log)
        self.write(proof_to_dict(result, judgment.sigma, judgment.gamma, kind='omega'))


class ToInfApp(BaseGLPApp):
    description = "Translate an ω-derivation into a cyclic presentation"

    def run_task(self):
        pf = read_proof(self.input_path())
        sigma, gamma = self.formulas(self.sigma), self.formulas(self.gamma)
        result, judgment = to_inf(pf, sigma, gamma, logger=self.log)
        self.write(proof_to_dict(result, judgment.sigma, judgment.gamma, kind='cyclic'))


class EvalApp(BaseGLPApp):
    description = "Evaluate a formula in a model file"

    def run_task(self):
        m = read_model(self.model or self.input_path())
        f = self.formula()
        truth = eval_model(m, f)
        names = [p for k, p in enumerate(m.points) if truth >> k & 1]
        data = dict(formula=pretty(f), truth=names)
        lines = ['truth %s' % ' '.join(names)]
        status = VALID
        if self.world:
            x = _world(m, self.world)
            data['holds'] = bool(truth >> x & 1)
            lines.append('holds' if data['holds'] else 'fails')
            status = VALID if data['holds'] else INVALID
        self.emit(data, lines)
        return status


def _world(m, name):
    if name not in m.points:
        raise UsageError('%s is not a point of the model' % name)
    return m.points.index(name)


class ConsequenceApp(BaseGLPApp):
    description = "Test a consequence instance on a model or by countermodel search"

    def run_task(self):
        phi = self.formula()
        sigma = self.formulas(self.sigma) or ()
        gamma = self.formulas(self.gamma) or ()
        if self.model:
            m = read_model(self.model)
            worlds = [_world(m, self.world)] if self.world else range(len(m.points))
            failing = [m.points[x] for x in worlds
                       if not sem_consequence_check(m, x, sigma, gamma, phi, self.mode)]
            self.emit(dict(holds=not failing, failing=failing),
                      ['holds'] if not failing else ['fails at %s' % ' '.join(failing)])
            return INVALID if failing else VALID
        return _report_search(self, sigma, gamma, phi)


def _report_search(app, sigma, gamma, phi):
    found = search(sigma, gamma, phi, app.max_points, app.max_levels,
                   mode=app.mode, logger=app.log)
    if found is None:
        app.emit(dict(countermodel=None),
                 ['no countermodel up to %d points' % app.max_points])
        return VALID
    data = countermodel_to_dict(found)
    app.emit(dict(countermodel=data),
             ['countermodel', json.dumps(data, sort_keys=True)])
    return INVALID


class SearchApp(BaseGLPApp):
    description = "Search for a countermodel within the configured bounds"

    def run_task(self):
        phi = self.formula()
        return _report_search(self, self.formulas(self.sigma) or (),
                              self.formulas(self.gamma) or (), phi)


class AlgebraApp(BaseGLPApp):
    description = "Check the GLP-algebra identities of an algebra file"

    def run_task(self):
        a = read_algebra(self.input_path())
        report = check_algebra(a)
        table = {}
        for i in range(a.levels):
            if is_box_founded(a, i):
                table[i] = heights(a, i)
        data = dict(valid=report.valid,
                    violations=[str(v) for v in report.violations],
                    heights=dict((str(i), dict((str(x), str(h)) for x, h in sorted(t.items())))
                                 for i, t in table.items()))
        lines = ['valid' if report.valid else 'invalid']
        lines.extend('violation %s' % v for v in report.violations)
        for i, t in sorted(table.items()):
            lines.append('heights %d %s' % (i, ' '.join(
                '%d:%s' % (x, h) for x, h in sorted(t.items()))))
        self.emit(data, lines)
        return VALID if report.valid else INVALID


_examples = """
glpk check proof.json --sigma="([0]p -> p)" --gamma="([0]p -> p)"
glpk to-hilbert proof.json -o out.json
glpk consequence --phi="[0]p" --sigma="p" --search=3
"""


class GLPApp(JupyterApp):
    """Base glpk command entry point"""
    name = "glpk"
    version = __version__
    description = "Check, translate and refute GLP derivations"
    examples = _examples

    subcommands = {
        'check': (CheckApp, CheckApp.description),
        'classify': (ClassifyApp, ClassifyApp.description),
        'to-hilbert': (ToHilbertApp, ToHilbertApp.description),
        'ravel': (RavelApp, RavelApp.description),
        'to-omega': (ToOmegaApp, ToOmegaApp.description),
        'to-inf': (ToInfApp, ToInfApp.description),
        'eval': (EvalApp, EvalApp.description),
        'consequence': (ConsequenceApp, ConsequenceApp.description),
        'algebra': (AlgebraApp, AlgebraApp.description),
        'search': (SearchApp, SearchApp.description),
    }

    def start(self):
        """Perform the App's functions as configured"""
        super(GLPApp, self).start()

        # The above should have called a subcommand and raised NoStart; if we
        # get here, it didn't.
        subcmds = ", ".join(sorted(self.subcommands))
        self.log.error("Please supply one subcommand: %s" % subcmds)
        sys.exit(USAGE)

    def exit(self, exit_status=0):
        super(GLPApp, self).exit(USAGE if exit_status == 1 else exit_status)


def run(argv=None):
    """Run one ``glpk`` invocation and return its exit status."""
    for cls in [GLPApp] + [app for app, _ in GLPApp.subcommands.values()]:
        cls.clear_instance()
    app = GLPApp.instance()
    try:
        app.initialize(argv)
        app.start()
    except NoStart:
        return VALID
    except SystemExit as ex:
        if ex.code is None:
            return VALID
        return ex.code if isinstance(ex.code, int) else USAGE
    return VALID


def main(argv=None):
    sys.exit(run(argv))


if __name__ == '__main__':
    main()
