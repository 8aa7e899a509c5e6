"""Functions to render charts, fields, forms, verdicts, and reports as text."""

import textwrap

from multiphase import common
from multiphase.common import DocumentError
from multiphase.core.types import TrialReport, InverseFailure
from multiphase.core.chart import Chart
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm)
from multiphase.core.multisymplectic import (HamiltonianGenerators,
                                             ClassificationVerdict)
from multiphase.core.polysymplectic import PolyHamiltonianGenerators

INDENT = 4
WIDTH = 79

log = common.logger(__name__)


def publish(obj, **kwargs):
    """Render an object as text."""
    return '\n'.join(publish_lines(obj, **kwargs)) + '\n'


def publish_lines(obj, **kwargs):
    """Yield lines of text describing an object.

    :raises: :class:`~multiphase.common.DocumentError` for objects that
        have no text form

    """
    gen = check(obj)
    log.debug("yielding {!r} as lines of text...".format(obj))
    yield from gen(obj, **kwargs)


def _chunks(text, width=WIDTH, indent=INDENT):
    """Yield wrapped lines of text."""
    yield from textwrap.wrap(text, width,
                             initial_indent=' ' * indent,
                             subsequent_indent=' ' * (indent * 2),
                             break_on_hyphens=False) or [' ' * indent + text]


def _lines_chart(chart, **_):
    yield str(chart)
    yield from _chunks("coordinates: " + ' '.join(chart.names))
    if chart.labels:
        yield from _chunks("basis: " + ' '.join(chart.labels))


def _lines_field(field, **_):
    yield str(field)


def _lines_form(form, **_):
    yield str(form)


def _lines_vvform(w, **_):
    for label, form in w.items():
        yield "{}: {}".format(label, form)


def _lines_generators(g, **_):
    families = []
    if isinstance(g, HamiltonianGenerators):
        families.append(("X^x", g.Xmu))
    families.extend([("X^q", g.Xi), ("f0^", g.f0)])
    for prefix, family in families:
        for key, value in sorted(family.items()):
            yield "{}{} = {}".format(prefix, key, value.as_expr())


def _lines_verdict(verdict, **_):
    yield "status: {}".format(verdict.status)
    if verdict.witness is not None:
        yield "witness:"
        for line in publish_lines(verdict.witness):
            yield from _chunks(line)
    if verdict.generators is not None:
        yield "generators:"
        for line in _lines_generators(verdict.generators):
            yield from _chunks(line)
    if verdict.hamiltonian_form is not None:
        label = "hamiltonian form:" if verdict.chart.extended \
            else "hamiltonian section:"
        yield label
        for line in publish_lines(verdict.hamiltonian_form):
            yield from _chunks(line)


def _lines_failure(failure, **_):
    yield "not in image: {}".format(failure.reason)
    if failure.witness is not None:
        yield "witness:"
        for line in publish_lines(failure.witness):
            yield from _chunks(line)


def _lines_reports(reports, **_):
    for report in reports:
        state = "ok" if report.ok else "FAILED"
        yield "{}: {}/{} passed (seed {}) {}".format(
            report.suite, report.passed, report.attempted, report.seed, state)
        for failure in report.failures:
            yield from _chunks("trial {trial} (seed {seed}) {check}: "
                               "{witness}".format(**failure))


# Mapping from object class to lines generator
FORMAT_LINES = ((Chart, _lines_chart),
                (VectorField, _lines_field),
                (DifferentialForm, _lines_form),
                (VectorValuedForm, _lines_vvform),
                (HamiltonianGenerators, _lines_generators),
                (PolyHamiltonianGenerators, _lines_generators),
                (ClassificationVerdict, _lines_verdict),
                (InverseFailure, _lines_failure))


def check(obj):
    """Confirm an object can be rendered as text.

    :raises: :class:`~multiphase.common.DocumentError` for other objects

    :return: lines generator

    """
    for cls, gen in FORMAT_LINES:
        if isinstance(obj, cls):
            return gen
    if isinstance(obj, list) and all(isinstance(r, TrialReport) for r in obj):
        return _lines_reports
    raise DocumentError("cannot render {!r} as text".format(obj))
