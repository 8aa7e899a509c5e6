"""Functions to serialize charts, fields, forms, and verdicts to documents."""

import os
import json

import yaml

from multiphase import common, settings
from multiphase.common import DocumentError
from multiphase.core.types import (CHART, VECTOR_FIELD, FORM, VVFORM,
                                   GENERATORS, VERDICT, REPORT, NOT_IN_IMAGE,
                                   TrialReport, InverseFailure)
from multiphase.core.chart import Chart
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm)
from multiphase.core.multisymplectic import (HamiltonianGenerators,
                                             ClassificationVerdict)
from multiphase.core.polysymplectic import PolyHamiltonianGenerators

log = common.logger(__name__)


def export(obj, path=None, ext=None, **extras):
    """Export an object as a document.

    :param obj: chart, field, form, generators, verdict, or list of reports
    :param path: output file path (None for text only)
    :param ext: file extension to override the output extension
    :param extras: additional payload entries (e.g. a hamiltonian form)

    :raises: :class:`~multiphase.common.DocumentError` for unknown formats

    :return: path of the created file, or the document text without a path

    """
    ext = ext or (os.path.splitext(path)[-1] if path else None) or \
        settings.DEFAULT_EXT
    dump = check(ext)
    text = dump(serialize(obj, **extras))
    if path is None:
        return text
    log.info("exporting to {}...".format(path))
    return common.write_text(text, path)


def serialize(obj, **extras):
    """Convert an object to a document envelope of plain values."""
    kind, payload = payload_of(obj)
    for key, value in extras.items():
        payload[key] = None if value is None else payload_of(value)[1]
    return {'schema_version': settings.SCHEMA_VERSION,
            'kind': kind,
            'payload': payload}


def payload_of(obj):
    """Get the document kind and payload of an object.

    :raises: :class:`~multiphase.common.DocumentError` for objects that
        have no document form

    """
    for cls, (kind, func) in FORMAT_PAYLOAD:
        if isinstance(obj, cls):
            return kind, func(obj)
    if isinstance(obj, list) and all(isinstance(r, TrialReport) for r in obj):
        return REPORT, {'reports': [report.data for report in obj]}
    raise DocumentError("cannot serialize {!r}".format(obj))


def polynomial_text(poly):
    """Format a polynomial as an exact expression string."""
    return str(poly.as_expr())


def _chart(chart):
    data = {'kind': chart.kind, 'n': chart.n, 'N': chart.N}
    if not chart.extended:
        data['nhat'] = chart.nhat
    return data


def _field(field):
    return {'chart': _chart(field.chart), 'components': field.data}


def _terms(form):
    return [{'indices': list(form.names(index)),
             'coefficient': polynomial_text(coefficient)}
            for index, coefficient in form.items()]


def _form(form):
    return {'chart': _chart(form.chart), 'degree': form.degree,
            'terms': _terms(form)}


def _vvform(w):
    return {'chart': _chart(w.chart), 'degree': w.degree,
            'components': {label: _terms(form) for label, form in w.items()
                           if form}}


def _family(family):
    return {str(key): polynomial_text(value)
            for key, value in sorted(family.items()) if value}


def _generators(g):
    data = {'chart': _chart(g.chart)}
    if isinstance(g, HamiltonianGenerators):
        data['Xmu'] = _family(g.Xmu)
    data['Xi'] = _family(g.Xi)
    data['f0'] = _family(g.f0)
    return data


def _optional(obj):
    return None if obj is None else payload_of(obj)[1]


def _verdict(verdict):
    return {'chart': _chart(verdict.chart),
            'status': verdict.status,
            'generators': _optional(verdict.generators),
            'hamiltonian_form': _optional(verdict.hamiltonian_form),
            'witness': _optional(verdict.witness)}


def _failure(failure):
    return {'chart': _chart(failure.chart),
            'reason': failure.reason,
            'witness': _optional(failure.witness)}


# Mapping from object class to document kind and payload builder
FORMAT_PAYLOAD = ((Chart, (CHART, _chart)),
                  (VectorField, (VECTOR_FIELD, _field)),
                  (DifferentialForm, (FORM, _form)),
                  (VectorValuedForm, (VVFORM, _vvform)),
                  (HamiltonianGenerators, (GENERATORS, _generators)),
                  (PolyHamiltonianGenerators, (GENERATORS, _generators)),
                  (ClassificationVerdict, (VERDICT, _verdict)),
                  (InverseFailure, (NOT_IN_IMAGE, _failure)))


def _dump_json(data):
    return json.dumps(data, indent=settings.INDENT) + '\n'


def _dump_yaml(data):
    return yaml.dump(data, default_flow_style=False, allow_unicode=True,
                     sort_keys=False)


# Mapping from file extension to document writer
FORMAT_TEXT = {'.json': _dump_json,
               '.yml': _dump_yaml,
               '.yaml': _dump_yaml}


def check(ext):
    """Confirm an extension is supported for export.

    :raises: :class:`~multiphase.common.DocumentError` for unknown formats

    :return: document writer

    """
    exts = ', '.join(ext for ext in FORMAT_TEXT)
    msg = "unknown export format: {} (options: {})".format(ext or None, exts)
    exc = DocumentError(msg)
    try:
        func = FORMAT_TEXT[ext]
    except KeyError:
        raise exc from None
    else:
        log.debug("found document writer for: {}".format(ext))
        return func
