"""Functions to parse documents into charts, fields, forms, and verdicts."""

import os

from multiphase import common, settings
from multiphase.common import ChartError, DocumentError
from multiphase.core.types import (EXTENDED, ORDINARY, STATUSES,
                                   NOT_HAMILTONIAN, CHART, VECTOR_FIELD, FORM,
                                   VVFORM, GENERATORS, VERDICT, REPORT,
                                   NOT_IN_IMAGE, DOCUMENT_KINDS, Envelope,
                                   TrialReport, InverseFailure, canonical,
                                   parse_rational)
from multiphase.core.chart import Chart
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm)
from multiphase.core.multisymplectic import (HamiltonianGenerators,
                                             ClassificationVerdict)
from multiphase.core.polysymplectic import (PolyHamiltonianGenerators,
                                            PolyClassificationVerdict)

log = common.logger(__name__)


def import_file(path, chart=None):
    """Parse a document file.

    :param path: path to a JSON or YAML document
    :param chart: chart to use (and check) for embedded chart payloads

    :return: :class:`~multiphase.core.types.Envelope`

    """
    ext = os.path.splitext(path)[-1]
    check(ext)
    log.info("reading {}...".format(path))
    text = common.read_text(path)
    return parse_document(text, path=path, chart=chart)


def parse_document(text, path=None, chart=None):
    """Parse and validate a document.

    :param text: UTF-8 bytes or string of JSON (or YAML)
    :param path: source name for error messages
    :param chart: chart that embedded chart payloads must match (and that
        is used when a payload has no chart)

    :raises: :class:`~multiphase.common.DocumentError` for malformed or
        invalid documents

    :return: :class:`~multiphase.core.types.Envelope`

    """
    if isinstance(text, bytes):
        try:
            text = text.decode('utf-8')
        except UnicodeDecodeError:
            raise DocumentError("not UTF-8 text", location=path) from None
    data = common.load_yaml(text, path)
    version = data.get('schema_version')
    if str(version) != settings.SCHEMA_VERSION:
        msg = "unsupported schema version: {!r}".format(version)
        raise DocumentError(msg, location=_at(path, 'schema_version'))
    kind = data.get('kind')
    if kind not in DOCUMENT_KINDS:
        msg = "unknown document kind: {!r} (options: {})".format(
            kind, ', '.join(DOCUMENT_KINDS))
        raise DocumentError(msg, location=_at(path, 'kind'))
    payload = _mapping(data.get('payload'), _at(path, 'payload'))
    parse = FORMAT_PAYLOAD[kind]
    value, extras = parse(payload, _at(path, 'payload'), chart)
    log.debug("parsed {} document".format(kind))
    return Envelope(kind, value, extras, schema_version=str(version))


# helpers ####################################################################


def _at(location, key):
    """Extend a document location."""
    if location is None:
        return str(key)
    if isinstance(key, int):
        return "{}[{}]".format(location, key)
    return "{}.{}".format(location, key)


def _mapping(value, location):
    if not isinstance(value, dict):
        raise DocumentError("expected a mapping", location=location)
    return value


def _sequence(value, location):
    if not isinstance(value, list):
        raise DocumentError("expected a list", location=location)
    return value


def _integer(value, location):
    if isinstance(value, bool) or not isinstance(value, int):
        msg = "expected an integer, got {!r}".format(value)
        raise DocumentError(msg, location=location)
    return value


def _label_index(key, location):
    """Convert a generator key ("1", 1) to an integer index."""
    try:
        return int(str(key))
    except ValueError:
        raise DocumentError("invalid index {!r}".format(key),
                            location=location) from None


def parse_chart(payload, location=None, chart=None):
    """Convert a chart payload to a chart.

    :param payload: {"kind": ..., "n": ..., "N": ..., "nhat": ...}
    :param chart: chart the payload must agree with

    """
    payload = _mapping(payload, location)
    kind = payload.get('kind')
    if kind not in (EXTENDED, ORDINARY):
        msg = "unknown chart kind: {!r}".format(kind)
        raise DocumentError(msg, location=_at(location, 'kind'))
    n = _integer(payload.get('n'), _at(location, 'n'))
    N = _integer(payload.get('N'), _at(location, 'N'))  # pylint: disable=C0103
    nhat = payload.get('nhat')
    if nhat is not None:
        nhat = _integer(nhat, _at(location, 'nhat'))
    try:
        parsed = Chart(kind, n, N, nhat=nhat)
    except ChartError as exc:
        raise DocumentError(str(exc), location=location) from None
    if chart is not None and parsed != chart:
        msg = "document chart {} does not match {}".format(parsed, chart)
        raise DocumentError(msg, location=location)
    return parsed


def _embedded_chart(payload, location, chart):
    """Get the chart of a payload (embedded or supplied)."""
    if 'chart' in payload:
        return parse_chart(payload['chart'], _at(location, 'chart'), chart)
    if chart is None:
        raise DocumentError("missing chart", location=location)
    return chart


def parse_polynomial(value, chart, location=None):
    """Convert an expression string or a term list to a chart polynomial.

    Accepted values: an integer, a string such as ``"3*q1**2*x1/2 - p"``,
    or a list of ``{"coefficient": "num/den", "powers": {name: k}}`` terms.

    :raises: :class:`~multiphase.common.DocumentError` for unknown
        coordinates, floating-point numbers, or non-polynomial expressions

    """
    if isinstance(value, bool):
        raise DocumentError("expected a polynomial, got {}".format(value),
                            location=location)
    if isinstance(value, int):
        return chart.poly(value)
    if isinstance(value, list):
        return _parse_terms(value, chart, location)
    if not isinstance(value, str):
        msg = "expected a polynomial, got {!r}".format(value)
        raise DocumentError(msg, location=location)
    try:
        return chart.parse(value)
    except ChartError as exc:
        raise DocumentError(str(exc), location=location) from None


def _parse_terms(terms, chart, location):
    result = chart.zero
    for position, term in enumerate(terms):
        where = _at(location, position)
        term = _mapping(term, where)
        coefficient = parse_rational(term.get('coefficient', 1),
                                     _at(where, 'coefficient'))
        monomial = chart.ring.ground_new(
            chart.ring.domain.from_sympy(coefficient))
        powers = _mapping(term.get('powers', {}), _at(where, 'powers'))
        for name, power in sorted(powers.items()):
            if not chart.has(name):
                msg = "unknown coordinate '{}' on {}".format(name, chart)
                raise DocumentError(msg, location=_at(where, 'powers'))
            power = _integer(power, _at(_at(where, 'powers'), name))
            if power < 0:
                msg = "negative power of '{}'".format(name)
                raise DocumentError(msg, location=_at(where, 'powers'))
            monomial *= chart.gen(name) ** power
        result += monomial
    return result


def _parse_field(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    where = _at(location, 'components')
    components = {}
    for name, value in _mapping(payload.get('components', {}), where).items():
        if not chart.has(name):
            msg = "unknown coordinate '{}' on {}".format(name, chart)
            raise DocumentError(msg, location=where)
        components[name] = parse_polynomial(value, chart, _at(where, name))
    return VectorField(chart, components)


def _parse_terms_form(terms, degree, chart, location):
    """Convert a list of {indices, coefficient} terms to a form."""
    result = {}
    for position, term in enumerate(_sequence(terms, location)):
        where = _at(location, position)
        term = _mapping(term, where)
        names = _sequence(term.get('indices', []), _at(where, 'indices'))
        if len(names) != degree:
            msg = "multi-index {} does not have length {}".format(names,
                                                                 degree)
            raise DocumentError(msg, location=_at(where, 'indices'))
        indices = []
        for name in names:
            if not isinstance(name, str) or not chart.has(name):
                msg = "unknown coordinate '{}' on {}".format(name, chart)
                raise DocumentError(msg, location=_at(where, 'indices'))
            indices.append(chart.index(name))
        sign, index = canonical(tuple(indices))
        if not sign:
            msg = "multi-index {} is not strictly increasing".format(names)
            raise DocumentError(msg, location=_at(where, 'indices'))
        value = parse_polynomial(term.get('coefficient', 1), chart,
                                 _at(where, 'coefficient'))
        if index in result:
            result[index] = result[index] + value * sign
        else:
            result[index] = value * sign
    return DifferentialForm(chart, degree, result)


def _parse_form(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    degree = _integer(payload.get('degree'), _at(location, 'degree'))
    if not 0 <= degree <= chart.dimension:
        msg = "degree {} out of range for {}".format(degree, chart)
        raise DocumentError(msg, location=_at(location, 'degree'))
    return _parse_terms_form(payload.get('terms', []), degree, chart,
                             _at(location, 'terms'))


def _parse_vvform(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    degree = _integer(payload.get('degree'), _at(location, 'degree'))
    if not chart.labels:
        msg = "vector-valued forms need an ordinary chart, got {}".format(
            chart)
        raise DocumentError(msg, location=location)
    where = _at(location, 'components')
    components = {}
    for label, terms in _mapping(payload.get('components', {}),
                                 where).items():
        if label not in chart.labels:
            msg = "unknown basis label '{}'".format(label)
            raise DocumentError(msg, location=where)
        components[label] = _parse_terms_form(terms, degree, chart,
                                              _at(where, label))
    return VectorValuedForm(chart, degree, components)


def _parse_family(payload, key, chart, location):
    where = _at(location, key)
    return {_label_index(index, where):
            parse_polynomial(value, chart, _at(where, index))
            for index, value in _mapping(payload.get(key, {}), where).items()}


def _parse_generators(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    Xi = _parse_family(payload, 'Xi', chart, location)  # pylint: disable=C0103
    f0 = _parse_family(payload, 'f0', chart, location)
    try:
        if chart.extended:
            Xmu = _parse_family(payload, 'Xmu', chart, location)  # pylint: disable=C0103
            return HamiltonianGenerators(chart, Xmu=Xmu, Xi=Xi, f0=f0)
        if 'Xmu' in payload:
            raise DocumentError("ordinary generators have no Xmu",
                                location=_at(location, 'Xmu'))
        return PolyHamiltonianGenerators(chart, Xi=Xi, f0=f0)
    except ChartError as exc:
        raise DocumentError(str(exc), location=location) from None


def _parse_optional(payload, key, location, chart, vector_valued):
    if payload.get(key) is None:
        return None
    parse = _parse_vvform if vector_valued else _parse_form
    return parse(payload[key], _at(location, key), chart)


def _parse_verdict(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    status = payload.get('status')
    if status not in STATUSES:
        msg = "unknown status: {!r} (options: {})".format(status,
                                                          ', '.join(STATUSES))
        raise DocumentError(msg, location=_at(location, 'status'))
    generators = None
    if payload.get('generators') is not None:
        generators = _parse_generators(payload['generators'],
                                       _at(location, 'generators'), chart)
    ordinary = not chart.extended
    form = _parse_optional(payload, 'hamiltonian_form', location, chart,
                           ordinary)
    witness = _parse_optional(payload, 'witness', location, chart, ordinary)
    if (status == NOT_HAMILTONIAN) != (witness is not None):
        msg = "a witness is required exactly for non-hamiltonian verdicts"
        raise DocumentError(msg, location=_at(location, 'witness'))
    if ordinary:
        return PolyClassificationVerdict(chart, status, generators=generators,
                                         hamiltonian_section=form,
                                         witness=witness)
    return ClassificationVerdict(chart, status, generators=generators,
                                 hamiltonian_form=form, witness=witness)


def _parse_failure(payload, location, chart):
    payload = _mapping(payload, location)
    chart = _embedded_chart(payload, location, chart)
    reason = payload.get('reason')
    if not isinstance(reason, str):
        raise DocumentError("expected a reason",
                            location=_at(location, 'reason'))
    witness = _parse_optional(payload, 'witness', location, chart,
                              not chart.extended)
    return InverseFailure(chart, reason, witness)


def _parse_report(payload, location, _):
    reports = []
    where = _at(location, 'reports')
    for position, data in enumerate(_sequence(payload.get('reports'), where)):
        data = _mapping(data, _at(where, position))
        try:
            reports.append(TrialReport(data['suite'], data['seed'],
                                       data['attempted'], data['passed'],
                                       data.get('failures', [])))
        except (KeyError, AssertionError):
            raise DocumentError("invalid report",
                                location=_at(where, position)) from None
    return reports


def _with_extras(parse, *keys):
    """Wrap a payload parser returning no extras, parsing optional entries."""
    def wrapped(payload, location, chart):
        value = parse(payload, location, chart)
        extras = {}
        for key in keys:
            if payload.get(key) is not None:
                nested = _mapping(payload[key], _at(location, key))
                vector_valued = 'components' in nested
                extras[key] = _parse_optional(payload, key, location,
                                              value.chart, vector_valued)
        return value, extras
    return wrapped


# Mapping from document kind to payload parser
FORMAT_PAYLOAD = {CHART: _with_extras(parse_chart),
                  VECTOR_FIELD: _with_extras(_parse_field, 'hamiltonian_form'),
                  FORM: _with_extras(_parse_form),
                  VVFORM: _with_extras(_parse_vvform),
                  GENERATORS: _with_extras(_parse_generators),
                  VERDICT: _with_extras(_parse_verdict),
                  REPORT: _with_extras(_parse_report),
                  NOT_IN_IMAGE: _with_extras(_parse_failure)}

# Mapping from file extension to document syntax
FORMAT_FILE = {'.json': 'JSON',
               '.yml': 'YAML',
               '.yaml': 'YAML'}


def check(ext):
    """Confirm an extension is supported for import.

    :raises: :class:`~multiphase.common.DocumentError` for unknown formats

    :return: name of the document syntax

    """
    exts = ', '.join(ext for ext in FORMAT_FILE)
    msg = "unknown import format: {} (options: {})".format(ext or None, exts)
    exc = DocumentError(msg)
    try:
        syntax = FORMAT_FILE[ext]
    except KeyError:
        raise exc from None
    else:
        log.debug("found {} reader for: {}".format(syntax, ext))
        return syntax
