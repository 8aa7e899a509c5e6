"""Common classes and functions for the `multiphase.core` package."""

import re
import functools

import sympy
from sympy.combinatorics import Permutation

from multiphase import common
from multiphase.common import DocumentError

log = common.logger(__name__)

# chart kinds
EXTENDED = 'extended'
ORDINARY = 'ordinary'
KINDS = (EXTENDED, ORDINARY)

# coordinate roles
BASE = 'base'
POSITION = 'position'
MULTIMOMENTUM = 'multimomentum'
ENERGY = 'energy'
ROLES = (BASE, POSITION, MULTIMOMENTUM, ENERGY)

# verdict statuses
NOT_HAMILTONIAN = 'not_hamiltonian'
LOCALLY_HAMILTONIAN = 'locally_hamiltonian'
EXACT_HAMILTONIAN = 'exact_hamiltonian'
STATUSES = (NOT_HAMILTONIAN, LOCALLY_HAMILTONIAN, EXACT_HAMILTONIAN)

# document kinds
CHART = 'chart'
VECTOR_FIELD = 'vector_field'
FORM = 'form'
VVFORM = 'vvform'
GENERATORS = 'generators'
VERDICT = 'verdict'
REPORT = 'report'
NOT_IN_IMAGE = 'not_in_image'
DOCUMENT_KINDS = (CHART, VECTOR_FIELD, FORM, VVFORM, GENERATORS, VERDICT,
                  REPORT, NOT_IN_IMAGE)

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class Coordinate(object):
    """A named chart coordinate with its role and indices.

    :param name: coordinate name (e.g. ``x1``, ``q2``, ``p2_1``, ``p``)
    :param role: one of :data:`ROLES`
    :param indices: (μ,) for base, (i,) for position, (i, a) for momenta

    """

    __slots__ = ('name', 'role', 'indices')

    def __init__(self, name, role, indices=()):
        assert role in ROLES
        self.name = name
        self.role = role
        self.indices = tuple(indices)

    def __repr__(self):
        return "Coordinate('{}', '{}')".format(self.name, self.role)

    def __str__(self):
        return self.name

    def __eq__(self, other):
        return (isinstance(other, Coordinate) and
                (self.name, self.role) == (other.name, other.role))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.name, self.role))

    @property
    def vertical(self):
        """Determine if the coordinate is a fiber coordinate."""
        return self.role != BASE


@functools.lru_cache(maxsize=65536)
def canonical(indices):
    """Sort a tuple of coordinate positions into a multi-index.

    :param indices: tuple of integer coordinate positions

    :return: (sign, strictly increasing tuple), sign 0 for repeats

    >>> canonical((2, 0, 1))
    (1, (0, 1, 2))

    >>> canonical((1, 0))
    (-1, (0, 1))

    """
    ordered = tuple(sorted(indices))
    if len(set(ordered)) != len(ordered):
        return 0, ordered
    if len(ordered) < 2:
        return 1, ordered
    rank = {value: position for position, value in enumerate(ordered)}
    permutation = Permutation([rank[value] for value in indices])
    return permutation.signature(), ordered


def parse_rational(value, location=None):
    """Convert a document value to an exact rational.

    :param value: integer or string "num/den"
    :param location: document location for error messages

    :return: :class:`sympy.Rational` in canonical reduced form

    """
    if isinstance(value, bool):
        raise DocumentError("expected a rational, got {}".format(value),
                            location=location)
    if isinstance(value, int):
        return sympy.Rational(value)
    match = RATIONAL_RE.match(str(value))
    if not match:
        msg = "invalid rational: {!r}".format(value)
        raise DocumentError(msg, location=location)
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise DocumentError("zero denominator: {!r}".format(value),
                            location=location)
    return sympy.Rational(int(numerator), int(denominator or 1))


def format_rational(value):
    """Convert an exact rational to its document string ("num/den").

    >>> format_rational(sympy.Rational(6, 4))
    '3/2'

    >>> format_rational(sympy.Rational(-2))
    '-2'

    """
    value = sympy.Rational(value)
    if value.q == 1:
        return str(value.p)
    return "{}/{}".format(value.p, value.q)


class Envelope(object):
    """Parsed document: its kind, the object it holds, and extra entries.

    :param kind: one of :data:`DOCUMENT_KINDS`
    :param value: chart, field, form, generators, verdict, or reports
    :param extras: additional parsed objects keyed by payload entry

    """

    def __init__(self, kind, value, extras=None, schema_version="1"):
        self.kind = kind
        self.value = value
        self.extras = extras or {}
        self.schema_version = schema_version

    def __repr__(self):
        return "Envelope('{}', {!r})".format(self.kind, self.value)

    def __eq__(self, other):
        return (isinstance(other, Envelope) and
                (self.kind, self.value, self.extras) ==
                (other.kind, other.value, other.extras))

    def __ne__(self, other):
        return not self == other


class TrialReport(object):
    """Outcome of one verification suite.

    :param suite: suite name
    :param seed: root seed of the run
    :param attempted: number of trials run
    :param passed: number of trials without failures
    :param failures: reproduction records (dictionaries of trial, child
        seed, check, chart, serialized inputs, and witness)

    """

    def __init__(self, suite, seed, attempted=0, passed=0, failures=None):
        assert passed <= attempted
        self.suite = suite
        self.seed = seed
        self.attempted = attempted
        self.passed = passed
        self.failures = list(failures or [])

    def __repr__(self):
        return "TrialReport('{}', {}/{})".format(self.suite, self.passed,
                                                self.attempted)

    def __eq__(self, other):
        return (isinstance(other, TrialReport) and
                self.data == other.data)

    def __ne__(self, other):
        return not self == other

    @property
    def ok(self):
        """Determine if every trial passed."""
        return self.passed == self.attempted and not self.failures

    @property
    def data(self):
        """Get the report as a dictionary of plain values."""
        return {'suite': self.suite,
                'seed': self.seed,
                'attempted': self.attempted,
                'passed': self.passed,
                'failures': self.failures}


class InverseFailure(object):
    """Record of a form that is not the contraction of any vector field.

    :param chart: chart of the form
    :param reason: explanation
    :param witness: unmatched monomial (a form, or a vector-valued form on
        ordinary charts), or None when components disagree

    """

    def __init__(self, chart, reason, witness=None):
        self.chart = chart
        self.reason = reason
        self.witness = witness

    def __repr__(self):
        return "InverseFailure({!r})".format(self.reason)

    def __eq__(self, other):
        return (isinstance(other, InverseFailure) and
                (self.chart, self.reason, self.witness) ==
                (other.chart, other.reason, other.witness))

    def __ne__(self, other):
        return not self == other
