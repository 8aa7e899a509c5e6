"""Darboux coordinate charts on extended and ordinary multiphase spaces."""

import re
import functools

import sympy
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import ring as polynomial_ring

from multiphase import common
from multiphase.common import ChartError
from multiphase.core.types import (Coordinate, EXTENDED, ORDINARY, KINDS,
                                   BASE, POSITION, MULTIMOMENTUM, ENERGY)

log = common.logger(__name__)


def base_name(mu):
    """Get the name of the base coordinate x^μ."""
    return "x{}".format(mu)


def position_name(i):
    """Get the name of the position coordinate q^i."""
    return "q{}".format(i)


def momentum_name(i, a):
    """Get the name of the multimomentum coordinate p_i^a."""
    return "p{}_{}".format(i, a)


ENERGY_NAME = 'p'


# expression parsing #########################################################

TOKEN_RE = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+[eE][-+]?\d+)|(\d+)|"
                      r"([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/()]))")


class _ExpressionParser(object):
    """Recursive-descent reader of polynomial expressions in a chart ring.

    Grammar (Python precedence, no function calls)::

        expr   := term (('+' | '-') term)*
        term   := unary (('*' | '/') unary)*
        unary  := ('+' | '-') unary | power
        power  := atom ('**' unary)?
        atom   := integer | coordinate | '(' expr ')'

    Divisors must be nonzero constants and exponents non-negative integers.

    """

    def __init__(self, chart, text):
        self.chart = chart
        self.text = text
        self.tokens = self._tokenize(text)
        self.index = 0

    def _tokenize(self, text):
        tokens = []
        position = 0
        text = text.rstrip()
        while position < len(text):
            match = TOKEN_RE.match(text, position)
            if not match:
                self._fail("invalid polynomial: {!r}".format(self.text))
            real, integer, name, operator = match.groups()
            if real:
                self._fail("floating-point numbers are not exact: "
                           "{!r}".format(self.text))
            if name and not self.chart.has(name):
                self._fail("unknown coordinate '{}' on {}".format(name,
                                                                  self.chart))
            tokens.append(integer or name or operator)
            position = match.end()
        if not tokens:
            self._fail("invalid polynomial: {!r}".format(self.text))
        return tokens

    @staticmethod
    def _fail(message):
        raise ChartError(message)

    def _peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _take(self):
        token = self._peek()
        if token is None:
            self._fail("invalid polynomial: {!r}".format(self.text))
        self.index += 1
        return token

    def _constant(self, value, what):
        if not value.is_ground:
            self._fail("{} must be a constant: {!r}".format(what, self.text))
        return value.LC

    def parse(self):
        """Read the whole text as one polynomial."""
        value = self._expr()
        if self._peek() is not None:
            self._fail("invalid polynomial: {!r}".format(self.text))
        return value

    def _expr(self):
        value = self._term()
        while self._peek() in ('+', '-'):
            if self._take() == '+':
                value = value + self._term()
            else:
                value = value - self._term()
        return value

    def _term(self):
        value = self._unary()
        while self._peek() in ('*', '/'):
            if self._take() == '*':
                value = value * self._unary()
            else:
                divisor = self._constant(self._unary(), "divisor")
                if not divisor:
                    self._fail("division by zero: {!r}".format(self.text))
                value = value * self.chart.ring.ground_new(
                    self.chart.ring.domain.one / divisor)
        return value

    def _unary(self):
        if self._peek() == '-':
            self._take()
            return -self._unary()
        if self._peek() == '+':
            self._take()
            return self._unary()
        return self._power()

    def _power(self):
        value = self._atom()
        if self._peek() == '**':
            self._take()
            exponent = self._constant(self._unary(), "exponent")
            if exponent < 0 or exponent.denominator != 1:
                self._fail("exponent must be a non-negative integer: "
                           "{!r}".format(self.text))
            value = value ** int(exponent.numerator)
        return value

    def _atom(self):
        token = self._take()
        ring = self.chart.ring
        if token == '(':
            value = self._expr()
            if self._take() != ')':
                self._fail("unbalanced parentheses: {!r}".format(self.text))
            return value
        if token.isdigit():
            return ring.ground_new(ring.domain.convert(int(token)))
        if self.chart.has(token):
            return self.chart.gen(token)
        self._fail("invalid polynomial: {!r}".format(self.text))
        return None


class Chart(object):
    """Canonical local coordinates on a multiphase space.

    Coordinates are ordered base, position, multimomentum (lexicographic
    in (i, a)), then energy; this order normalises form multi-indices.

    :param kind: :data:`~multiphase.core.types.EXTENDED` or
        :data:`~multiphase.core.types.ORDINARY`
    :param n: dimension of the base
    :param N: rank (number of position coordinates)
    :param nhat: number of coefficient-basis labels (ordinary charts only,
        defaults to `n`)

    """

    def __init__(self, kind, n, N, nhat=None):
        if kind not in KINDS:
            raise ChartError("unknown chart kind: {}".format(kind))
        for label, value in (('n', n), ('N', N), ('nhat', nhat)):
            if value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, int) \
                    or value < 1:
                msg = "{} must be a positive integer, not {!r}".format(label,
                                                                      value)
                raise ChartError(msg)
        if kind == EXTENDED:
            if nhat not in (None, n):
                raise ChartError("extended charts have nhat = n")
            nhat = None
        elif nhat is None:
            nhat = n
        self.kind = kind
        self.n = n
        self.N = N
        self._nhat = nhat
        coordinates = [Coordinate(base_name(mu), BASE, (mu,))
                       for mu in range(1, n + 1)]
        coordinates += [Coordinate(position_name(i), POSITION, (i,))
                        for i in range(1, N + 1)]
        coordinates += [Coordinate(momentum_name(i, a), MULTIMOMENTUM, (i, a))
                        for i in range(1, N + 1)
                        for a in range(1, self.labels_count + 1)]
        if kind == EXTENDED:
            coordinates.append(Coordinate(ENERGY_NAME, ENERGY))
        self.coordinates = tuple(coordinates)
        self.names = tuple(c.name for c in coordinates)
        self._positions = {name: k for k, name in enumerate(self.names)}
        self.symbols = tuple(sympy.Symbol(name) for name in self.names)
        self.ring = polynomial_ring(self.symbols, QQ)[0]
        log.trace("created {}".format(self))

    def __repr__(self):
        if self.kind == EXTENDED:
            return "Chart('{}', {}, {})".format(self.kind, self.n, self.N)
        return "Chart('{}', {}, {}, nhat={})".format(self.kind, self.n,
                                                      self.N, self.nhat)

    def __str__(self):
        if self.kind == EXTENDED:
            return "extended chart (n={}, N={})".format(self.n, self.N)
        return "ordinary chart (n={}, N={}, nhat={})".format(self.n, self.N,
                                                            self.nhat)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.key == other.key

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        """Get the parameters identifying the chart."""
        return (self.kind, self.n, self.N, self.nhat)

    @property
    def nhat(self):
        """Get the number of coefficient-basis labels (ordinary only)."""
        return self._nhat

    @property
    def labels_count(self):
        """Get the number of upper multimomentum indices."""
        return self.n if self.kind == EXTENDED else self.nhat

    @property
    def labels(self):
        """Get the coefficient-basis labels ê_1..ê_n̂ (ordinary only)."""
        if self.kind != ORDINARY:
            return ()
        return tuple("e{}".format(a) for a in range(1, self.nhat + 1))

    @property
    def dimension(self):
        """Get the number of coordinates."""
        return len(self.names)

    @property
    def extended(self):
        """Determine if the chart is on extended multiphase space."""
        return self.kind == EXTENDED

    def require(self, kind):
        """Ensure the chart has the given kind."""
        if self.kind != kind:
            msg = "expected an {} chart, got {}".format(kind, self)
            raise ChartError(msg)

    # coordinate lookup ######################################################

    def has(self, name):
        """Determine if a coordinate name belongs to the chart."""
        return name in self._positions

    def index(self, name):
        """Get the position of a named coordinate."""
        try:
            return self._positions[name]
        except KeyError:
            msg = "unknown coordinate '{}' on {}".format(name, self)
            raise ChartError(msg) from None

    def x(self, mu):
        """Get the position of x^μ."""
        return self.index(base_name(mu))

    def q(self, i):
        """Get the position of q^i."""
        return self.index(position_name(i))

    def momentum(self, i, a):
        """Get the position of p_i^a."""
        return self.index(momentum_name(i, a))

    @property
    def energy(self):
        """Get the position of the energy coordinate p."""
        self.require(EXTENDED)
        return self.index(ENERGY_NAME)

    @functools.lru_cache(maxsize=None)
    def positions(self, *roles):
        """Get the positions of all coordinates with the given roles."""
        return tuple(k for k, c in enumerate(self.coordinates)
                     if c.role in roles)

    @property
    def base(self):
        """Get the positions of the base coordinates."""
        return self.positions(BASE)

    @property
    def vertical(self):
        """Get the positions of the fiber coordinates."""
        return self.positions(POSITION, MULTIMOMENTUM, ENERGY)

    @property
    def momenta(self):
        """Get the positions of multimomentum and energy coordinates."""
        return self.positions(MULTIMOMENTUM, ENERGY)

    # polynomials ############################################################

    @property
    def gens(self):
        """Get the coordinate functions as ring elements."""
        return self.ring.gens

    def gen(self, name):
        """Get a coordinate function as a ring element."""
        return self.ring.gens[self.index(name)]

    @property
    def zero(self):
        """Get the zero polynomial."""
        return self.ring.zero

    @property
    def one(self):
        """Get the unit polynomial."""
        return self.ring.one

    def poly(self, value):
        """Convert a number, expression, or polynomial to a chart polynomial.

        :param value: int, :class:`sympy.Rational`, sympy expression in the
            chart symbols, expression string, or ring element of this chart

        :raises: :class:`~multiphase.common.ChartError` for polynomials of
            another chart or expressions in foreign symbols

        """
        if hasattr(value, 'ring'):
            if value.ring != self.ring:
                raise ChartError("polynomial from another chart: "
                                 "{}".format(value))
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            value = sympy.Integer(value)
        try:
            if isinstance(value, sympy.Basic):
                return self.ring.from_expr(value)
            return self.ring.ground_new(self.ring.domain.convert(value))
        except (ValueError, TypeError, CoercionFailed) as exc:
            msg = "not a polynomial on {}: {} ({})".format(self, value, exc)
            raise ChartError(msg) from None

    def parse(self, text):
        """Read a polynomial from text such as "3*q1**2/2 - p".

        Only integers, coordinate names of this chart, `+ - * / **` and
        parentheses are accepted; nothing is evaluated.

        :raises: :class:`~multiphase.common.ChartError` for unknown
            coordinates, floating-point numbers, or non-polynomial text

        """
        return _ExpressionParser(self, text).parse()

    def depends_on(self, poly, positions):
        """Determine if a polynomial involves any of the given coordinates."""
        return any(monom[k] for monom in poly.itermonoms() for k in positions)


class Point(object):
    """Exact rational values for every coordinate of a chart.

    :param chart: :class:`Chart` of the point
    :param values: mapping of coordinate name to rational value

    """

    def __init__(self, chart, values):
        self.chart = chart
        missing = [name for name in chart.names if name not in values]
        if missing:
            msg = "point is missing coordinates: {}".format(', '.join(missing))
            raise ChartError(msg)
        for name in values:
            chart.index(name)
        self.values = tuple(sympy.Rational(values[name])
                            for name in chart.names)

    def __repr__(self):
        return "Point({})".format(dict(self.items()))

    def __getitem__(self, name):
        return self.values[self.chart.index(name)]

    def __eq__(self, other):
        return isinstance(other, Point) and \
            (self.chart, self.values) == (other.chart, other.values)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.chart, self.values))

    def items(self):
        """Yield (name, value) pairs in chart order."""
        return zip(self.chart.names, self.values)

    @property
    def domain_values(self):
        """Get the values as elements of the coefficient field."""
        convert = self.chart.ring.domain.from_sympy
        return tuple(convert(value) for value in self.values)


def build_extended_chart(n, N):
    """Create canonical coordinates (x^μ, q^i, p_i^μ, p) on J°*E.

    :param n: dimension of the base
    :param N: number of position coordinates

    :return: :class:`Chart` of dimension (N + 1)(n + 1)

    """
    chart = Chart(EXTENDED, n, N)
    assert chart.dimension == (N + 1) * (n + 1)
    return chart


def build_ordinary_chart(n, N, nhat=None):
    """Create canonical coordinates (x^μ, q^i, p_i^a) on ordinary space.

    :param n: dimension of the base
    :param N: number of position coordinates
    :param nhat: number of coefficient-basis labels (default: `n`)

    :return: :class:`Chart` of dimension n + N + N n̂

    """
    chart = Chart(ORDINARY, n, N, nhat=nhat)
    assert chart.dimension == n + N + N * chart.nhat
    return chart
