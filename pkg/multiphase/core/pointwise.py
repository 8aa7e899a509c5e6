"""Exact pointwise evaluation and linear algebra on forms."""

import sympy

from multiphase import common
from multiphase.common import ChartError
from multiphase.core.forms import VectorValuedForm

log = common.logger(__name__)


def _value(poly, point):
    """Evaluate a polynomial exactly at a point."""
    domain = poly.ring.domain
    return domain.to_sympy(poly(*point.domain_values))


def evaluate_at(a, point):
    """Evaluate every coefficient of a form at a point.

    :param a: :class:`~multiphase.core.forms.DifferentialForm`
    :param point: :class:`~multiphase.core.chart.Point` on the same chart

    :return: dictionary of multi-index (coordinate names) to
        :class:`sympy.Rational`, zero values omitted

    """
    if point.chart != a.chart:
        msg = "point on {} does not match {}".format(point.chart, a.chart)
        raise ChartError(msg)
    values = {}
    for index, coefficient in a.items():
        value = _value(coefficient, point)
        if value:
            values[a.names(index)] = value
    return values


def contraction_matrix(omega, point, directions=None):
    """Build the matrix of v ↦ i_v ω at a point.

    Rows are the (k-1)-multi-indices (with the basis label for vector-valued
    forms) and columns the requested coordinate directions.

    :return: (:class:`sympy.Matrix`, list of directions)

    """
    chart = omega.chart
    if directions is None:
        directions = tuple(range(chart.dimension))
    columns = {position: column for column, position in enumerate(directions)}
    if isinstance(omega, VectorValuedForm):
        parts = omega.items()
    else:
        parts = [(None, omega)]
    rows = {}
    for label, form in parts:
        for index, value in evaluate_at(form, point).items():
            index = tuple(chart.index(name) for name in index)
            for slot, position in enumerate(index):
                if position not in columns:
                    continue
                key = (label, index[:slot] + index[slot + 1:])
                row = rows.setdefault(key, [0] * len(directions))
                row[columns[position]] += -value if slot % 2 else value
    matrix = sympy.Matrix([rows[key] for key in sorted(rows, key=str)])
    return matrix, directions


def kernel_at(omega, point, directions=None):
    """Compute a basis of the kernel of v ↦ i_v ω at a point.

    :param omega: form or vector-valued form (components stacked)
    :param point: :class:`~multiphase.core.chart.Point`
    :param directions: coordinate positions spanning the tangent vectors
        (default: all coordinates)

    :return: list of tuples of :class:`sympy.Rational`, one entry per
        direction; empty when the form is non-degenerate

    """
    matrix, directions = contraction_matrix(omega, point, directions)
    size = len(directions)
    if matrix.rows == 0:
        log.debug("zero form: the kernel is the whole space")
        return [tuple(sympy.Rational(int(row == column))
                      for column in range(size)) for row in range(size)]
    basis = matrix.nullspace()
    log.debug("kernel of dimension {} in {} directions".format(len(basis),
                                                              size))
    return [tuple(sympy.Rational(value) for value in vector)
            for vector in basis]


def is_nondegenerate_at(omega, point, directions=None):
    """Determine if v ↦ i_v ω is injective at a point."""
    return not kernel_at(omega, point, directions)


def pairing_kernel_at(omega, point, directions):
    """Compute the kernel of the restriction u ↦ (i_v i_u ω)_v to directions.

    Both u and v range over the given coordinate directions, so this is the
    kernel of ω seen as a bilinear form on their span (with values in forms
    of degree k-2).

    :return: list of tuples of :class:`sympy.Rational`, one entry per
        direction

    """
    chart = omega.chart
    columns = []
    for position in directions:
        once = omega.contract(position)
        entries = {}
        for other in directions:
            twice = once.contract(other)
            for index, value in evaluate_at(twice, point).items():
                entries[(other, index)] = value
        columns.append(entries)
    keys = sorted(set(key for entries in columns for key in entries), key=str)
    if not keys:
        size = len(directions)
        return [tuple(sympy.Rational(int(row == column))
                      for column in range(size)) for row in range(size)]
    matrix = sympy.Matrix([[entries.get(key, 0) for entries in columns]
                           for key in keys])
    log.debug("pairing matrix {}x{} on {}".format(matrix.rows, matrix.cols,
                                                  chart))
    return [tuple(sympy.Rational(value) for value in vector)
            for vector in matrix.nullspace()]
