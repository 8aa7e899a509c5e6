"""Exact Cartan calculus on polynomial differential forms.

All operations are pure: they build new forms and never modify their
arguments. Coefficients are sparse polynomials over the rationals, so every
identity below holds exactly.

"""

from multiphase import common
from multiphase.common import ChartError, InputError, VerticalityError
from multiphase.core.types import canonical
from multiphase.core.forms import (DifferentialForm, VectorValuedForm,
                                   function, wedge, _check_charts, _accumulate)

log = common.logger(__name__)


def _derivative(a, positions):
    """Differentiate along the given coordinates only."""
    chart = a.chart
    gens = chart.gens
    terms = {}
    for index, coefficient in a.items():
        for position in positions:
            if position in index:
                continue
            partial = coefficient.diff(gens[position])
            if partial:
                sign, new = canonical((position,) + index)
                _accumulate(terms, new, partial * sign)
    return DifferentialForm(chart, a.degree + 1, terms)


def exterior_derivative(a):
    """Compute d(a) = Σ_ξ ∂a_I/∂ξ dξ∧dξ^I."""
    log.trace("d of {!r}".format(a))
    return _derivative(a, range(a.chart.dimension))


def vertical_derivative(a):
    """Compute d_V(a), treating base coordinates as parameters."""
    log.trace("d_V of {!r}".format(a))
    return _derivative(a, a.chart.vertical)


def interior_product(X, a):
    """Compute the graded contraction i_X(a).

    The coordinate in slot j (from 0) of a monomial contributes
    (-1)^j X^ξ, so i_{∂_μ} d^n x = d^n x_μ.

    :raises: :class:`~multiphase.common.ChartError` for a chart mismatch

    """
    chart = _check_charts(X, a)
    if a.degree == 0:
        return DifferentialForm(chart, 0)
    terms = {}
    for index, coefficient in a.items():
        for slot, position in enumerate(index):
            component = X.component(position)
            if component:
                rest = index[:slot] + index[slot + 1:]
                value = component * coefficient
                _accumulate(terms, rest, -value if slot % 2 else value)
    return DifferentialForm(chart, a.degree - 1, terms)


def lie_derivative(X, a):
    """Compute L_X(a) = i_X d(a) + d i_X(a) (Cartan formula)."""
    _check_charts(X, a)
    result = interior_product(X, exterior_derivative(a))
    if a.degree:
        result = result + exterior_derivative(interior_product(X, a))
    return result


def _require_vertical(X):
    """Ensure a vector field has no base components."""
    if not X.is_vertical:
        msg = "vector field is not vertical: {}".format(X)
        raise VerticalityError(msg)


def vertical_lie_derivative(X, a):
    """Compute L_X(a) = i_X d_V(a) + d_V i_X(a) for a vertical field."""
    _check_charts(X, a)
    _require_vertical(X)
    result = interior_product(X, vertical_derivative(a))
    if a.degree:
        result = result + vertical_derivative(interior_product(X, a))
    return result


def poincare_homotopy(a, coordinates=None):
    """Compute the homotopy operator I(a) centred at the origin.

    For a monomial f dξ^I of degree k, with m the total degree of a term of f
    in the scaled coordinates and k_S the number of scaled differentials,
    the term picks up the factor 1/(m + k_S) and
    I(f dξ^I) = Σ_j (-1)^j ξ^{I_j} T(f) dξ^{I∖I_j} over scaled slots j.
    With all coordinates scaled, d I(a) + I d(a) = a for k ≥ 1.

    :param a: form of degree ≥ 1
    :param coordinates: positions scaled by the homotopy (default: all);
        the others are frozen as parameters

    :raises: :class:`~multiphase.common.InputError` for degree-0 forms

    """
    chart = a.chart
    if a.degree == 0:
        raise InputError("the homotopy operator needs a form of degree >= 1")
    if coordinates is None:
        coordinates = range(chart.dimension)
    scaled = frozenset(coordinates)
    ring = chart.ring
    gens = chart.gens
    terms = {}
    for index, coefficient in a.items():
        slots = [slot for slot, position in enumerate(index)
                 if position in scaled]
        if not slots:
            continue
        weighted = ring.from_dict({
            monom: value / ring.domain(len(slots) +
                                       sum(monom[k] for k in scaled))
            for monom, value in coefficient.terms()})
        for slot in slots:
            position = index[slot]
            rest = index[:slot] + index[slot + 1:]
            value = gens[position] * weighted
            _accumulate(terms, rest, -value if slot % 2 else value)
    return DifferentialForm(chart, a.degree - 1, terms)


def vertical_homotopy(a):
    """Compute the homotopy operator scaling only the fiber coordinates.

    d_V I_V(a) + I_V d_V(a) = a − π₀(a), where π₀(a) keeps the terms
    without vertical differentials evaluated at the vertical origin.

    """
    return poincare_homotopy(a, a.chart.vertical)


def compose(poly, images, ring):
    """Substitute polynomials for the variables of a polynomial.

    :param poly: ring element to substitute into
    :param images: one polynomial of `ring` per variable of `poly` (None
        for variables that must not occur)
    :param ring: ring of the images

    :raises: :class:`~multiphase.common.ChartError` when a variable with no
        image occurs

    """
    result = ring.zero
    for monom, value in poly.terms():
        term = ring.ground_new(value)
        for position, power in enumerate(monom):
            if power:
                image = images[position]
                if image is None:
                    name = poly.ring.symbols[position]
                    raise ChartError("'{}' has no image".format(name))
                term *= image ** power
        result += term
    return result


def transfer(poly, chart):
    """Rewrite a polynomial in the ring of another chart by coordinate name.

    :raises: :class:`~multiphase.common.ChartError` when the polynomial
        involves a coordinate the chart lacks

    """
    images = [chart.gen(str(symbol)) if chart.has(str(symbol)) else None
              for symbol in poly.ring.symbols]
    return compose(poly, images, chart.ring)


def pullback(a, images, source):
    """Pull a form back along a polynomial map into its chart.

    :param a: form on the target chart
    :param images: mapping of every target coordinate name to a polynomial
        on the source chart
    :param source: :class:`~multiphase.core.chart.Chart` of the result

    :return: form on `source` of the same degree

    """
    target = a.chart
    missing = [name for name in target.names if name not in images]
    if missing:
        msg = "pull-back needs images of: {}".format(', '.join(missing))
        raise ChartError(msg)
    polys = [source.poly(images[name]) for name in target.names]
    differentials = {}
    result = DifferentialForm(source, a.degree)
    for index, coefficient in a.items():
        term = function(source, compose(coefficient, polys, source.ring))
        for position in index:
            if position not in differentials:
                differentials[position] = exterior_derivative(
                    function(source, polys[position]))
            term = wedge(term, differentials[position])
        result = result + term
    return result


# vector-valued forms ########################################################


def interior_product_vvf(X, w):
    """Contract every component of a vector-valued form."""
    _check_charts(X, w)
    return w.map(lambda form: interior_product(X, form))


def vertical_derivative_vvf(w):
    """Apply d_V to every component (the basis ê_a is constant)."""
    return w.map(vertical_derivative)


def vertical_homotopy_vvf(w):
    """Apply the vertical homotopy operator to every component."""
    return w.map(vertical_homotopy)


def lie_derivative_vvf(X, w):
    """Compute L_X componentwise with the vertical Cartan formula.

    :raises: :class:`~multiphase.common.VerticalityError` for a
        non-vertical field

    """
    _check_charts(X, w)
    _require_vertical(X)
    return w.map(lambda form: vertical_lie_derivative(X, form))


def is_vector_valued(obj):
    """Determine if an object is a vector-valued form."""
    return isinstance(obj, VectorValuedForm)
