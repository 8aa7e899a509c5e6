"""Hamiltonian vector fields on ordinary multiphase space.

On an ordinary chart (x^μ, q^i, p_i^a) the polycanonical forms take values
in the coefficient basis ê_a::

    θ̂ = p_i^a dq^i ⊗ ê_a
    ω̂ = dq^i∧dp_i^a ⊗ ê_a

and only vertical fields are considered. A vertical field is locally
hamiltonian when d_V(i_X ω̂) = 0 and exact hamiltonian when L_X θ̂ = 0.

"""

import functools

from multiphase import common, settings
from multiphase.common import (ChartError, GeneratorError, InputError,
                               InvariantBreach, NotInImage, VerticalityError)
from multiphase.core.types import (ORDINARY, NOT_HAMILTONIAN,
                                   LOCALLY_HAMILTONIAN, EXACT_HAMILTONIAN)
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm, differential, function,
                                   wedge, _check_charts)
from multiphase.core.calculus import (interior_product_vvf,
                                      vertical_derivative_vvf,
                                      vertical_homotopy_vvf,
                                      lie_derivative_vvf)
from multiphase.core.multisymplectic import ClassificationVerdict

log = common.logger(__name__)


class PolyHamiltonianGenerators(object):
    """Polynomials X^i and f_0^a generating a vertical hamiltonian field.

    :param chart: ordinary :class:`~multiphase.core.chart.Chart`
    :param Xi: mapping i → X^i (missing entries are zero)
    :param f0: mapping a → f_0^a

    """

    def __init__(self, chart, Xi=None, f0=None):  # pylint: disable=C0103
        chart.require(ORDINARY)
        self.chart = chart
        self.Xi = _family(chart, 'X^i', Xi, chart.N)  # pylint: disable=C0103
        self.f0 = _family(chart, 'f0', f0, chart.nhat)

    def __repr__(self):
        return "PolyHamiltonianGenerators({!r}, Xi={}, f0={})".format(
            self.chart,
            {i: str(v.as_expr()) for i, v in self.Xi.items() if v},
            {a: str(v.as_expr()) for a, v in self.f0.items() if v})

    def __eq__(self, other):
        return (isinstance(other, PolyHamiltonianGenerators) and
                self.chart == other.chart and
                (self.Xi, self.f0) == (other.Xi, other.f0))

    def __ne__(self, other):
        return not self == other

    def validate(self):
        """Ensure no generator depends on the multimomenta.

        :raises: :class:`~multiphase.common.GeneratorError`

        """
        chart = self.chart
        for label, family in (('X^q', self.Xi), ('f0^', self.f0)):
            for key, poly in sorted(family.items()):
                if chart.depends_on(poly, chart.momenta):
                    msg = "{}{} depends on the multimomenta: {}".format(
                        label, key, poly.as_expr())
                    raise GeneratorError(msg)

    @property
    def valid(self):
        """Determine if the generators satisfy the normal form."""
        try:
            self.validate()
        except GeneratorError:
            return False
        return True


class PolyClassificationVerdict(ClassificationVerdict):
    """Outcome of classifying a vertical field on an ordinary chart.

    The witness is a vector-valued form holding one nonzero monomial of
    d_V(i_X ω̂).

    """

    def __init__(self, chart, status, generators=None,
                 hamiltonian_section=None, witness=None):
        super().__init__(chart, status, generators=generators,
                         hamiltonian_form=hamiltonian_section,
                         witness=witness)

    @property
    def hamiltonian_section(self):
        """Get the degree-0 section f = f^a ê_a with i_X ω̂ = d_V f."""
        return self.hamiltonian_form


def _family(chart, label, values, size):
    values = dict(values or {})
    unknown = [key for key in values if key not in range(1, size + 1)]
    if unknown:
        msg = "{} has no index {} on {}".format(label, unknown[0], chart)
        raise GeneratorError(msg)
    return {key: chart.poly(values.get(key, 0)) for key in range(1, size + 1)}


def _labels(chart):
    """Get (a, label) pairs of the coefficient basis."""
    return list(enumerate(chart.labels, start=1))


def _require_vertical(X):
    chart = X.chart
    chart.require(ORDINARY)
    if not X.is_vertical:
        raise VerticalityError("vector field is not vertical: {}".format(X))
    return chart


def _partial(chart, poly, position):
    return poly.diff(chart.gens[position])


# canonical structure ########################################################


@functools.lru_cache(maxsize=None)
def canonical_theta_hat(chart):
    """Create θ̂ = p_i^a dq^i ⊗ ê_a."""
    chart.require(ORDINARY)
    gens = chart.gens
    components = {}
    for a, label in _labels(chart):
        form = DifferentialForm(chart, 1)
        for i in range(1, chart.N + 1):
            form = form + differential(chart, chart.q(i)).scale(
                gens[chart.momentum(i, a)])
        components[label] = form
    return VectorValuedForm(chart, 1, components)


@functools.lru_cache(maxsize=None)
def canonical_omega_hat(chart):
    """Create ω̂ = dq^i∧dp_i^a ⊗ ê_a."""
    chart.require(ORDINARY)
    components = {}
    for a, label in _labels(chart):
        form = DifferentialForm(chart, 2)
        for i in range(1, chart.N + 1):
            form = form + wedge(differential(chart, chart.q(i)),
                                differential(chart, chart.momentum(i, a)))
        components[label] = form
    return VectorValuedForm(chart, 2, components)


def contraction_omega_hat(X):
    """Expand i_X ω̂ = −X_i^a dq^i ⊗ ê_a + X^i dp_i^a ⊗ ê_a.

    :raises: :class:`~multiphase.common.VerticalityError` for a
        non-vertical field

    """
    chart = _require_vertical(X)
    components = {}
    for a, label in _labels(chart):
        terms = {}
        for i in range(1, chart.N + 1):
            terms[(chart.q(i),)] = -X.component(chart.momentum(i, a))
            terms[(chart.momentum(i, a),)] = X.component(chart.q(i))
        components[label] = DifferentialForm(chart, 1, terms)
    return VectorValuedForm(chart, 1, components)


def contraction_theta_hat(X):
    """Expand i_X θ̂ = X^i p_i^a ê_a."""
    chart = _require_vertical(X)
    gens = chart.gens
    components = {}
    for a, label in _labels(chart):
        value = chart.zero
        for i in range(1, chart.N + 1):
            value += X.component(chart.q(i)) * gens[chart.momentum(i, a)]
        components[label] = function(chart, value)
    return VectorValuedForm(chart, 0, components)


# construction ###############################################################


def construct_polyhamiltonian_vf(g, chart=None):
    """Build the vertical field with X_i^a = −p_j^a ∂X^j/∂q^i + ∂f_0^a/∂q^i.

    :param g: :class:`PolyHamiltonianGenerators`
    :param chart: chart of the result (default: the generators' chart)

    :raises: :class:`~multiphase.common.GeneratorError` for
        momentum-dependent generators

    """
    chart = chart or g.chart
    if chart != g.chart:
        raise ChartError("generators on {} used on {}".format(g.chart, chart))
    g.validate()
    gens = chart.gens
    components = {}
    for i in range(1, chart.N + 1):
        qi = chart.q(i)
        components[qi] = g.Xi[i]
        for a in range(1, chart.nhat + 1):
            value = _partial(chart, g.f0[a], qi)
            for j in range(1, chart.N + 1):
                value -= gens[chart.momentum(j, a)] * \
                    _partial(chart, g.Xi[j], qi)
            components[chart.momentum(i, a)] = value
    X = VectorField(chart, components)
    log.debug("constructed {}".format(X))
    return X


def hamiltonian_section_components(X, g):
    """Compute f^a = p_i^a X^i − f_0^a as a degree-0 vector-valued form."""
    chart = _check_charts(X, g)
    gens = chart.gens
    components = {}
    for a, label in _labels(chart):
        value = -g.f0[a]
        for i in range(1, chart.N + 1):
            value += gens[chart.momentum(i, a)] * g.Xi[i]
        components[label] = function(chart, value)
    return VectorValuedForm(chart, 0, components)


def hamiltonian_section_of(X, g):
    """Compute the hamiltonian section f with i_X ω̂ = d_V f.

    :raises: :class:`~multiphase.common.GeneratorError` when the generators
        do not describe the field

    """
    section = hamiltonian_section_components(X, g)
    residual = contraction_omega_hat(X) - vertical_derivative_vvf(section)
    if residual:
        msg = "generators do not match the field: i_X omega_hat - d_V f = " \
              "{}".format(residual)
        raise GeneratorError(msg)
    return section


def gauge_equivalent_poly(g1, g2, chart=None):
    """Determine if two generator sets produce the same vertical field."""
    chart = chart or g1.chart
    if g1.chart != chart or g2.chart != chart:
        raise ChartError("generators on different charts")
    if g1.Xi != g2.Xi:
        return False
    for a in range(1, chart.nhat + 1):
        difference = g1.f0[a] - g2.f0[a]
        for i in range(1, chart.N + 1):
            if _partial(chart, difference, chart.q(i)):
                return False
    return True


# classification #############################################################


def _witness(w):
    """Get one nonzero monomial of a vector-valued form."""
    for label, form in w.items():
        if form:
            index, coefficient = form.leading()
            monomial = DifferentialForm(w.chart, w.degree, {index: coefficient})
            return VectorValuedForm(w.chart, w.degree, {label: monomial},
                                    labels=w.labels)
    return None


def classify_vertical(X):
    """Decide whether a vertical field on an ordinary chart is hamiltonian.

    The field is locally hamiltonian iff d_V(i_X ω̂) = 0 componentwise and
    exact hamiltonian iff L_X θ̂ = 0. The hamiltonian section is the
    vertical homotopy primitive of i_X ω̂, which vanishes at the vertical
    origin; f_0^a = p_i^a X^i − f^a.

    :return: :class:`PolyClassificationVerdict`

    :raises: :class:`~multiphase.common.VerticalityError` for a
        non-vertical field, :class:`~multiphase.common.InvariantBreach` when
        the recovered generators do not reproduce the field

    """
    chart = _require_vertical(X)
    contraction = interior_product_vvf(X, canonical_omega_hat(chart))
    closure = vertical_derivative_vvf(contraction)
    if closure:
        witness = _witness(closure)
        log.info("not hamiltonian: d_V(i_X omega_hat) contains "
                 "{}".format(witness))
        return PolyClassificationVerdict(chart, NOT_HAMILTONIAN,
                                         witness=witness)

    exact = lie_derivative_vvf(X, canonical_theta_hat(chart)).is_zero
    status = EXACT_HAMILTONIAN if exact else LOCALLY_HAMILTONIAN
    log.info("{}: {}".format(status, X))
    section = vertical_homotopy_vvf(contraction)

    Xi = {i: X.component(chart.q(i)) for i in range(1, chart.N + 1)}  # pylint: disable=C0103
    if not PolyHamiltonianGenerators(chart, Xi=Xi).valid:
        if chart.nhat == 1:
            log.info("hamiltonian outside the generator normal form "
                     "(symplectic fibres)")
            return PolyClassificationVerdict(chart, status,
                                             hamiltonian_section=section)
        msg = "closed contraction with generators outside the normal form: " \
              "{}".format(X)
        raise InvariantBreach(msg)

    gens = chart.gens
    f0 = {}
    for a, label in _labels(chart):
        value = -section.component(label).coefficient(())
        for i in range(1, chart.N + 1):
            value += gens[chart.momentum(i, a)] * Xi[i]
        f0[a] = value
    g = PolyHamiltonianGenerators(chart, Xi=Xi, f0=f0)
    if settings.CROSS_CHECK:
        _cross_check(X, g, section, contraction)
    return PolyClassificationVerdict(chart, status, generators=g,
                                     hamiltonian_section=section)


def _cross_check(X, g, section, contraction):
    """Ensure recovered generators reproduce the field and its section."""
    if not g.valid:
        raise InvariantBreach("recovered f0 is outside the normal form: "
                              "{!r}".format(g))
    rebuilt = construct_polyhamiltonian_vf(g)
    if rebuilt != X:
        msg = "recovered generators rebuild {} instead of {}".format(rebuilt,
                                                                    X)
        raise InvariantBreach(msg)
    if hamiltonian_section_components(X, g) != section:
        raise InvariantBreach("recovered section differs from the primitive")
    if vertical_derivative_vvf(section) != contraction:
        raise InvariantBreach("section does not satisfy i_X omega_hat = d_V f")
    log.debug("cross-check passed")


# inverse problem ############################################################


def solve_inverse_poly(eta):
    """Solve i_X ω̂ = η for a vertical field X.

    :param eta: :class:`~multiphase.core.forms.VectorValuedForm` of
        degree 1 on an ordinary chart

    :raises: :class:`~multiphase.common.NotInImage` when X^i disagrees
        across labels or η has terms no contraction produces

    """
    chart = eta.chart
    chart.require(ORDINARY)
    if eta.degree != 1:
        raise InputError("expected a vector-valued 1-form, got degree "
                         "{}".format(eta.degree))
    components = {}
    for i in range(1, chart.N + 1):
        candidates = []
        for a, label in _labels(chart):
            form = eta.component(label)
            components[chart.momentum(i, a)] = \
                -form.coefficient((chart.q(i),))
            candidates.append(form.coefficient((chart.momentum(i, a),)))
        first = candidates[0]
        for value in candidates[1:]:
            if value != first:
                msg = "inconsistent X^q{} across labels: {} and {}".format(
                    i, first.as_expr(), value.as_expr())
                raise NotInImage(msg)
        components[chart.q(i)] = first
    X = VectorField(chart, components)
    residual = contraction_omega_hat(X) - eta
    if residual:
        witness = _witness(residual)
        msg = "no vertical field contracts omega_hat to this form; " \
              "unmatched {}".format(witness)
        raise NotInImage(msg, witness)
    return X


def solve_polyhamiltonian(f):
    """Find the vertical field X with i_X ω̂ = d_V f for a section f."""
    if f.degree != 0:
        raise InputError("expected a degree-0 section, got degree "
                         "{}".format(f.degree))
    return solve_inverse_poly(vertical_derivative_vvf(f))
