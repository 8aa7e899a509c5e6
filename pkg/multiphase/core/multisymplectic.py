"""Hamiltonian vector fields on extended multiphase space.

On an extended chart (x^μ, q^i, p_i^μ, p) the multicanonical forms are::

    θ = p_i^μ dq^i∧d^n x_μ + p d^n x
    ω = dq^i∧dp_i^μ∧d^n x_μ − dp∧d^n x

A vector field X is locally hamiltonian when i_X ω is closed and exact
hamiltonian when L_X θ = 0. Locally hamiltonian fields are generated by
polynomials X^μ, X^i, f_0^μ that do not involve the multimomenta or the
energy (X^μ depends on x only as soon as N > 1).

"""

import functools

from multiphase import common, settings
from multiphase.common import (ChartError, GeneratorError, InputError,
                               InvariantBreach, NotInImage)
from multiphase.core.types import (EXTENDED, POSITION, NOT_HAMILTONIAN,
                                   LOCALLY_HAMILTONIAN, EXACT_HAMILTONIAN)
from multiphase.core.chart import Point, build_ordinary_chart
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm, differential,
                                   volume, volume_contraction, wedge,
                                   wedge_all, _check_charts)
from multiphase.core.calculus import (exterior_derivative, interior_product,
                                      lie_derivative, poincare_homotopy,
                                      pullback, transfer)
from multiphase.core.pointwise import pairing_kernel_at

log = common.logger(__name__)


class HamiltonianGenerators(object):
    """Polynomials X^μ, X^i, f_0^μ generating a locally hamiltonian field.

    :param chart: extended :class:`~multiphase.core.chart.Chart`
    :param Xmu: mapping μ → X^μ (missing entries are zero)
    :param Xi: mapping i → X^i
    :param f0: mapping μ → f_0^μ

    """

    def __init__(self, chart, Xmu=None, Xi=None, f0=None):  # pylint: disable=C0103
        chart.require(EXTENDED)
        self.chart = chart
        self.Xmu = _family(chart, 'X^mu', Xmu, chart.n)  # pylint: disable=C0103
        self.Xi = _family(chart, 'X^i', Xi, chart.N)  # pylint: disable=C0103
        self.f0 = _family(chart, 'f0', f0, chart.n)

    def __repr__(self):
        return "HamiltonianGenerators({!r}, Xmu={}, Xi={}, f0={})".format(
            self.chart, _show(self.Xmu), _show(self.Xi), _show(self.f0))

    def __eq__(self, other):
        return (isinstance(other, HamiltonianGenerators) and
                self.chart == other.chart and
                (self.Xmu, self.Xi, self.f0) ==
                (other.Xmu, other.Xi, other.f0))

    def __ne__(self, other):
        return not self == other

    def validate(self):
        """Ensure the generators satisfy the hamiltonian normal form.

        :raises: :class:`~multiphase.common.GeneratorError`

        """
        chart = self.chart
        for label, family in (('X^', self.Xmu), ('X^q', self.Xi),
                              ('f0^', self.f0)):
            for key, poly in sorted(family.items()):
                if chart.depends_on(poly, chart.momenta):
                    msg = "{}{} depends on the multimomenta or the energy: " \
                          "{}".format(label, key, poly.as_expr())
                    raise GeneratorError(msg)
        if chart.N > 1:
            positions = chart.positions(POSITION)
            for mu, poly in sorted(self.Xmu.items()):
                if chart.depends_on(poly, positions):
                    msg = "X^{} depends on the positions with N > 1: " \
                          "{}".format(mu, poly.as_expr())
                    raise GeneratorError(msg)

    @property
    def valid(self):
        """Determine if the generators satisfy the normal form."""
        try:
            self.validate()
        except GeneratorError:
            return False
        return True


class HamiltonianFormComponents(object):
    """Components f^μ and f_i^{μν} (μ < ν) of a hamiltonian (n−1)-form.

    :param chart: extended :class:`~multiphase.core.chart.Chart`
    :param fmu: mapping μ → f^μ
    :param fmunu: mapping (i, μ, ν) with μ < ν → f_i^{μν}

    """

    def __init__(self, chart, fmu, fmunu):
        self.chart = chart
        self.fmu = {mu: chart.poly(fmu.get(mu, 0))
                    for mu in range(1, chart.n + 1)}
        self.fmunu = {}
        for (i, mu, nu), value in fmunu.items():
            if mu >= nu:
                msg = "f_i^(mu nu) is stored for mu < nu, got {}".format(
                    (i, mu, nu))
                raise InputError(msg)
            self.fmunu[(i, mu, nu)] = chart.poly(value)

    def component(self, i, mu, nu):
        """Get f_i^{μν} for any ordering of μ and ν."""
        if mu == nu:
            return self.chart.zero
        if mu < nu:
            return self.fmunu.get((i, mu, nu), self.chart.zero)
        return -self.fmunu.get((i, nu, mu), self.chart.zero)

    def form(self):
        """Assemble f = f^μ d^n x_μ + ½ f_i^{μν} dq^i∧d^n x_{μν}."""
        chart = self.chart
        result = DifferentialForm(chart, chart.n - 1)
        for mu, value in sorted(self.fmu.items()):
            result = result + volume_contraction(chart, mu).scale(value)
        for (i, mu, nu), value in sorted(self.fmunu.items()):
            term = wedge(_dq(chart, i), volume_contraction(chart, mu, nu))
            result = result + term.scale(value)
        return result


class ClassificationVerdict(object):
    """Outcome of classifying a vector field.

    :param chart: chart of the classified field
    :param status: one of :data:`~multiphase.core.types.STATUSES`
    :param generators: recovered generators (hamiltonian fields in normal
        form only)
    :param hamiltonian_form: primitive f with i_X ω = df
    :param witness: nonzero monomial of d(i_X ω) (non-hamiltonian fields)

    """

    def __init__(self, chart, status, generators=None, hamiltonian_form=None,
                 witness=None):
        self.chart = chart
        self.status = status
        self.generators = generators
        self.hamiltonian_form = hamiltonian_form
        self.witness = witness

    def __repr__(self):
        return "{}({!r}, '{}')".format(self.__class__.__name__, self.chart,
                                      self.status)

    def __eq__(self, other):
        return (isinstance(other, self.__class__) and
                self.chart == other.chart and
                self.status == other.status and
                self.generators == other.generators and
                self.hamiltonian_form == other.hamiltonian_form and
                self.witness == other.witness)

    def __ne__(self, other):
        return not self == other

    @property
    def hamiltonian(self):
        """Determine if the field is (at least) locally hamiltonian."""
        return self.status != NOT_HAMILTONIAN

    @property
    def exact(self):
        """Determine if the field is exact hamiltonian."""
        return self.status == EXACT_HAMILTONIAN


# helpers ####################################################################


def _family(chart, label, values, size):
    """Convert a mapping 1..size → polynomial with zero defaults."""
    values = dict(values or {})
    unknown = [key for key in values if key not in range(1, size + 1)]
    if unknown:
        msg = "{} has no index {} on {}".format(label, unknown[0], chart)
        raise GeneratorError(msg)
    return {key: chart.poly(values.get(key, 0)) for key in range(1, size + 1)}


def _show(family):
    """Format a polynomial family for display."""
    return {key: str(poly.as_expr()) for key, poly in family.items() if poly}


def _dq(chart, i):
    return differential(chart, chart.q(i))


def _dp(chart, i, mu):
    return differential(chart, chart.momentum(i, mu))


def _along(form, basis):
    """Get the coefficient of a form along a basis monomial (±1 coefficient)."""
    ((index, sign),) = basis.items()
    return form.coefficient(index) * sign


def _witness(form):
    """Get the leading monomial of a nonzero form."""
    index, coefficient = form.leading()
    return DifferentialForm(form.chart, form.degree, {index: coefficient})


def _partial(chart, poly, position):
    return poly.diff(chart.gens[position])


def _momentum_components(chart, Xmu, Xi, f0):  # pylint: disable=C0103
    """Compute X_i^μ and X_0 from generators.

    :return: mapping of momentum and energy positions to components

    """
    gens = chart.gens
    p = gens[chart.energy]
    bases = {mu: chart.x(mu) for mu in range(1, chart.n + 1)}
    positions = {i: chart.q(i) for i in range(1, chart.N + 1)}
    divergence = chart.zero
    for mu, position in bases.items():
        divergence += _partial(chart, Xmu[mu], position)
    components = {}
    energy = -p * divergence
    for i, qi in positions.items():
        for mu in bases:
            value = chart.zero
            if chart.N == 1:
                value -= p * _partial(chart, Xmu[mu], qi)
            for j in positions:
                value -= gens[chart.momentum(j, mu)] * \
                    _partial(chart, Xi[j], qi)
            for nu, xnu in bases.items():
                value += gens[chart.momentum(i, nu)] * \
                    _partial(chart, Xmu[mu], xnu)
            value -= gens[chart.momentum(i, mu)] * divergence
            value += _partial(chart, f0[mu], qi)
            components[chart.momentum(i, mu)] = value
            energy -= gens[chart.momentum(i, mu)] * \
                _partial(chart, Xi[i], bases[mu])
    for mu, position in bases.items():
        energy += _partial(chart, f0[mu], position)
    components[chart.energy] = energy
    return components


# canonical structure ########################################################


@functools.lru_cache(maxsize=None)
def canonical_theta(chart):
    """Create the multicanonical form θ = p_i^μ dq^i∧d^n x_μ + p d^n x."""
    chart.require(EXTENDED)
    gens = chart.gens
    theta = volume(chart).scale(gens[chart.energy])
    for i in range(1, chart.N + 1):
        for mu in range(1, chart.n + 1):
            term = wedge(_dq(chart, i), volume_contraction(chart, mu))
            theta = theta + term.scale(gens[chart.momentum(i, mu)])
    return theta


@functools.lru_cache(maxsize=None)
def canonical_omega(chart):
    """Create the multisymplectic form ω = dq^i∧dp_i^μ∧d^n x_μ − dp∧d^n x."""
    chart.require(EXTENDED)
    omega = -wedge(differential(chart, chart.energy), volume(chart))
    for i in range(1, chart.N + 1):
        for mu in range(1, chart.n + 1):
            omega = omega + wedge_all(_dq(chart, i), _dp(chart, i, mu),
                                      volume_contraction(chart, mu))
    return omega


def contraction_omega(X):
    """Expand i_X ω term by term in the canonical components of X.

    i_X ω = X^ν dq^i∧dp_i^μ∧d^n x_{μν} − X_i^μ dq^i∧d^n x_μ
            + X^i dp_i^μ∧d^n x_μ + X^μ dp∧d^n x_μ − X_0 d^n x

    """
    chart = X.chart
    chart.require(EXTENDED)
    dp = differential(chart, chart.energy)
    result = volume(chart).scale(-X.component(chart.energy))
    for mu in range(1, chart.n + 1):
        volume_mu = volume_contraction(chart, mu)
        result = result + wedge(dp, volume_mu).scale(X.component(chart.x(mu)))
        for i in range(1, chart.N + 1):
            dq, dpi = _dq(chart, i), _dp(chart, i, mu)
            result = result - wedge(dq, volume_mu).scale(
                X.component(chart.momentum(i, mu)))
            result = result + wedge(dpi, volume_mu).scale(
                X.component(chart.q(i)))
            for nu in range(1, chart.n + 1):
                if nu == mu:
                    continue
                term = wedge_all(dq, dpi, volume_contraction(chart, mu, nu))
                result = result + term.scale(X.component(chart.x(nu)))
    return result


def contraction_theta(X):
    """Expand i_X θ = (p_i^μ X^i + p X^μ) d^n x_μ − p_i^μ X^ν dq^i∧d^n x_{μν}."""
    chart = X.chart
    chart.require(EXTENDED)
    gens = chart.gens
    p = gens[chart.energy]
    result = DifferentialForm(chart, chart.n - 1)
    for mu in range(1, chart.n + 1):
        value = p * X.component(chart.x(mu))
        for i in range(1, chart.N + 1):
            value += gens[chart.momentum(i, mu)] * X.component(chart.q(i))
        result = result + volume_contraction(chart, mu).scale(value)
        for nu in range(1, chart.n + 1):
            if nu == mu:
                continue
            for i in range(1, chart.N + 1):
                term = wedge(_dq(chart, i), volume_contraction(chart, mu, nu))
                result = result - term.scale(gens[chart.momentum(i, mu)] *
                                             X.component(chart.x(nu)))
    return result


# construction ###############################################################


def construct_hamiltonian_vf(g, chart=None):
    """Build the locally hamiltonian field of a set of generators.

    X_i^μ = −p ∂X^μ/∂q^i − p_j^μ ∂X^j/∂q^i + p_i^ν ∂X^μ/∂x^ν
            − p_i^μ ∂X^ν/∂x^ν + ∂f_0^μ/∂q^i     (first term only for N = 1)
    X_0 = −p ∂X^μ/∂x^μ − p_i^μ ∂X^i/∂x^μ + ∂f_0^μ/∂x^μ

    :param g: :class:`HamiltonianGenerators`
    :param chart: chart of the result (default: the generators' chart)

    :raises: :class:`~multiphase.common.GeneratorError` for generators
        outside the normal form

    """
    chart = chart or g.chart
    if chart != g.chart:
        msg = "generators on {} used on {}".format(g.chart, chart)
        raise ChartError(msg)
    g.validate()
    components = _momentum_components(chart, g.Xmu, g.Xi, g.f0)
    for mu, value in g.Xmu.items():
        components[chart.x(mu)] = value
    for i, value in g.Xi.items():
        components[chart.q(i)] = value
    X = VectorField(chart, components)
    log.debug("constructed {}".format(X))
    return X


def hamiltonian_form_components(X, g):
    """Compute f^μ = p_i^μ X^i + p X^μ − f_0^μ and f_i^{μν} = p_i^ν X^μ − p_i^μ X^ν."""
    chart = _check_charts(X, g)
    gens = chart.gens
    p = gens[chart.energy]
    fmu = {}
    fmunu = {}
    for mu in range(1, chart.n + 1):
        value = p * g.Xmu[mu] - g.f0[mu]
        for i in range(1, chart.N + 1):
            value += gens[chart.momentum(i, mu)] * g.Xi[i]
        fmu[mu] = value
        for nu in range(mu + 1, chart.n + 1):
            for i in range(1, chart.N + 1):
                fmunu[(i, mu, nu)] = (gens[chart.momentum(i, nu)] * g.Xmu[mu] -
                                      gens[chart.momentum(i, mu)] * g.Xmu[nu])
    return HamiltonianFormComponents(chart, fmu, fmunu)


def hamiltonian_form_of(X, g):
    """Compute the hamiltonian (n−1)-form f of a field with i_X ω = df.

    :raises: :class:`~multiphase.common.GeneratorError` when the generators
        do not describe the field

    """
    f = hamiltonian_form_components(X, g).form()
    residual = interior_product(X, canonical_omega(X.chart)) - \
        exterior_derivative(f)
    if residual:
        msg = "generators do not match the field: i_X omega - df = {}".format(
            residual)
        raise GeneratorError(msg)
    return f


def gauge_equivalent(g1, g2, chart=None):
    """Determine if two generator sets produce the same vector field.

    X^μ and X^i must agree; f_0 only enters through ∂f_0^μ/∂q^i and
    ∂f_0^μ/∂x^μ.

    """
    chart = chart or g1.chart
    if g1.chart != chart or g2.chart != chart:
        raise ChartError("generators on different charts")
    if g1.Xmu != g2.Xmu or g1.Xi != g2.Xi:
        return False
    difference = {mu: g1.f0[mu] - g2.f0[mu] for mu in g1.f0}
    for i in range(1, chart.N + 1):
        for value in difference.values():
            if _partial(chart, value, chart.q(i)):
                return False
    divergence = chart.zero
    for mu, value in difference.items():
        divergence += _partial(chart, value, chart.x(mu))
    return not divergence


# classification #############################################################


def _recover_f0(chart, X, Xmu, Xi):  # pylint: disable=C0103
    """Recover a normalised f_0 from the momentum and energy components."""
    zero = {mu: chart.zero for mu in range(1, chart.n + 1)}
    homogeneous = _momentum_components(chart, Xmu, Xi, zero)
    positions = chart.positions(POSITION)
    f0 = {}
    for mu in range(1, chart.n + 1):
        terms = {(chart.q(i),): X.component(chart.momentum(i, mu)) -
                 homogeneous[chart.momentum(i, mu)]
                 for i in range(1, chart.N + 1)}
        residual = DifferentialForm(chart, 1, terms)
        f0[mu] = poincare_homotopy(residual, positions).coefficient(())
    rest = X.component(chart.energy) - homogeneous[chart.energy]
    for mu, value in f0.items():
        rest -= _partial(chart, value, chart.x(mu))
    first = chart.x(1)
    primitive = poincare_homotopy(DifferentialForm(chart, 1, {(first,): rest}),
                                  [first])
    f0[1] += primitive.coefficient(())
    return f0


def classify(X):
    """Decide whether a field on an extended chart is hamiltonian.

    The field is locally hamiltonian iff d(i_X ω) = 0 and exact hamiltonian
    iff L_X θ = 0. For hamiltonian fields the generators are read off and
    f_0 is normalised so that the hamiltonian form has the canonical shape.

    :param X: :class:`~multiphase.core.forms.VectorField` on an extended
        chart

    :return: :class:`ClassificationVerdict`

    :raises: :class:`~multiphase.common.InvariantBreach` when the recovered
        generators do not reproduce the field

    """
    chart = X.chart
    chart.require(EXTENDED)
    contraction = interior_product(X, canonical_omega(chart))
    closure = exterior_derivative(contraction)
    if closure:
        witness = _witness(closure)
        log.info("not hamiltonian: d(i_X omega) contains {}".format(witness))
        return ClassificationVerdict(chart, NOT_HAMILTONIAN, witness=witness)

    exact = lie_derivative(X, canonical_theta(chart)).is_zero
    status = EXACT_HAMILTONIAN if exact else LOCALLY_HAMILTONIAN
    log.info("{}: {}".format(status, X))
    primitive = poincare_homotopy(contraction)

    Xmu = {mu: X.component(chart.x(mu)) for mu in range(1, chart.n + 1)}  # pylint: disable=C0103
    Xi = {i: X.component(chart.q(i)) for i in range(1, chart.N + 1)}  # pylint: disable=C0103
    trial = HamiltonianGenerators(chart, Xmu=Xmu, Xi=Xi)
    if not trial.valid:
        if chart.n == 1:
            log.info("hamiltonian outside the generator normal form "
                     "(symplectic case)")
            return ClassificationVerdict(chart, status,
                                         hamiltonian_form=primitive)
        msg = "closed contraction with generators outside the normal form: " \
              "{}".format(X)
        raise InvariantBreach(msg)

    f0 = _recover_f0(chart, X, Xmu, Xi)
    g = HamiltonianGenerators(chart, Xmu=Xmu, Xi=Xi, f0=f0)
    f = hamiltonian_form_components(X, g).form()
    if settings.CROSS_CHECK:
        _cross_check(X, g, f, contraction, primitive)
    return ClassificationVerdict(chart, status, generators=g,
                                 hamiltonian_form=f)


def _cross_check(X, g, f, contraction, primitive):
    """Ensure recovered generators and forms are consistent with the field."""
    if not g.valid:
        raise InvariantBreach("recovered f0 is outside the normal form: "
                              "{!r}".format(g))
    rebuilt = construct_hamiltonian_vf(g)
    if rebuilt != X:
        msg = "recovered generators rebuild {} instead of {}".format(rebuilt,
                                                                    X)
        raise InvariantBreach(msg)
    if exterior_derivative(f) != contraction:
        raise InvariantBreach("hamiltonian form does not satisfy "
                              "i_X omega = df: {}".format(f))
    if exterior_derivative(primitive - f):
        raise InvariantBreach("homotopy primitive and hamiltonian form "
                              "differ by a non-closed form")
    log.debug("cross-check passed")


# inverse problem ############################################################


def _agree(values, label):
    """Get the common value of candidate components or raise NotInImage."""
    first = values[0]
    for value in values[1:]:
        if value != first:
            msg = "inconsistent {}: {} and {}".format(label, first.as_expr(),
                                                      value.as_expr())
            raise NotInImage(msg)
    return first


def solve_inverse(eta):
    """Solve i_X ω = η for X on an extended chart.

    :param eta: n-form

    :return: :class:`~multiphase.core.forms.VectorField`

    :raises: :class:`~multiphase.common.NotInImage` when no field has this
        contraction

    """
    chart = eta.chart
    chart.require(EXTENDED)
    if eta.degree != chart.n:
        msg = "expected a form of degree {}, got {}".format(chart.n,
                                                            eta.degree)
        raise InputError(msg)
    components = {}
    dp = differential(chart, chart.energy)
    components[chart.energy] = -_along(eta, volume(chart))
    for nu in range(1, chart.n + 1):
        candidates = [_along(eta, wedge(dp, volume_contraction(chart, nu)))]
        for mu in range(1, chart.n + 1):
            if mu == nu:
                continue
            for i in range(1, chart.N + 1):
                basis = wedge_all(_dq(chart, i), _dp(chart, i, mu),
                                  volume_contraction(chart, mu, nu))
                candidates.append(_along(eta, basis))
        components[chart.x(nu)] = _agree(candidates, "X^{}".format(nu))
    for i in range(1, chart.N + 1):
        candidates = []
        for mu in range(1, chart.n + 1):
            volume_mu = volume_contraction(chart, mu)
            candidates.append(_along(eta, wedge(_dp(chart, i, mu), volume_mu)))
            components[chart.momentum(i, mu)] = \
                -_along(eta, wedge(_dq(chart, i), volume_mu))
        components[chart.q(i)] = _agree(candidates, "X^q{}".format(i))
    X = VectorField(chart, components)
    residual = interior_product(X, canonical_omega(chart)) - eta
    if residual:
        witness = _witness(residual)
        msg = "no vector field contracts omega to this form; " \
              "unmatched {}".format(witness)
        raise NotInImage(msg, witness)
    return X


def solve_hamiltonian(f):
    """Find the field X with i_X ω = df for an (n−1)-form f."""
    return solve_inverse(exterior_derivative(f))


# ordinary multiphase space ##################################################


def _to_ordinary(value, ordinary):
    """Convert a hamiltonian to a polynomial on the ordinary chart."""
    if hasattr(value, 'ring'):
        return transfer(value, ordinary)
    return ordinary.poly(value)


def pullback_by_section(H, chart):  # pylint: disable=C0103
    """Pull ω back along the hamiltonian section p = −H.

    :param H: polynomial in x, q, p_i^μ (ordinary or extended chart)
    :param chart: extended :class:`~multiphase.core.chart.Chart`

    :return: ω_H = dq^i∧dp_i^μ∧d^n x_μ + dH∧d^n x on the ordinary chart

    :raises: :class:`~multiphase.common.ChartError` when H involves the
        energy coordinate

    """
    chart.require(EXTENDED)
    ordinary = build_ordinary_chart(chart.n, chart.N)
    H = _to_ordinary(H, ordinary)  # pylint: disable=C0103
    images = {name: ordinary.gen(name) for name in ordinary.names}
    images[chart.names[chart.energy]] = -H
    omega_h = pullback(canonical_omega(chart), images, ordinary)
    if exterior_derivative(omega_h):
        raise InvariantBreach("pulled-back form is not closed")
    return omega_h


def evolution_field(H, chart):  # pylint: disable=C0103
    """Build ∂_t + ∂H/∂p_i ∂/∂q^i − ∂H/∂q^i ∂/∂p_i spanning the kernel of ω_H.

    Only defined over a one-dimensional base, where ω_H is degenerate.

    :param H: polynomial hamiltonian
    :param chart: ordinary chart with n = 1 (or the extended chart it
        comes from)

    """
    if chart.extended:
        chart = build_ordinary_chart(chart.n, chart.N)
    if chart.n != 1:
        raise ChartError("the evolution field needs a one-dimensional base")
    H = _to_ordinary(H, chart)  # pylint: disable=C0103
    components = {chart.x(1): 1}
    for i in range(1, chart.N + 1):
        qi, pi = chart.q(i), chart.momentum(i, 1)
        components[qi] = _partial(chart, H, pi)
        components[pi] = -_partial(chart, H, qi)
    return VectorField(chart, components)


def symbol_projection(chart):
    """Compute the polysymplectic symbol ω̂ of ω on the ordinary chart.

    The component along ê_μ (standing for d^n x_μ) of ω̂ on vertical
    directions A < B is the d^n x_μ coefficient of i_{∂_B} i_{∂_A} ω.

    :return: (ordinary chart, :class:`~multiphase.core.forms.VectorValuedForm`)

    :raises: :class:`~multiphase.common.InvariantBreach` when the symbol
        is not degenerate exactly along the energy direction

    """
    chart.require(EXTENDED)
    omega = canonical_omega(chart)
    ordinary = build_ordinary_chart(chart.n, chart.N)
    directions = [k for k in chart.vertical if k != chart.energy]
    terms = {label: {} for label in ordinary.labels}
    for first, a in enumerate(directions):
        once = omega.contract(a)
        for b in directions[first + 1:]:
            twice = once.contract(b)
            for mu, label in enumerate(ordinary.labels, start=1):
                value = _along(twice, volume_contraction(chart, mu))
                if value:
                    index = (ordinary.index(chart.names[a]),
                             ordinary.index(chart.names[b]))
                    terms[label][index] = transfer(value, ordinary)
    omega_hat = VectorValuedForm(
        ordinary, 2, {label: DifferentialForm(ordinary, 2, terms[label])
                      for label in ordinary.labels})
    kernel = symbol_kernel_at(chart, Point(chart, {name: 0
                                                   for name in chart.names}))
    energy = tuple(int(k == chart.energy) for k in chart.vertical)
    if kernel != [energy]:
        raise InvariantBreach("symbol kernel is not spanned by d/dp: "
                              "{}".format(kernel))
    return ordinary, omega_hat


def symbol_kernel_at(chart, point):
    """Compute the vertical directions u with i_v i_u ω = 0 for all vertical v.

    :return: list of tuples over the vertical coordinates (energy included)

    """
    chart.require(EXTENDED)
    return pairing_kernel_at(canonical_omega(chart), point, chart.vertical)


def project_to_symbol(X):
    """Map a field on the extended chart to the ordinary chart.

    The energy component is dropped; the other components must not depend
    on the energy.

    :raises: :class:`~multiphase.common.ChartError` for energy-dependent
        components

    """
    chart = X.chart
    chart.require(EXTENDED)
    ordinary = build_ordinary_chart(chart.n, chart.N)
    components = {}
    for position, value in X.items():
        if position == chart.energy:
            continue
        try:
            components[chart.names[position]] = transfer(value, ordinary)
        except ChartError:
            msg = "component along {} depends on the energy".format(
                chart.names[position])
            raise ChartError(msg) from None
    return VectorField(ordinary, components)
