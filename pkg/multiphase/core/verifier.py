"""Seeded random instances and the verification suites.

Trial ``t`` of suite ``s`` under the root seed ``S`` draws everything from
``random.Random(child_seed(S, s, t))``, where the child seed is the integer
formed by the first 8 bytes of ``sha256("{S}:{s}:{t}")``. Trials are
independent, so they may run in parallel; results are merged in trial order.

"""

import random
import hashlib
import functools
from concurrent import futures

import sympy

from multiphase import common, settings
from multiphase.common import MultiphaseError
from multiphase.core.types import (EXTENDED, ORDINARY, POSITION,
                                   NOT_HAMILTONIAN, TrialReport)
from multiphase.core.chart import (Point, build_extended_chart,
                                   build_ordinary_chart)
from multiphase.core.forms import DifferentialForm, VectorField, wedge
from multiphase.core.calculus import (exterior_derivative, interior_product,
                                      lie_derivative, poincare_homotopy,
                                      vertical_derivative, vertical_homotopy,
                                      vertical_derivative_vvf,
                                      interior_product_vvf, lie_derivative_vvf,
                                      vertical_lie_derivative, transfer)
from multiphase.core.pointwise import kernel_at
from multiphase.core import multisymplectic as msy
from multiphase.core import polysymplectic as psy
from multiphase.core import exporter, importer

SUITES = ('kernel', 'multisymplectic', 'polysymplectic')
ALL = 'all'

log = common.logger(__name__)


def child_seed(seed, suite, trial):
    """Derive the seed of one trial from the root seed."""
    text = "{}:{}:{}".format(seed, suite, trial).encode('utf-8')
    return int.from_bytes(hashlib.sha256(text).digest()[:8], 'big')


class RandomInstances(object):
    """Generator of random charts, polynomials, forms, and fields.

    :param seed: seed of the underlying :class:`random.Random`
    :param max_degree: maximum total degree of polynomials
    :param max_terms: maximum number of terms of polynomials and forms
    :param sizes: (n, N) pairs to draw chart sizes from

    """

    def __init__(self, seed, max_degree=None, max_terms=None, sizes=None):
        self.rng = random.Random(seed)
        self.max_degree = settings.VERIFY_MAX_DEGREE \
            if max_degree is None else max_degree
        self.max_terms = settings.VERIFY_MAX_TERMS \
            if max_terms is None else max_terms
        self.sizes = tuple(sizes or settings.VERIFY_CHART_SIZES)

    def rational(self):
        """Draw a nonzero rational with a small numerator and denominator."""
        bound = settings.COEFFICIENT_BOUND
        numerator = self.rng.choice([k for k in range(-bound, bound + 1) if k])
        return sympy.Rational(numerator,
                              self.rng.randint(1, settings.DENOMINATOR_BOUND))

    def chart(self, kind=None):
        """Draw a chart of the given kind (random kind by default)."""
        kind = kind or self.rng.choice((EXTENDED, ORDINARY))
        n, N = self.rng.choice(self.sizes)  # pylint: disable=C0103
        if kind == EXTENDED:
            return build_extended_chart(n, N)
        return build_ordinary_chart(n, N, self.rng.choice((n, n, n + 1)))

    def polynomial(self, chart, positions=None, nonzero=False):
        """Draw a polynomial in the given coordinates (all by default)."""
        positions = tuple(range(chart.dimension)) if positions is None \
            else tuple(positions)
        ring = chart.ring
        result = ring.zero
        count = self.rng.randint(1 if nonzero else 0, self.max_terms)
        for _ in range(count):
            term = ring.ground_new(ring.domain.from_sympy(self.rational()))
            if positions:
                for _ in range(self.rng.randint(0, self.max_degree)):
                    term *= chart.gens[self.rng.choice(positions)]
            result += term
        if nonzero and not result:
            return self.polynomial(chart, positions, nonzero)
        return result

    def monomial(self, chart, positions):
        """Draw a single nonconstant monomial in the given coordinates."""
        ring = chart.ring
        term = ring.ground_new(ring.domain.from_sympy(self.rational()))
        for _ in range(self.rng.randint(1, max(1, self.max_degree))):
            term *= chart.gens[self.rng.choice(positions)]
        return term

    def form(self, chart, degree=None):
        """Draw a form (random degree up to 3 by default)."""
        if degree is None:
            degree = self.rng.randint(0, min(3, chart.dimension))
        terms = {}
        for _ in range(self.rng.randint(1, self.max_terms)):
            index = tuple(sorted(self.rng.sample(range(chart.dimension),
                                                 degree)))
            terms[index] = self.polynomial(chart)
        return DifferentialForm(chart, degree, terms)

    def field(self, chart, vertical=False):
        """Draw a vector field (vertical on request)."""
        positions = chart.vertical if vertical else range(chart.dimension)
        return VectorField(chart, {k: self.polynomial(chart)
                                   for k in positions
                                   if self.rng.random() < 0.5})

    def point(self, chart):
        """Draw a point with random rational coordinates."""
        return Point(chart, {name: self.rational() for name in chart.names})

    def generators(self, chart):
        """Draw generators in the hamiltonian normal form."""
        base = chart.base
        allowed = base + (chart.positions(POSITION) if chart.N == 1 else ())
        free = base + chart.positions(POSITION)
        Xmu = {mu: self.polynomial(chart, allowed)  # pylint: disable=C0103
               for mu in range(1, chart.n + 1)}
        Xi = {i: self.polynomial(chart, free)  # pylint: disable=C0103
              for i in range(1, chart.N + 1)}
        f0 = {mu: self.polynomial(chart, free) for mu in range(1, chart.n + 1)}
        return msy.HamiltonianGenerators(chart, Xmu=Xmu, Xi=Xi, f0=f0)

    def poly_generators(self, chart, positions=None):
        """Draw vertical generators (in x and q unless restricted)."""
        if positions is None:
            positions = chart.base + chart.positions(POSITION)
        Xi = {i: self.polynomial(chart, positions)  # pylint: disable=C0103
              for i in range(1, chart.N + 1)}
        f0 = {a: self.polynomial(chart, positions)
              for a in range(1, chart.nhat + 1)}
        return psy.PolyHamiltonianGenerators(chart, Xi=Xi, f0=f0)


# trial bookkeeping ##########################################################


class _Trial(object):
    """Collects failed checks of one trial."""

    def __init__(self, suite, trial, seed):
        self.suite = suite
        self.trial = trial
        self.seed = seed
        self.failures = []

    def check(self, name, condition, chart, witness="", **inputs):
        """Record a failure when the condition does not hold."""
        if condition:
            return True
        log.debug("trial {} failed {}".format(self.trial, name))
        self.failures.append({
            'trial': self.trial,
            'seed': self.seed,
            'check': name,
            'chart': exporter.serialize(chart)['payload'],
            'inputs': {key: exporter.payload_of(value)[1]
                       for key, value in sorted(inputs.items())},
            'witness': str(witness)})
        return False


def _leading(form):
    """Describe the leading monomial of a (vector-valued) form."""
    if isinstance(form, DifferentialForm):
        return str(msy._witness(form)) if form else ""  # pylint: disable=W0212
    witness = psy._witness(form)  # pylint: disable=W0212
    return str(witness) if witness else ""


def _sign(degree):
    return -1 if degree % 2 else 1


# suites #####################################################################


def _trial_kernel(trial, instances):
    """Check the exterior calculus identities and the canonical structures."""
    chart = instances.chart()
    a = instances.form(chart)
    b = instances.form(chart, instances.rng.randint(0, 2))
    X = instances.field(chart)  # pylint: disable=C0103
    V = instances.field(chart, vertical=True)  # pylint: disable=C0103
    k = a.degree

    dd = exterior_derivative(exterior_derivative(a))
    trial.check("d of d vanishes", not dd, chart, _leading(dd), a=a)
    vv = vertical_derivative(vertical_derivative(a))
    trial.check("d_V of d_V vanishes", not vv, chart, _leading(vv), a=a)
    ab, ba = wedge(a, b), wedge(b, a)
    trial.check("graded commutativity",
                ab == ba.scale(_sign(k * b.degree)), chart,
                _leading(ab - ba.scale(_sign(k * b.degree))), a=a, b=b)
    for name, d in (("Leibniz rule for d", exterior_derivative),
                    ("Leibniz rule for d_V", vertical_derivative)):
        rule = d(ab) - wedge(d(a), b) - wedge(a, d(b)).scale(_sign(k))
        trial.check(name, not rule, chart, _leading(rule), a=a, b=b)
    ii = interior_product(X, interior_product(X, a))
    trial.check("double contraction vanishes", not ii, chart, _leading(ii),
                X=X, a=a)
    rule = _antiderivation_defect(X, a, b)
    trial.check("contraction is an antiderivation", not rule, chart,
                _leading(rule), X=X, a=a, b=b)
    rule = exterior_derivative(lie_derivative(X, a)) - \
        lie_derivative(X, exterior_derivative(a))
    trial.check("d commutes with the Lie derivative", not rule, chart,
                _leading(rule), X=X, a=a)
    rule = vertical_derivative(vertical_lie_derivative(V, a)) - \
        vertical_lie_derivative(V, vertical_derivative(a))
    trial.check("d_V commutes with the vertical Lie derivative", not rule,
                chart, _leading(rule), X=V, a=a)
    if k:
        rule = exterior_derivative(poincare_homotopy(a)) + \
            poincare_homotopy(exterior_derivative(a)) - a
        trial.check("homotopy identity", not rule, chart, _leading(rule), a=a)
        rule = vertical_derivative(vertical_homotopy(a)) + \
            vertical_homotopy(vertical_derivative(a)) - a + \
            _vertical_constant_part(a)
        trial.check("vertical homotopy identity", not rule, chart,
                    _leading(rule), a=a)

    if chart.extended:
        _check_extended_structure(trial, instances, chart, X)
    else:
        _check_ordinary_structure(trial, instances, chart, V)


def _antiderivation_defect(X, a, b):  # pylint: disable=C0103
    """Compute i_X(a^b) - (i_X a)^b - (-1)^k a^(i_X b) for a of degree k.

    A contraction of a function vanishes, so its term is left out.

    """
    rule = interior_product(X, wedge(a, b))
    if a.degree:
        rule = rule - wedge(interior_product(X, a), b)
    if b.degree:
        rule = rule - wedge(a, interior_product(X, b)).scale(_sign(a.degree))
    return rule


def _vertical_constant_part(a):
    """Keep the terms of a form without vertical differentials at q = p = 0."""
    chart = a.chart
    vertical = set(chart.vertical)
    images = [None if k in vertical else gen
              for k, gen in enumerate(chart.gens)]
    terms = {}
    for index, coefficient in a.items():
        if vertical.intersection(index):
            continue
        value = chart.zero
        for monom, c in coefficient.terms():
            if not any(monom[k] for k in vertical):
                term = chart.ring.ground_new(c)
                for position, power in enumerate(monom):
                    if power:
                        term *= images[position] ** power
                value += term
        terms[index] = value
    return DifferentialForm(chart, a.degree, terms)


def _check_extended_structure(trial, instances, chart, X):  # pylint: disable=C0103
    theta, omega = msy.canonical_theta(chart), msy.canonical_omega(chart)
    trial.check("omega equals -d theta", omega == -exterior_derivative(theta),
                chart)
    for _ in range(settings.VERIFY_POINTS):
        point = instances.point(chart)
        kernel = kernel_at(omega, point)
        trial.check("omega is non-degenerate", not kernel, chart, kernel)
    rule = msy.contraction_omega(X) - interior_product(X, omega)
    trial.check("contraction of omega", not rule, chart, _leading(rule), X=X)
    rule = msy.contraction_theta(X) - interior_product(X, theta)
    trial.check("contraction of theta", not rule, chart, _leading(rule), X=X)


def _check_ordinary_structure(trial, instances, chart, V):  # pylint: disable=C0103
    theta_hat = psy.canonical_theta_hat(chart)
    omega_hat = psy.canonical_omega_hat(chart)
    trial.check("omega_hat equals -d_V theta_hat",
                omega_hat == -vertical_derivative_vvf(theta_hat), chart)
    for _ in range(settings.VERIFY_POINTS):
        point = instances.point(chart)
        kernel = kernel_at(omega_hat, point, chart.vertical)
        trial.check("omega_hat is vertically non-degenerate", not kernel,
                    chart, kernel)
    rule = psy.contraction_omega_hat(V) - interior_product_vvf(V, omega_hat)
    trial.check("contraction of omega_hat", not rule, chart, rule, X=V)
    rule = psy.contraction_theta_hat(V) - interior_product_vvf(V, theta_hat)
    trial.check("contraction of theta_hat", not rule, chart, rule, X=V)


def _perturb(instances, X, position, positions):  # pylint: disable=C0103
    """Add a random monomial in the given coordinates to one component."""
    chart = X.chart
    extra = instances.monomial(chart, positions)
    return X + VectorField(chart, {position: extra})


def _trial_multisymplectic(trial, instances):
    """Check construction, classification, and inversion for ω."""
    chart = instances.chart(EXTENDED)
    g = instances.generators(chart)
    X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
    omega = msy.canonical_omega(chart)
    closure = exterior_derivative(interior_product(X, omega))
    if not trial.check("constructed field is hamiltonian", not closure, chart,
                       _leading(closure), g=g, X=X):
        return

    f = msy.hamiltonian_form_components(X, g).form()
    rule = interior_product(X, omega) - exterior_derivative(f)
    trial.check("hamiltonian form satisfies i_X omega = df", not rule, chart,
                _leading(rule), g=g, X=X)
    verdict = msy.classify(X)
    if trial.check("classified as hamiltonian", verdict.hamiltonian, chart,
                   verdict.status, X=X) and verdict.generators is not None:
        trial.check("classification recovers the generators",
                    msy.gauge_equivalent(g, verdict.generators), chart,
                    repr(verdict.generators), g=g, X=X)
    try:
        solved = msy.solve_inverse(exterior_derivative(f))
    except MultiphaseError as exc:
        solved = exc
    trial.check("inverse solver recovers the field", solved == X, chart,
                solved, g=g, X=X)

    g_exact = msy.HamiltonianGenerators(chart, Xmu=g.Xmu, Xi=g.Xi)
    X_exact = msy.construct_hamiltonian_vf(g_exact)  # pylint: disable=C0103
    rule = lie_derivative(X_exact, msy.canonical_theta(chart))
    trial.check("f0 = 0 gives an exact field", not rule, chart,
                _leading(rule), g=g_exact)
    rule = interior_product(X_exact, omega) - \
        exterior_derivative(interior_product(X_exact,
                                             msy.canonical_theta(chart)))
    trial.check("exact field contracts to d(i_X theta)", not rule, chart,
                _leading(rule), g=g_exact)

    if chart.n >= 2:
        momenta = chart.momenta
        for i in range(1, chart.N + 1):
            _check_violation(trial, "momentum-dependent X^q",
                             _perturb(instances, X, chart.q(i), momenta))
        _check_violation(trial, "momentum-dependent X^x",
                         _perturb(instances, X, chart.x(1), momenta))
        if chart.N >= 2:
            _check_violation(trial, "position-dependent X^x",
                             _perturb(instances, X, chart.x(1),
                                      chart.positions(POSITION)))

    _check_section(trial, instances, chart)
    ordinary, omega_hat = msy.symbol_projection(chart)
    trial.check("symbol of omega is omega_hat",
                omega_hat == psy.canonical_omega_hat(ordinary), chart,
                omega_hat)
    _check_roundtrips(trial, chart, g=g, X=X, f=f, verdict=verdict)


def _check_violation(trial, name, X):  # pylint: disable=C0103
    chart = X.chart
    omega = msy.canonical_omega(chart)
    closure = exterior_derivative(interior_product(X, omega))
    trial.check(name + " breaks hamiltonicity", bool(closure), chart,
                _leading(closure), X=X)
    verdict = msy.classify(X)
    trial.check(name + " has a witness",
                verdict.status == NOT_HAMILTONIAN and
                verdict.witness is not None, chart, verdict.status, X=X)


def _check_section(trial, instances, chart):
    """Check ω_H for a random hamiltonian section."""
    ordinary = build_ordinary_chart(chart.n, chart.N)
    H = instances.polynomial(ordinary)  # pylint: disable=C0103
    omega_h = msy.pullback_by_section(H, chart)
    closure = exterior_derivative(omega_h)
    trial.check("omega_H is closed", not closure, ordinary, _leading(closure),
                omega_H=omega_h)
    for _ in range(settings.VERIFY_POINTS):
        point = instances.point(ordinary)
        kernel = kernel_at(omega_h, point)
        if chart.n >= 2:
            trial.check("omega_H is non-degenerate", not kernel, ordinary,
                        kernel, omega_H=omega_h)
        else:
            field = msy.evolution_field(H, ordinary)
            expected = tuple(evaluate_field(field, point))
            trial.check("omega_H degenerates along the evolution field",
                        len(kernel) == 1 and _parallel(kernel[0], expected),
                        ordinary, kernel, omega_H=omega_h)


def evaluate_field(X, point):  # pylint: disable=C0103
    """Evaluate the components of a field at a point, in chart order."""
    values = point.domain_values
    domain = X.chart.ring.domain
    for position in range(X.chart.dimension):
        yield domain.to_sympy(X.component(position)(*values))


def _parallel(u, v):
    """Determine if two vectors are proportional."""
    matrix = sympy.Matrix([list(u), list(v)])
    return matrix.rank() <= 1


def _trial_polysymplectic(trial, instances):
    """Check construction, classification, and inversion for ω̂."""
    chart = instances.chart(ORDINARY)
    g = instances.poly_generators(chart)
    X = psy.construct_polyhamiltonian_vf(g)  # pylint: disable=C0103
    omega_hat = psy.canonical_omega_hat(chart)
    closure = vertical_derivative_vvf(interior_product_vvf(X, omega_hat))
    if not trial.check("constructed field is hamiltonian", not closure, chart,
                       _leading(closure), g=g, X=X):
        return

    section = psy.hamiltonian_section_components(X, g)
    rule = interior_product_vvf(X, omega_hat) - \
        vertical_derivative_vvf(section)
    trial.check("section satisfies i_X omega_hat = d_V f", not rule, chart,
                rule, g=g, X=X)
    verdict = psy.classify_vertical(X)
    if trial.check("classified as hamiltonian", verdict.hamiltonian, chart,
                   verdict.status, X=X) and verdict.generators is not None:
        trial.check("classification recovers the generators",
                    psy.gauge_equivalent_poly(g, verdict.generators), chart,
                    repr(verdict.generators), g=g, X=X)
    try:
        solved = psy.solve_inverse_poly(vertical_derivative_vvf(section))
    except MultiphaseError as exc:
        solved = exc
    trial.check("inverse solver recovers the field", solved == X, chart,
                solved, g=g, X=X)

    theta_hat = psy.canonical_theta_hat(chart)
    exact = psy.construct_polyhamiltonian_vf(
        psy.PolyHamiltonianGenerators(chart, Xi=g.Xi))
    rule = lie_derivative_vvf(exact, theta_hat)
    trial.check("f0 = 0 gives an exact field", not rule, chart, rule,
                X=exact)
    if not lie_derivative_vvf(X, theta_hat):
        rule = lie_derivative_vvf(X, omega_hat)
        trial.check("exact field preserves omega_hat", not rule, chart, rule,
                    X=X)

    if chart.nhat >= 2:
        for i in range(1, chart.N + 1):
            perturbed = _perturb(instances, X, chart.q(i), chart.momenta)
            closure = vertical_derivative_vvf(
                interior_product_vvf(perturbed, omega_hat))
            broken = psy.classify_vertical(perturbed)
            trial.check("momentum-dependent X^q breaks hamiltonicity",
                        bool(closure) and broken.witness is not None, chart,
                        broken.status, X=perturbed)

    _check_symbol_consistency(trial, instances, chart.n, chart.N)
    _check_roundtrips(trial, chart, g=g, X=X, f=section, verdict=verdict)


def _check_symbol_consistency(trial, instances, n, N):  # pylint: disable=C0103
    """Compare both classifications for fields that descend to the symbol."""
    extended = build_extended_chart(n, N)
    ordinary = build_ordinary_chart(n, N)
    g = instances.poly_generators(ordinary, ordinary.positions(POSITION))
    lifted = msy.HamiltonianGenerators(
        extended,
        Xi={i: transfer(v, extended) for i, v in g.Xi.items()},
        f0={a: transfer(v, extended) for a, v in g.f0.items()})
    X = msy.construct_hamiltonian_vf(lifted)  # pylint: disable=C0103
    X_hat = psy.construct_polyhamiltonian_vf(g)  # pylint: disable=C0103
    trial.check("lifted field has no energy component",
                not X.component(extended.energy), extended, X, X=X)
    projected = msy.project_to_symbol(X)
    trial.check("lifted field projects to the vertical field",
                projected == X_hat, ordinary, projected, X=X_hat)
    full, vertical = msy.classify(X), psy.classify_vertical(X_hat)
    trial.check("both classifications agree", full.status == vertical.status,
                ordinary, "{} / {}".format(full.status, vertical.status),
                X=X_hat)


def _check_roundtrips(trial, chart, **objects):
    """Check that documents parse back to the objects they came from."""
    for name, obj in sorted(objects.items()):
        text = exporter.export(obj)
        parsed = importer.parse_document(text).value
        trial.check("document roundtrip of " + name, parsed == obj, chart,
                    text)


SUITE_TRIALS = {'kernel': _trial_kernel,
                'multisymplectic': _trial_multisymplectic,
                'polysymplectic': _trial_polysymplectic}


# runner #####################################################################


def run_trial(suite, seed, index, max_degree=None, max_terms=None,
              sizes=None):
    """Run one trial and return its failure records."""
    trial_seed = child_seed(seed, suite, index)
    instances = RandomInstances(trial_seed, max_degree=max_degree,
                                max_terms=max_terms, sizes=sizes)
    trial = _Trial(suite, index, trial_seed)
    try:
        SUITE_TRIALS[suite](trial, instances)
    except MultiphaseError as exc:
        trial.failures.append({'trial': index, 'seed': trial_seed,
                               'check': "raised " + exc.__class__.__name__,
                               'chart': None, 'inputs': {},
                               'witness': str(exc)})
    return trial.failures


def verify(suite=ALL, trials=None, seed=None, max_degree=None,
           max_terms=None, sizes=None, jobs=None):
    """Run verification suites.

    :param suite: one of :data:`SUITES` or ``'all'``
    :param trials: number of trials per suite
    :param seed: root seed
    :param max_degree: maximum total degree of random polynomials
    :param max_terms: maximum number of terms of random polynomials
    :param sizes: (n, N) pairs of chart sizes
    :param jobs: number of worker processes

    :return: list of :class:`~multiphase.core.types.TrialReport`

    """
    suites = SUITES if suite == ALL else (suite,)
    for name in suites:
        if name not in SUITE_TRIALS:
            msg = "unknown suite: {} (options: {}, {})".format(
                name, ', '.join(SUITES), ALL)
            raise common.InputError(msg)
    trials = settings.VERIFY_TRIALS if trials is None else trials
    seed = settings.VERIFY_SEED if seed is None else seed
    jobs = jobs or settings.VERIFY_JOBS
    reports = []
    for name in suites:
        log.info("running {} trials of the {} suite...".format(trials, name))
        run = functools.partial(_run_indexed, name, seed, max_degree,
                                max_terms, sizes and tuple(sizes))
        if jobs > 1 and trials > 1:
            with futures.ProcessPoolExecutor(max_workers=jobs) as executor:
                results = list(executor.map(run, range(trials)))
        else:
            results = [run(index) for index in range(trials)]
        failures = [record for records in results for record in records]
        passed = sum(1 for records in results if not records)
        reports.append(TrialReport(name, seed, trials, passed, failures))
    return reports


def _run_indexed(suite, seed, max_degree, max_terms, sizes, index):
    return run_trial(suite, seed, index, max_degree=max_degree,
                     max_terms=max_terms, sizes=sizes)
