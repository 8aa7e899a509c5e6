"""Unit tests for the multiphase.core.multisymplectic module."""

import unittest
from unittest.mock import patch

from multiphase import settings
from multiphase.common import (ChartError, GeneratorError, InputError,
                               InvariantBreach, NotInImage)
from multiphase.core import types
from multiphase.core.chart import Point
from multiphase.core.forms import (VectorField, differential, monomial, volume,
                                   volume_contraction, wedge, wedge_all)
from multiphase.core.calculus import (exterior_derivative, interior_product,
                                      lie_derivative)
from multiphase.core.pointwise import kernel_at
from multiphase.core import multisymplectic as msy
from multiphase.core.polysymplectic import canonical_omega_hat
from multiphase.core.verifier import RandomInstances

from multiphase.core.test import ChartsMixIn, SettingsTestCase


class TestGenerators(ChartsMixIn, unittest.TestCase):
    """Unit tests for the HamiltonianGenerators class."""

    def test_defaults(self):
        """Verify missing generators are zero."""
        g = msy.HamiltonianGenerators(self.extended, Xi={1: "q1"})
        self.assertEqual({1: self.extended.zero, 2: self.extended.zero},
                         g.Xmu)
        self.assertEqual(self.extended.poly("q1"), g.Xi[1])
        self.assertTrue(g.valid)

    def test_unknown_index(self):
        """Verify generator indices must exist on the chart."""
        self.assertRaises(GeneratorError, msy.HamiltonianGenerators,
                          self.extended, Xi={2: 1})

    def test_ordinary_chart(self):
        """Verify generators need an extended chart."""
        self.assertRaises(ChartError, msy.HamiltonianGenerators,
                          self.ordinary)

    def test_momentum_dependence(self):
        """Verify generators must not involve momenta or the energy."""
        for g in (msy.HamiltonianGenerators(self.extended, Xi={1: "p1_1"}),
                  msy.HamiltonianGenerators(self.extended, Xmu={2: "p"}),
                  msy.HamiltonianGenerators(self.extended, f0={1: "x1*p1_2"})):
            self.assertRaises(GeneratorError, g.validate)
            self.assertFalse(g.valid)

    def test_position_dependence(self):
        """Verify X^μ may involve the positions only when N = 1."""
        self.assertTrue(msy.HamiltonianGenerators(self.extended,
                                                  Xmu={1: "q1"}).valid)
        g = msy.HamiltonianGenerators(self.extended2, Xmu={1: "q2"})
        self.assertRaises(GeneratorError, g.validate)


class TestCanonical(ChartsMixIn, unittest.TestCase):
    """Unit tests for the canonical forms."""

    def test_mechanics(self):
        """Verify θ = p_1 dq + p dt and ω = dq∧dp_1 - dp∧dt for n = 1."""
        chart = self.mechanics
        theta = differential(chart, 'q1').scale("p1_1") + \
            differential(chart, 'x1').scale("p")
        omega = monomial(chart, ('q1', 'p1_1')) - monomial(chart, ('p', 'x1'))
        self.assertEqual(theta, msy.canonical_theta(chart))
        self.assertEqual(omega, msy.canonical_omega(chart))

    def test_text(self):
        """Verify the displayed ω for n = 2, N = 1."""
        self.assertEqual("-dx1^dx2^dp - dx1^dq1^dp1_2 + dx2^dq1^dp1_1",
                         str(msy.canonical_omega(self.extended)))

    def test_degree(self):
        """Verify ω has degree n + 1 and constant coefficients."""
        omega = msy.canonical_omega(self.extended2)
        self.assertEqual(3, omega.degree)
        for _, coefficient in omega.items():
            self.assertIn(coefficient.as_expr(), (1, -1))

    def test_ordinary(self):
        """Verify the canonical forms need an extended chart."""
        self.assertRaises(ChartError, msy.canonical_omega, self.ordinary)


class TestContractions(ChartsMixIn, unittest.TestCase):
    """Unit tests for the closed-form contractions."""

    def test_energy(self):
        """Verify i_{∂/∂p} ω = -d^n x and i_{∂/∂p} θ = 0."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'p')  # pylint: disable=C0103
        self.assertEqual(-volume(chart), msy.contraction_omega(X))
        self.assertTrue(msy.contraction_theta(X).is_zero)

    def test_base(self):
        """Verify i_{∂/∂x^1} ω = dq∧dp_1^2∧d^n x_{21} + dp∧d^n x_1."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'x1')  # pylint: disable=C0103
        expected = wedge_all(differential(chart, 'q1'),
                             differential(chart, 'p1_2'),
                             volume_contraction(chart, 2, 1)) + \
            wedge(differential(chart, 'p'), volume_contraction(chart, 1))
        self.assertEqual(expected, msy.contraction_omega(X))

    def test_position(self):
        """Verify i_{∂/∂q^1} θ = p_1^μ d^n x_μ."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        expected = volume_contraction(chart, 1).scale("p1_1") + \
            volume_contraction(chart, 2).scale("p1_2")
        self.assertEqual(expected, msy.contraction_theta(X))

    def test_random(self):
        """Verify the expansions agree with the generic contraction."""
        instances = RandomInstances(11)
        for _ in range(5):
            chart = instances.chart(types.EXTENDED)
            X = instances.field(chart)  # pylint: disable=C0103
            self.assertEqual(interior_product(X, msy.canonical_omega(chart)),
                             msy.contraction_omega(X))
            self.assertEqual(interior_product(X, msy.canonical_theta(chart)),
                             msy.contraction_theta(X))


class TestConstruct(ChartsMixIn, unittest.TestCase):
    """Unit tests for building hamiltonian fields."""

    def test_translation(self):
        """Verify X^1 = 1 gives ∂/∂x^1."""
        g = msy.HamiltonianGenerators(self.extended, Xmu={1: 1})
        self.assertEqual(VectorField.coordinate(self.extended, 'x1'),
                         msy.construct_hamiltonian_vf(g))

    def test_rotation(self):
        """Verify the rotation generators rotate the multimomenta."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart, Xmu={1: "-x2", 2: "x1"})
        expected = self.field(chart, x1="-x2", x2="x1", p1_1="-p1_2",
                              p1_2="p1_1")
        X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
        self.assertEqual(expected, X)
        self.assertTrue(exterior_derivative(
            interior_product(X, msy.canonical_omega(chart))).is_zero)

    def test_energy_source(self):
        """Verify f0^1 = q x^1 gives x^1 ∂/∂p_1^1 + q ∂/∂p."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart, f0={1: "q1*x1"})
        X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
        self.assertEqual(self.field(chart, p1_1="x1", p="q1"), X)
        self.assertTrue(exterior_derivative(
            interior_product(X, msy.canonical_omega(chart))).is_zero)

    def test_first_term(self):
        """Verify -p ∂X^μ/∂q^i appears for N = 1."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart, Xmu={1: "q1"})
        X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
        self.assertEqual(chart.poly("-p"), X.component('p1_1'))
        self.assertTrue(lie_derivative(X, msy.canonical_omega(chart)).is_zero)

    def test_random(self):
        """Verify constructed fields preserve ω."""
        instances = RandomInstances(12)
        for _ in range(5):
            chart = instances.chart(types.EXTENDED)
            g = instances.generators(chart)
            X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
            self.assertTrue(lie_derivative(
                X, msy.canonical_omega(chart)).is_zero)

    def test_invalid(self):
        """Verify generators outside the normal form are rejected."""
        g = msy.HamiltonianGenerators(self.extended, Xi={1: "p1_1"})
        self.assertRaises(GeneratorError, msy.construct_hamiltonian_vf, g)
        g = msy.HamiltonianGenerators(self.extended)
        self.assertRaises(ChartError, msy.construct_hamiltonian_vf, g,
                          self.mechanics)


class TestHamiltonianForm(ChartsMixIn, unittest.TestCase):
    """Unit tests for hamiltonian forms."""

    def test_position(self):
        """Verify ∂/∂q^1 has f = p_1^μ d^n x_μ."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        g = msy.HamiltonianGenerators(chart, Xi={1: 1})
        expected = differential(chart, 'x2').scale("p1_1") - \
            differential(chart, 'x1').scale("p1_2")
        self.assertEqual(expected, msy.hamiltonian_form_of(X, g))

    def test_translation(self):
        """Verify ∂/∂x^1 has f = p d^n x_1 + p_1^2 dq."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'x1')  # pylint: disable=C0103
        g = msy.HamiltonianGenerators(chart, Xmu={1: 1})
        expected = differential(chart, 'x2').scale("p") + \
            differential(chart, 'q1').scale("p1_2")
        components = msy.hamiltonian_form_components(X, g)
        self.assertEqual(chart.poly("p1_2"), components.component(1, 1, 2))
        self.assertEqual(chart.poly("-p1_2"), components.component(1, 2, 1))
        self.assertEqual(expected, msy.hamiltonian_form_of(X, g))

    def test_energy_source(self):
        """Verify the hamiltonian form carries -f0."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart, f0={1: "q1*x1"})
        X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
        expected = differential(chart, 'x2').scale("-q1*x1")
        self.assertEqual(expected, msy.hamiltonian_form_of(X, g))

    def test_zero(self):
        """Verify the zero field has the zero form."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart)
        f = msy.hamiltonian_form_of(VectorField(chart), g)
        self.assertTrue(f.is_zero)
        self.assertEqual(1, f.degree)

    def test_mismatch(self):
        """Verify generators must describe the field."""
        chart = self.extended
        g = msy.HamiltonianGenerators(chart, Xi={1: 1})
        self.assertRaises(GeneratorError, msy.hamiltonian_form_of,
                          VectorField.coordinate(chart, 'x1'), g)

    def test_components_order(self):
        """Verify f_i^{μν} is stored for μ < ν."""
        self.assertRaises(InputError, msy.HamiltonianFormComponents,
                          self.extended, {}, {(1, 2, 1): 1})

    def test_gauge(self):
        """Verify f0 matters only through its pinned derivatives."""
        chart = self.extended
        g1 = msy.HamiltonianGenerators(chart, Xi={1: "x1"}, f0={1: "x1*q1"})
        g2 = msy.HamiltonianGenerators(chart, Xi={1: "x1"},
                                       f0={1: "x1*q1 + x2", 2: "x1"})
        g3 = msy.HamiltonianGenerators(chart, Xi={1: "x1"}, f0={2: "x2"})
        self.assertTrue(msy.gauge_equivalent(g1, g2))
        self.assertFalse(msy.gauge_equivalent(g1, g3))
        self.assertEqual(msy.construct_hamiltonian_vf(g1),
                         msy.construct_hamiltonian_vf(g2))


class TestClassify(ChartsMixIn, SettingsTestCase):
    """Unit tests for classification on extended charts."""

    def test_position(self):
        """Verify ∂/∂q^1 is exact hamiltonian with f0 = 0."""
        chart = self.extended
        verdict = msy.classify(VectorField.coordinate(chart, 'q1'))
        self.assertEqual(types.EXACT_HAMILTONIAN, verdict.status)
        self.assertTrue(verdict.exact)
        self.assertEqual(msy.HamiltonianGenerators(chart, Xi={1: 1}),
                         verdict.generators)
        expected = differential(chart, 'x2').scale("p1_1") - \
            differential(chart, 'x1').scale("p1_2")
        self.assertEqual(expected, verdict.hamiltonian_form)
        self.assertIs(None, verdict.witness)

    def test_energy_shift(self):
        """Verify q ∂/∂p is not hamiltonian with witness dq∧d^n x."""
        chart = self.extended
        verdict = msy.classify(self.field(chart, p="q1"))
        self.assertEqual(types.NOT_HAMILTONIAN, verdict.status)
        self.assertFalse(verdict.hamiltonian)
        self.assertEqual(-wedge(differential(chart, 'q1'), volume(chart)),
                         verdict.witness)
        self.assertIs(None, verdict.generators)

    def test_repaired(self):
        """Verify q ∂/∂p + x^1 ∂/∂p_1^1 is locally hamiltonian."""
        chart = self.extended
        verdict = msy.classify(self.field(chart, p="q1", p1_1="x1"))
        self.assertEqual(types.LOCALLY_HAMILTONIAN, verdict.status)
        self.assertFalse(verdict.exact)
        self.assertEqual(msy.HamiltonianGenerators(chart, f0={1: "q1*x1"}),
                         verdict.generators)
        self.assertEqual(differential(chart, 'x2').scale("-q1*x1"),
                         verdict.hamiltonian_form)

    def test_translation(self):
        """Verify ∂/∂x^1 is exact hamiltonian."""
        chart = self.extended
        verdict = msy.classify(VectorField.coordinate(chart, 'x1'))
        self.assertEqual(types.EXACT_HAMILTONIAN, verdict.status)
        self.assertEqual(msy.HamiltonianGenerators(chart, Xmu={1: 1}),
                         verdict.generators)

    def test_position_dependent_base(self):
        """Verify q^2 ∂/∂x^1 is not hamiltonian for N = 2."""
        verdict = msy.classify(self.field(self.extended2, x1="q2"))
        self.assertEqual(types.NOT_HAMILTONIAN, verdict.status)

    def test_nonremovable(self):
        """Verify a q-dependent f0 gives a locally hamiltonian field."""
        chart = self.extended2
        g = msy.HamiltonianGenerators(chart, Xi={2: "x1*q1"},
                                      f0={2: "q1*q2**2"})
        X = msy.construct_hamiltonian_vf(g)  # pylint: disable=C0103
        verdict = msy.classify(X)
        self.assertEqual(types.LOCALLY_HAMILTONIAN, verdict.status)
        self.assertTrue(msy.gauge_equivalent(g, verdict.generators))

    def test_mechanics(self):
        """Verify momentum-dependent fields on symplectic charts."""
        chart = self.mechanics
        X = self.field(chart, q1="q1")  # pylint: disable=C0103
        verdict = msy.classify(X)
        self.assertEqual(types.NOT_HAMILTONIAN, verdict.status)
        X = self.field(chart, q1="p1_1")  # pylint: disable=C0103
        verdict = msy.classify(X)
        self.assertTrue(verdict.hamiltonian)
        self.assertIs(None, verdict.generators)
        self.assertEqual(interior_product(X, msy.canonical_omega(chart)),
                         exterior_derivative(verdict.hamiltonian_form))

    def test_random(self):
        """Verify classification recovers random generators."""
        instances = RandomInstances(13)
        for _ in range(5):
            chart = instances.chart(types.EXTENDED)
            g = instances.generators(chart)
            verdict = msy.classify(msy.construct_hamiltonian_vf(g))
            self.assertTrue(verdict.hamiltonian)
            self.assertTrue(msy.gauge_equivalent(g, verdict.generators))

    def test_cross_check(self):
        """Verify a failed reconstruction is an invariant breach."""
        chart = self.extended
        broken = VectorField.coordinate(chart, 'x2')
        with patch('multiphase.core.multisymplectic.construct_hamiltonian_vf',
                   return_value=broken):
            self.assertRaises(InvariantBreach, msy.classify,
                              VectorField.coordinate(chart, 'q1'))

    def test_cross_check_disabled(self):
        """Verify the reconstruction can be disabled."""
        settings.CROSS_CHECK = False
        chart = self.extended
        broken = VectorField.coordinate(chart, 'x2')
        with patch('multiphase.core.multisymplectic.construct_hamiltonian_vf',
                   return_value=broken):
            verdict = msy.classify(VectorField.coordinate(chart, 'q1'))
        self.assertTrue(verdict.exact)

    def test_ordinary(self):
        """Verify classification needs an extended chart."""
        self.assertRaises(ChartError, msy.classify,
                          VectorField.coordinate(self.ordinary, 'q1'))


class TestSolve(ChartsMixIn, unittest.TestCase):
    """Unit tests for the inverse problem."""

    def test_position(self):
        """Verify dp_1^μ∧d^n x_μ is the contraction of ∂/∂q^1."""
        chart = self.extended
        eta = wedge(differential(chart, 'p1_1'),
                    volume_contraction(chart, 1)) + \
            wedge(differential(chart, 'p1_2'), volume_contraction(chart, 2))
        self.assertEqual(VectorField.coordinate(chart, 'q1'),
                         msy.solve_inverse(eta))

    def test_energy(self):
        """Verify -d^n x is the contraction of ∂/∂p."""
        chart = self.extended
        self.assertEqual(VectorField.coordinate(chart, 'p'),
                         msy.solve_inverse(-volume(chart)))

    def test_not_in_image(self):
        """Verify dq^1∧dq^2 is no contraction."""
        chart = self.extended2
        with self.assertRaises(NotInImage) as context:
            msy.solve_inverse(monomial(chart, ('q1', 'q2')))
        self.assertEqual(monomial(chart, ('q1', 'q2'), -1),
                         context.exception.witness)

    def test_inconsistent(self):
        """Verify X^q must agree across μ."""
        chart = self.extended
        eta = wedge(differential(chart, 'p1_1'), volume_contraction(chart, 1))
        self.assertRaises(NotInImage, msy.solve_inverse, eta)

    def test_degree(self):
        """Verify the form must have degree n."""
        self.assertRaises(InputError, msy.solve_inverse,
                          differential(self.extended, 'q1'))

    def test_hamiltonian(self):
        """Verify f = p_1^μ d^n x_μ gives ∂/∂q^1."""
        chart = self.extended
        f = differential(chart, 'x2').scale("p1_1") - \
            differential(chart, 'x1').scale("p1_2")
        self.assertEqual(VectorField.coordinate(chart, 'q1'),
                         msy.solve_hamiltonian(f))

    def test_closed(self):
        """Verify a closed form gives the zero field."""
        chart = self.extended
        f = differential(chart, 'x1').scale("x2") + \
            differential(chart, 'x2').scale("x1")
        self.assertTrue(msy.solve_hamiltonian(f).is_zero)

    def test_random(self):
        """Verify the solver inverts the contraction of random fields."""
        instances = RandomInstances(14)
        for _ in range(5):
            chart = instances.chart(types.EXTENDED)
            X = instances.field(chart)  # pylint: disable=C0103
            eta = interior_product(X, msy.canonical_omega(chart))
            self.assertEqual(X, msy.solve_inverse(eta))


class TestSections(ChartsMixIn, unittest.TestCase):
    """Unit tests for hamiltonian sections and the symbol."""

    def test_zero_section(self):
        """Verify H = 0 gives dq∧dp_1^μ∧d^n x_μ."""
        omega_h = msy.pullback_by_section(0, self.extended)
        chart = omega_h.chart
        expected = monomial(chart, ('q1', 'p1_1', 'x2')) - \
            monomial(chart, ('q1', 'p1_2', 'x1'))
        self.assertEqual(expected, omega_h)

    def test_kinetic(self):
        """Verify H = (p_1^1)²/2 adds p_1^1 dp_1^1∧d^n x."""
        omega_h = msy.pullback_by_section("p1_1**2/2", self.extended)
        chart = omega_h.chart
        expected = monomial(chart, ('q1', 'p1_1', 'x2')) - \
            monomial(chart, ('q1', 'p1_2', 'x1')) + \
            monomial(chart, ('p1_1', 'x1', 'x2'), "p1_1")
        self.assertEqual(expected, omega_h)
        self.assertTrue(exterior_derivative(omega_h).is_zero)
        point = Point(chart, {'x1': 1, 'x2': 2, 'q1': 3, 'p1_1': 4,
                              'p1_2': 5})
        self.assertEqual([], kernel_at(omega_h, point))

    def test_energy_dependent(self):
        """Verify H must not involve the energy."""
        self.assertRaises(ChartError, msy.pullback_by_section,
                          self.extended.poly("p"), self.extended)

    def test_evolution(self):
        """Verify the evolution field spans the kernel of ω_H for n = 1."""
        H = "p1_1**2/2 + q1**2/2"  # pylint: disable=C0103
        omega_h = msy.pullback_by_section(H, self.mechanics)
        chart = omega_h.chart
        field = msy.evolution_field(H, chart)
        self.assertEqual(self.field(chart, x1="1", q1="p1_1", p1_1="-q1"),
                         field)
        self.assertTrue(interior_product(field, omega_h).is_zero)
        point = Point(chart, {'x1': 0, 'q1': 1, 'p1_1': 2})
        (vector,) = kernel_at(omega_h, point)
        self.assertNotEqual(0, vector[0])
        self.assertEqual((2 * vector[0], -vector[0]), vector[1:])

    def test_evolution_base(self):
        """Verify the evolution field needs a one-dimensional base."""
        self.assertRaises(ChartError, msy.evolution_field, 0, self.extended)

    def test_symbol(self):
        """Verify the symbol of ω is ω̂ with n̂ = n."""
        for chart in (self.mechanics, self.extended, self.extended2):
            ordinary, omega_hat = msy.symbol_projection(chart)
            self.assertEqual(chart.n, ordinary.nhat)
            self.assertEqual(chart.dimension - 1, ordinary.dimension)
            self.assertEqual(canonical_omega_hat(ordinary), omega_hat)

    def test_symbol_kernel(self):
        """Verify the symbol degenerates along ∂/∂p."""
        chart = self.extended
        point = Point(chart, {name: 1 for name in chart.names})
        self.assertEqual([(0, 0, 0, 1)], msy.symbol_kernel_at(chart, point))

    def test_project(self):
        """Verify fields project to the symbol chart."""
        X = self.field(self.extended, q1="x1", p1_1="q1", p="x2")  # pylint: disable=C0103
        projected = msy.project_to_symbol(X)
        self.assertEqual(self.field(projected.chart, q1="x1", p1_1="q1"),
                         projected)
        self.assertRaises(ChartError, msy.project_to_symbol,
                          self.field(self.extended, q1="p"))

    def test_function_form(self):
        """Verify functions of the ordinary chart are accepted as H."""
        ordinary = self.ordinary
        omega_h = msy.pullback_by_section(ordinary.poly("q1"), self.extended)
        self.assertEqual(ordinary, omega_h.chart)
        self.assertEqual(1, omega_h.coefficient(("x1", "x2", "q1")))
