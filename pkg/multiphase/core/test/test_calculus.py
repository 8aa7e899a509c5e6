"""Unit tests for the multiphase.core.calculus module."""

import unittest

from multiphase.common import ChartError, InputError, VerticalityError
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm, function, differential,
                                   monomial, volume, volume_contraction,
                                   wedge)
from multiphase.core.calculus import (exterior_derivative,
                                      vertical_derivative, interior_product,
                                      lie_derivative, vertical_lie_derivative,
                                      poincare_homotopy, vertical_homotopy,
                                      compose, transfer, pullback,
                                      interior_product_vvf,
                                      vertical_derivative_vvf,
                                      vertical_homotopy_vvf,
                                      lie_derivative_vvf, is_vector_valued)
from multiphase.core.multisymplectic import canonical_theta, canonical_omega
from multiphase.core.polysymplectic import (canonical_theta_hat,
                                            canonical_omega_hat)
from multiphase.core.verifier import RandomInstances

from multiphase.core.test import ChartsMixIn


class TestExteriorDerivative(ChartsMixIn, unittest.TestCase):
    """Unit tests for d and d_V."""

    def test_function(self):
        """Verify d of a function is its gradient."""
        chart = self.mechanics
        expected = differential(chart, 'q1').scale("2*q1*p") + \
            differential(chart, 'p').scale("q1**2")
        self.assertEqual(expected,
                         exterior_derivative(function(chart, "q1**2*p")))

    def test_hand_expansion(self):
        """Verify d(q p dx^1) = p dq∧dx^1 + q dp∧dx^1."""
        chart = self.mechanics
        a = differential(chart, 'x1').scale("q1*p")
        expected = monomial(chart, ('q1', 'x1'), "p") + \
            monomial(chart, ('p', 'x1'), "q1")
        self.assertEqual(expected, exterior_derivative(a))

    def test_theta(self):
        """Verify dθ = -ω on extended charts."""
        for chart in (self.mechanics, self.extended, self.extended2):
            self.assertEqual(-canonical_omega(chart),
                             exterior_derivative(canonical_theta(chart)))

    def test_d_squared(self):
        """Verify d∘d = 0 and d_V∘d_V = 0 on random forms."""
        instances = RandomInstances(1)
        for _ in range(5):
            chart = instances.chart()
            a = instances.form(chart)
            self.assertTrue(exterior_derivative(
                exterior_derivative(a)).is_zero)
            self.assertTrue(vertical_derivative(
                vertical_derivative(a)).is_zero)

    def test_vertical_parameter(self):
        """Verify d_V treats base coordinates as parameters."""
        chart = self.ordinary
        self.assertEqual(differential(chart, 'q1').scale("x1"),
                         vertical_derivative(function(chart, "x1*q1")))

    def test_leibniz(self):
        """Verify d(a∧b) = da∧b + (-1)^k a∧db."""
        chart = self.extended
        a = differential(chart, 'q1').scale("x1*p1_1")
        b = differential(chart, 'x2').scale("q1**2")
        expected = wedge(exterior_derivative(a), b) - \
            wedge(a, exterior_derivative(b))
        self.assertEqual(expected, exterior_derivative(wedge(a, b)))


class TestInteriorProduct(ChartsMixIn, unittest.TestCase):
    """Unit tests for the interior product."""

    def test_volume(self):
        """Verify i_{∂_μ} d^n x = d^n x_μ."""
        chart = self.extended
        for mu in (1, 2):
            X = VectorField.coordinate(chart, 'x{}'.format(mu))  # pylint: disable=C0103
            self.assertEqual(volume_contraction(chart, mu),
                             interior_product(X, volume(chart)))

    def test_energy(self):
        """Verify i_{∂/∂p} ω = -d^n x."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'p')  # pylint: disable=C0103
        self.assertEqual(-volume(chart),
                         interior_product(X, canonical_omega(chart)))

    def test_position(self):
        """Verify i_{∂/∂q^1} ω = dp_1^μ∧d^n x_μ."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        expected = wedge(differential(chart, 'p1_1'),
                         volume_contraction(chart, 1)) + \
            wedge(differential(chart, 'p1_2'), volume_contraction(chart, 2))
        self.assertEqual(expected,
                         interior_product(X, canonical_omega(chart)))

    def test_function(self):
        """Verify contraction of a function is the zero function."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        result = interior_product(X, function(chart, "q1"))
        self.assertTrue(result.is_zero)
        self.assertEqual(0, result.degree)

    def test_twice(self):
        """Verify i_X i_X a = 0."""
        instances = RandomInstances(2)
        chart = instances.chart()
        X = instances.field(chart)  # pylint: disable=C0103
        a = instances.form(chart, 3)
        self.assertTrue(interior_product(X, interior_product(X, a)).is_zero)

    def test_mismatch(self):
        """Verify fields and forms must share a chart."""
        self.assertRaises(ChartError, interior_product,
                          VectorField.coordinate(self.mechanics, 'q1'),
                          volume(self.extended))


class TestGradedRules(ChartsMixIn, unittest.TestCase):
    """Unit tests for the graded rules of wedge and contraction."""

    @staticmethod
    def contraction_rule(X, a, b):  # pylint: disable=C0103
        """Get both sides of i_X(a∧b) = (i_X a)∧b + (-1)^k a∧(i_X b)."""
        right = DifferentialForm(a.chart, max(a.degree + b.degree - 1, 0))
        if a.degree:
            right = right + wedge(interior_product(X, a), b)
        if b.degree:
            term = wedge(a, interior_product(X, b))
            right = right + (term.scale(-1) if a.degree % 2 else term)
        return interior_product(X, wedge(a, b)), right

    def test_contraction_function_first(self):
        """Verify i_X(f b) = f i_X(b) for a function f."""
        chart = self.extended
        X = self.field(chart, q1="q1", x2="1")  # pylint: disable=C0103
        f = function(chart, "q1*x1")
        b = differential(chart, 'q1').scale("x2")
        left, right = self.contraction_rule(X, f, b)
        self.assertEqual(function(chart, "q1**2*x1*x2"), left)
        self.assertEqual(left, right)

    def test_contraction_function_last(self):
        """Verify i_X(a g) = i_X(a) g for a function g."""
        chart = self.extended
        X = self.field(chart, q1="q1", x2="1")  # pylint: disable=C0103
        a = differential(chart, 'q1').scale("x2")
        g = function(chart, "p")
        left, right = self.contraction_rule(X, a, g)
        self.assertEqual(function(chart, "p*x2*q1"), left)
        self.assertEqual(left, right)

    def test_contraction_functions(self):
        """Verify contraction of a product of functions vanishes."""
        chart = self.extended
        X = self.field(chart, q1="q1")  # pylint: disable=C0103
        left, right = self.contraction_rule(X, function(chart, "x1"),
                                            function(chart, "q1"))
        self.assertTrue(left.is_zero)
        self.assertEqual(0, left.degree)
        self.assertEqual(left, right)

    def test_contraction_one_and_two(self):
        """Verify the sign of a 1-form against a 2-form."""
        chart = self.extended
        X = self.field(chart, q1="p", x1="1")  # pylint: disable=C0103
        a = differential(chart, 'q1')
        b = wedge(differential(chart, 'x1'), differential(chart, 'x2'))
        left, right = self.contraction_rule(X, a, b)
        expected = b.scale("p") + wedge(differential(chart, 'x2'),
                                        differential(chart, 'q1'))
        self.assertEqual(expected, left)
        self.assertEqual(left, right)

    def test_contraction_random(self):
        """Verify the contraction rule for every pair of low degrees."""
        instances = RandomInstances(42)
        for chart in (self.extended, self.ordinary2):
            X = instances.field(chart)  # pylint: disable=C0103
            for k in range(3):
                for m in range(3):
                    a, b = instances.form(chart, k), instances.form(chart, m)
                    left, right = self.contraction_rule(X, a, b)
                    self.assertEqual(left, right, (k, m))

    def test_commutativity_mixed(self):
        """Verify a∧b = (-1)^(kl) b∧a with functions and 1-forms."""
        chart = self.extended
        f = function(chart, "x1*q1")
        a = differential(chart, 'q1').scale("p")
        b = differential(chart, 'x1')
        c = wedge(differential(chart, 'x2'), differential(chart, 'p'))
        self.assertEqual(wedge(f, a), wedge(a, f))
        self.assertEqual(a.scale("x1*q1"), wedge(f, a))
        self.assertEqual(wedge(a, b), -wedge(b, a))
        self.assertEqual(wedge(a, c), wedge(c, a))
        self.assertEqual(wedge(f, f), function(chart, "x1**2*q1**2"))


class TestLieDerivative(ChartsMixIn, unittest.TestCase):
    """Unit tests for the Lie derivatives."""

    def test_translation(self):
        """Verify L_{∂/∂x^1} ω = 0."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'x1')  # pylint: disable=C0103
        self.assertTrue(lie_derivative(X, canonical_omega(chart)).is_zero)

    def test_position(self):
        """Verify L_{∂/∂q^1} θ = 0."""
        chart = self.extended
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        self.assertTrue(lie_derivative(X, canonical_theta(chart)).is_zero)

    def test_energy_shift(self):
        """Verify L_{q ∂/∂p} ω = -dq∧d^n x."""
        chart = self.extended
        X = self.field(chart, p="q1")  # pylint: disable=C0103
        expected = -wedge(differential(chart, 'q1'), volume(chart))
        self.assertEqual(expected, lie_derivative(X, canonical_omega(chart)))

    def test_function(self):
        """Verify L_X f = X(f) for functions."""
        chart = self.extended
        X = self.field(chart, x1="-x2", x2="x1")  # pylint: disable=C0103
        f = chart.poly("x1*q1")
        self.assertEqual(function(chart, X.apply(f)),
                         lie_derivative(X, function(chart, f)))

    def test_vertical(self):
        """Verify the vertical Lie derivative needs a vertical field."""
        chart = self.ordinary
        X = self.field(chart, x1="1")  # pylint: disable=C0103
        a = differential(chart, 'q1')
        self.assertRaises(VerticalityError, vertical_lie_derivative, X, a)
        V = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        self.assertTrue(vertical_lie_derivative(V, a.scale("p1_1")).is_zero)


class TestHomotopy(ChartsMixIn, unittest.TestCase):
    """Unit tests for the homotopy operators."""

    def test_area(self):
        """Verify I(dx^1∧dx^2) = (x^1 dx^2 - x^2 dx^1)/2."""
        chart = self.extended
        expected = differential(chart, 'x2').scale("x1/2") - \
            differential(chart, 'x1').scale("x2/2")
        self.assertEqual(expected, poincare_homotopy(volume(chart)))

    def test_exact(self):
        """Verify I(dq) = q."""
        chart = self.extended
        self.assertEqual(function(chart, "q1"),
                         poincare_homotopy(differential(chart, 'q1')))

    def test_closed(self):
        """Verify d I(a) = a for closed forms."""
        chart = self.extended
        omega = canonical_omega(chart)
        self.assertEqual(omega, exterior_derivative(poincare_homotopy(omega)))

    def test_identity(self):
        """Verify d I(a) + I d(a) = a on random forms."""
        instances = RandomInstances(3)
        for _ in range(5):
            chart = instances.chart()
            a = instances.form(chart, instances.rng.randint(1, 3))
            result = exterior_derivative(poincare_homotopy(a)) + \
                poincare_homotopy(exterior_derivative(a))
            self.assertEqual(a, result)

    def test_degree_zero(self):
        """Verify the homotopy operator rejects functions."""
        self.assertRaises(InputError, poincare_homotopy,
                          function(self.extended, "q1"))

    def test_restricted(self):
        """Verify frozen coordinates act as parameters."""
        chart = self.extended
        a = differential(chart, 'q1').scale("x1*q1")
        self.assertEqual(function(chart, "x1*q1**2/2"),
                         poincare_homotopy(a, [chart.q(1)]))
        self.assertTrue(poincare_homotopy(differential(chart, 'x1'),
                                          [chart.q(1)]).is_zero)

    def test_vertical(self):
        """Verify d_V I_V(a) + I_V d_V(a) = a - π₀(a)."""
        chart = self.ordinary
        a = differential(chart, 'q1').scale("x1*p1_1") + \
            differential(chart, 'x2').scale("x1 + q1")
        result = vertical_derivative(vertical_homotopy(a)) + \
            vertical_homotopy(vertical_derivative(a))
        constant = differential(chart, 'x2').scale("x1")
        self.assertEqual(a - constant, result)


class TestSubstitution(ChartsMixIn, unittest.TestCase):
    """Unit tests for polynomial substitution and pull-back."""

    def test_compose(self):
        """Verify variables are replaced by their images."""
        chart = self.mechanics
        poly = chart.poly("q1**2*x1 + 1")
        images = [chart.gen('x1'), chart.poly("q1 + p"), None, None]
        self.assertEqual(chart.poly("(q1 + p)**2*x1 + 1"),
                         compose(poly, images, chart.ring))

    def test_compose_missing(self):
        """Verify variables without images are reported."""
        chart = self.mechanics
        images = [chart.gen('x1'), None, None, None]
        self.assertRaises(ChartError, compose, chart.poly("q1"), images,
                          chart.ring)

    def test_transfer(self):
        """Verify polynomials move between charts by coordinate name."""
        poly = self.ordinary.poly("x1*p1_2 + q1")
        moved = transfer(poly, self.extended)
        self.assertEqual(self.extended.poly("x1*p1_2 + q1"), moved)
        self.assertRaises(ChartError, transfer, self.extended.poly("p"),
                          self.ordinary)

    def test_pullback(self):
        """Verify pull-back substitutes images into forms."""
        source = self.ordinary1
        target = self.mechanics
        images = {'x1': "x1", 'q1': "q1", 'p1_1': "p1_1", 'p': "-q1**2"}
        a = monomial(target, ('p', 'x1'))
        expected = monomial(source, ('q1', 'x1'), "-2*q1")
        self.assertEqual(expected, pullback(a, images, source))

    def test_pullback_missing(self):
        """Verify pull-back needs every image."""
        self.assertRaises(ChartError, pullback, volume(self.mechanics),
                          {'x1': "x1"}, self.ordinary1)


class TestVectorValued(ChartsMixIn, unittest.TestCase):
    """Unit tests for the componentwise operations."""

    def test_contraction_position(self):
        """Verify i_{∂/∂q^1} ω̂ = dp_1^a ⊗ ê_a."""
        chart = self.ordinary
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        expected = VectorValuedForm(chart, 1, {
            'e1': differential(chart, 'p1_1'),
            'e2': differential(chart, 'p1_2')})
        self.assertEqual(expected,
                         interior_product_vvf(X, canonical_omega_hat(chart)))

    def test_contraction_momentum(self):
        """Verify i_{∂/∂p_1^1} ω̂ = -dq^1 ⊗ ê_1."""
        chart = self.ordinary
        X = VectorField.coordinate(chart, 'p1_1')  # pylint: disable=C0103
        expected = VectorValuedForm(chart, 1,
                                    {'e1': -differential(chart, 'q1')})
        self.assertEqual(expected,
                         interior_product_vvf(X, canonical_omega_hat(chart)))

    def test_vertically_exact(self):
        """Verify -d_V θ̂ = ω̂."""
        for chart in (self.ordinary1, self.ordinary, self.ordinary2):
            theta_hat = canonical_theta_hat(chart)
            self.assertEqual(canonical_omega_hat(chart),
                             -vertical_derivative_vvf(theta_hat))

    def test_lie_position(self):
        """Verify L_{∂/∂q^1} θ̂ = 0."""
        chart = self.ordinary
        X = VectorField.coordinate(chart, 'q1')  # pylint: disable=C0103
        self.assertTrue(lie_derivative_vvf(X,
                                           canonical_theta_hat(chart)).is_zero)

    def test_lie_vertical(self):
        """Verify the componentwise Lie derivative needs a vertical field."""
        chart = self.ordinary
        X = VectorField.coordinate(chart, 'x1')  # pylint: disable=C0103
        self.assertRaises(VerticalityError, lie_derivative_vvf, X,
                          canonical_theta_hat(chart))

    def test_homotopy(self):
        """Verify the vertical homotopy acts componentwise."""
        chart = self.ordinary
        w = VectorValuedForm(chart, 1, {'e2': differential(chart, 'p1_2')})
        expected = VectorValuedForm(chart, 0,
                                    {'e2': function(chart, "p1_2")})
        self.assertEqual(expected, vertical_homotopy_vvf(w))

    def test_is_vector_valued(self):
        """Verify vector-valued forms are recognised."""
        chart = self.ordinary
        self.assertTrue(is_vector_valued(canonical_theta_hat(chart)))
        self.assertFalse(is_vector_valued(DifferentialForm(chart, 1)))
