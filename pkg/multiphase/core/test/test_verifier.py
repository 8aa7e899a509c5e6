"""Unit tests for the multiphase.core.verifier module."""

import unittest
from unittest.mock import patch

import hashlib

from multiphase import settings
from multiphase.common import InputError, InvariantBreach
from multiphase.core import types, verifier
from multiphase.core.forms import VectorField
from multiphase.core import multisymplectic as msy

from multiphase.core.test import SettingsTestCase

SMALL = dict(max_degree=1, max_terms=1, sizes=[(1, 1)])

construct = msy.construct_hamiltonian_vf


def construct_shifted(g, chart=None):
    """Build a hamiltonian field with an extra q ∂/∂p component."""
    X = construct(g, chart)  # pylint: disable=C0103
    return X + VectorField.coordinate(X.chart, 'p', X.chart.gen('q1'))


class TestChildSeed(unittest.TestCase):
    """Unit tests for the child_seed function."""

    def test_value(self):
        """Verify the seed is the first 8 bytes of a SHA-256 digest."""
        digest = hashlib.sha256(b"42:kernel:7").digest()
        self.assertEqual(int.from_bytes(digest[:8], 'big'),
                         verifier.child_seed(42, 'kernel', 7))

    def test_distinct(self):
        """Verify trials and suites have distinct seeds."""
        seeds = {verifier.child_seed(42, suite, trial)
                 for suite in verifier.SUITES for trial in range(5)}
        self.assertEqual(15, len(seeds))
        self.assertTrue(all(0 <= seed < 2 ** 64 for seed in seeds))


class TestRandomInstances(unittest.TestCase):
    """Unit tests for the RandomInstances class."""

    def test_reproducible(self):
        """Verify a seed determines every drawn object."""
        first = verifier.RandomInstances(5)
        second = verifier.RandomInstances(5)
        for _ in range(3):
            chart = first.chart()
            self.assertEqual(chart, second.chart())
            self.assertEqual(first.form(chart), second.form(chart))
            self.assertEqual(first.field(chart), second.field(chart))
            self.assertEqual(first.point(chart), second.point(chart))

    def test_polynomial_positions(self):
        """Verify polynomials only involve the requested coordinates."""
        instances = verifier.RandomInstances(6)
        chart = instances.chart(types.EXTENDED)
        for _ in range(10):
            poly = instances.polynomial(chart, chart.base, nonzero=True)
            self.assertTrue(poly)
            self.assertFalse(chart.depends_on(poly, chart.vertical))

    def test_rational_bounds(self):
        """Verify rationals respect the configured bounds."""
        instances = verifier.RandomInstances(7)
        for _ in range(20):
            value = instances.rational()
            self.assertNotEqual(0, value)
            self.assertLessEqual(abs(value.p), settings.COEFFICIENT_BOUND)
            self.assertLessEqual(value.q, settings.DENOMINATOR_BOUND)

    def test_generators(self):
        """Verify drawn generators are in the normal form."""
        instances = verifier.RandomInstances(8, sizes=[(2, 2), (1, 1)])
        for _ in range(5):
            chart = instances.chart(types.EXTENDED)
            self.assertTrue(instances.generators(chart).valid)
            ordinary = instances.chart(types.ORDINARY)
            self.assertTrue(instances.poly_generators(ordinary).valid)

    def test_vertical_field(self):
        """Verify vertical fields have no base components."""
        instances = verifier.RandomInstances(9)
        for _ in range(5):
            chart = instances.chart()
            self.assertTrue(instances.field(chart, vertical=True).is_vertical)


class TestVerify(SettingsTestCase):
    """Unit tests for the verify function."""

    def test_no_trials(self):
        """Verify zero trials give passing reports for every suite."""
        reports = verifier.verify(trials=0)
        self.assertEqual(list(verifier.SUITES),
                         [report.suite for report in reports])
        for report in reports:
            self.assertEqual(0, report.attempted)
            self.assertTrue(report.ok)

    def test_defaults(self):
        """Verify settings provide the trial count and the seed."""
        settings.VERIFY_TRIALS = 0
        settings.VERIFY_SEED = 7
        (report,) = verifier.verify('kernel')
        self.assertEqual(types.TrialReport('kernel', 7, 0, 0), report)

    def test_unknown_suite(self):
        """Verify unknown suites are rejected."""
        self.assertRaises(InputError, verifier.verify, 'everything')

    def test_kernel(self):
        """Verify a small kernel run passes."""
        (report,) = verifier.verify('kernel', trials=2, seed=1, **SMALL)
        self.assertEqual(2, report.attempted)
        self.assertTrue(report.ok, report.failures)

    def test_kernel_default_bounds(self):
        """Verify kernel trials pass at the default bounds and seed."""
        (report,) = verifier.verify('kernel', trials=20, seed=42)
        self.assertEqual(20, report.attempted)
        self.assertEqual(20, report.passed)
        self.assertTrue(report.ok, report.failures)

    def test_multisymplectic(self):
        """Verify a small multisymplectic run passes."""
        (report,) = verifier.verify('multisymplectic', trials=2, seed=2,
                                    **SMALL)
        self.assertTrue(report.ok, report.failures)

    def test_polysymplectic(self):
        """Verify a small polysymplectic run passes."""
        (report,) = verifier.verify('polysymplectic', trials=2, seed=3,
                                    **SMALL)
        self.assertTrue(report.ok, report.failures)

    @patch('multiphase.core.multisymplectic.construct_hamiltonian_vf',
           construct_shifted)
    def test_broken_construction(self):
        """Verify a broken construction is reported with its trial."""
        (report,) = verifier.verify('multisymplectic', trials=2, seed=4,
                                    **SMALL)
        self.assertFalse(report.ok)
        self.assertEqual(0, report.passed)
        failure = report.failures[0]
        self.assertEqual("constructed field is hamiltonian", failure['check'])
        self.assertEqual(verifier.child_seed(4, 'multisymplectic', 0),
                         failure['seed'])
        self.assertIn('X', failure['inputs'])

    def test_raised_errors(self):
        """Verify errors inside a trial become failure records."""
        def trial(*_):
            raise InvariantBreach("broken")
        with patch.dict(verifier.SUITE_TRIALS, {'kernel': trial}):
            failures = verifier.run_trial('kernel', 1, 0)
        self.assertEqual([{'trial': 0,
                           'seed': verifier.child_seed(1, 'kernel', 0),
                           'check': "raised InvariantBreach",
                           'chart': None, 'inputs': {},
                           'witness': "broken"}], failures)
