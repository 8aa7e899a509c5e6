"""Package for the multiphase.core tests."""

import os
import unittest

from multiphase import settings
from multiphase.core.chart import build_extended_chart, build_ordinary_chart
from multiphase.core.forms import VectorField

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__),
                                    '..', '..', '..'))

FILES = os.path.join(os.path.dirname(__file__), 'files')

ENV = 'TEST_INTEGRATION'  # environment variable to enable integration tests
REASON = "'{0}' variable not set".format(ENV)


class SettingsTestCase(unittest.TestCase):
    """Base test case class that backs up settings."""

    def setUp(self):
        self.backup = (settings.CROSS_CHECK,
                       settings.VERIFY_TRIALS,
                       settings.VERIFY_SEED,
                       settings.VERIFY_MAX_DEGREE,
                       settings.VERIFY_MAX_TERMS,
                       settings.VERIFY_CHART_SIZES,
                       settings.VERIFY_JOBS)

    def tearDown(self):
        (settings.CROSS_CHECK,
         settings.VERIFY_TRIALS,
         settings.VERIFY_SEED,
         settings.VERIFY_MAX_DEGREE,
         settings.VERIFY_MAX_TERMS,
         settings.VERIFY_CHART_SIZES,
         settings.VERIFY_JOBS) = self.backup


class ChartsMixIn:  # pylint: disable=W0232,R0903
    """Charts and fields shared by test cases."""

    mechanics = build_extended_chart(1, 1)  # (x1, q1, p1_1, p)
    extended = build_extended_chart(2, 1)  # (x1, x2, q1, p1_1, p1_2, p)
    extended2 = build_extended_chart(2, 2)
    ordinary1 = build_ordinary_chart(1, 1)  # (x1, q1, p1_1)
    ordinary = build_ordinary_chart(2, 1)  # (x1, x2, q1, p1_1, p1_2)
    ordinary2 = build_ordinary_chart(2, 2)

    @staticmethod
    def field(chart, **components):
        """Build a field from coordinate names and expression strings."""
        return VectorField(chart, components)
