"""Settings for the Multiphase package."""

import logging

# Logging settings
DEFAULT_LOGGING_FORMAT = "%(message)s"
LEVELED_LOGGING_FORMAT = "%(levelname)s: %(message)s"
VERBOSE_LOGGING_FORMAT = "[%(levelname)-8s] %(message)s"
VERBOSE2_LOGGING_FORMAT = "[%(levelname)-8s] (%(name)s @%(lineno)4d) %(message)s"  # pylint: disable=C0301
QUIET_LOGGING_LEVEL = logging.WARNING
DEFAULT_LOGGING_LEVEL = logging.WARNING
VERBOSE_LOGGING_LEVEL = logging.INFO
VERBOSE2_LOGGING_LEVEL = logging.DEBUG
VERBOSE3_LOGGING_LEVEL = logging.DEBUG - 1

# Document settings
SCHEMA_VERSION = "1"  # version string written to and required in documents
DEFAULT_EXT = '.json'  # output format when no path is given
INDENT = 2  # JSON indentation of written documents

# Classification settings
CROSS_CHECK = True  # rebuild classified fields from their generators

# Verification settings
VERIFY_TRIALS = 100  # default number of trials per suite
VERIFY_SEED = 42  # default root seed
VERIFY_MAX_DEGREE = 3  # maximum total degree of random polynomials
VERIFY_MAX_TERMS = 3  # maximum number of terms of random polynomials
VERIFY_CHART_SIZES = ((1, 1), (2, 1), (2, 2), (3, 2))  # (n, N) pairs
VERIFY_POINTS = 3  # random points per kernel check within one trial
VERIFY_JOBS = 1  # worker processes evaluating trials

# Random instance bounds
COEFFICIENT_BOUND = 9  # numerators drawn from {-9..9} \ {0}
DENOMINATOR_BOUND = 4  # denominators drawn from {1..4}
