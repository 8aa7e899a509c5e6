"""Package for multiphase."""

import sys

__project__ = 'Multiphase'
__version__ = '0.1.0'

CLI = 'multiphase'
VERSION = "{0} v{1}".format(__project__, __version__)
DESCRIPTION = "Exact exterior calculus for hamiltonian vector fields " \
              "on multiphase spaces."

MIN_PYTHON_VERSION = 3, 5

if not sys.version_info >= MIN_PYTHON_VERSION:  # pragma: no cover (manual test)
    exit("Python {}.{}+ is required.".format(*MIN_PYTHON_VERSION))

try:
    from multiphase.common import MultiphaseError, NotInImage, InvariantBreach
    from multiphase.core import (build_extended_chart, build_ordinary_chart,
                                 DifferentialForm, VectorField,
                                 VectorValuedForm)
    from multiphase.core import (calculus, multisymplectic, polysymplectic,
                                 importer, exporter, publisher, verifier)
except ImportError:  # pragma: no cover (manual test)
    pass
