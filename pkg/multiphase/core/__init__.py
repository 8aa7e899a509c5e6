"""Core package for Multiphase."""

from multiphase.core.chart import (Chart, Point, build_extended_chart,
                                   build_ordinary_chart)
from multiphase.core.forms import (DifferentialForm, VectorField,
                                   VectorValuedForm)
