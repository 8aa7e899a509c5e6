"""Differential forms, vector fields, and vector-valued forms on a chart."""

from multiphase import common
from multiphase.common import ChartError, DocumentError
from multiphase.core.types import canonical

log = common.logger(__name__)


def _check_charts(*objects):
    """Ensure all objects live on the same chart."""
    chart = objects[0].chart
    for obj in objects[1:]:
        if obj.chart != chart:
            msg = "chart mismatch: {} and {}".format(chart, obj.chart)
            raise ChartError(msg)
    return chart


def _position(chart, key):
    """Convert a coordinate name or position to a position."""
    if isinstance(key, str):
        return chart.index(key)
    if not 0 <= key < chart.dimension:
        raise ChartError("no coordinate at position {}".format(key))
    return key


def _accumulate(terms, key, value):
    """Add a polynomial to a sparse map entry."""
    if key in terms:
        terms[key] = terms[key] + value
    else:
        terms[key] = value


def _format_term(coefficient, label):
    """Format coefficient times a basis label (monomial or field)."""
    text = str(coefficient.as_expr())
    if not label:
        return text
    if text == '1':
        return label
    if text == '-1':
        return '-' + label
    if len(coefficient) > 1:
        text = "(" + text + ")"
    return text + '*' + label


def _join_terms(parts):
    """Join formatted terms into a signed sum."""
    if not parts:
        return "0"
    text = ' + '.join(parts)
    return text.replace(' + -', ' - ')


class DifferentialForm(object):
    """Sparse k-form: map of strictly increasing multi-indices to polynomials.

    :param chart: :class:`~multiphase.core.chart.Chart` of the form
    :param degree: form degree k
    :param terms: mapping of multi-index (tuple of coordinate positions in
        increasing order) to chart polynomial; zero entries are dropped

    """

    def __init__(self, chart, degree, terms=None):
        self.chart = chart
        self.degree = degree
        self._terms = {}
        for index, coefficient in (terms or {}).items():
            index = tuple(index)
            if len(index) != degree:
                msg = "multi-index {} does not have length {}".format(index,
                                                                     degree)
                raise DocumentError(msg)
            if any(b <= a for a, b in zip(index, index[1:])):
                msg = "multi-index {} is not strictly increasing".format(
                    self.names(index))
                raise DocumentError(msg)
            coefficient = chart.poly(coefficient)
            if coefficient:
                self._terms[index] = coefficient

    @classmethod
    def from_monomials(cls, chart, degree, monomials):
        """Create a form from (indices, coefficient) pairs in any order.

        Indices are sorted with the sign of the permutation; repeated
        coordinates drop the pair.

        """
        terms = {}
        for indices, coefficient in monomials:
            indices = tuple(_position(chart, k) for k in indices)
            sign, index = canonical(indices)
            if sign:
                _accumulate(terms, index, chart.poly(coefficient) * sign)
        return cls(chart, degree, terms)

    def __repr__(self):
        return "DifferentialForm({!r}, {}, {})".format(self.chart, self.degree,
                                                      len(self))

    def __str__(self):
        return _join_terms([
            _format_term(coefficient,
                         '^'.join('d' + name for name in self.names(index)))
            for index, coefficient in self.items()])

    def __eq__(self, other):
        return (isinstance(other, DifferentialForm) and
                self.chart == other.chart and
                self.degree == other.degree and
                self._terms == other._terms)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self._terms.items())))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __add__(self, other):
        _check_charts(self, other)
        if self.degree != other.degree:
            msg = "cannot add forms of degrees {} and {}".format(self.degree,
                                                                 other.degree)
            raise ChartError(msg)
        terms = dict(self._terms)
        for index, coefficient in other._terms.items():
            _accumulate(terms, index, coefficient)
        return DifferentialForm(self.chart, self.degree, terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    @property
    def is_zero(self):
        """Determine if all coefficients vanish."""
        return not self._terms

    def items(self):
        """Get (multi-index, coefficient) pairs in multi-index order."""
        return sorted(self._terms.items())

    def names(self, index):
        """Convert a multi-index to coordinate names."""
        return tuple(self.chart.names[k] for k in index)

    def coefficient(self, index):
        """Get the coefficient of a multi-index (names or positions)."""
        indices = tuple(_position(self.chart, k) for k in index)
        sign, index = canonical(indices)
        if not sign:
            return self.chart.zero
        return self._terms.get(index, self.chart.zero) * sign

    def scale(self, factor):
        """Multiply every coefficient by a polynomial or number."""
        factor = self.chart.poly(factor)
        return DifferentialForm(self.chart, self.degree,
                                {index: coefficient * factor
                                 for index, coefficient in self._terms.items()})

    def contract(self, position):
        """Contract with the coordinate field ∂/∂ξ in the leftmost slot.

        The coordinate at slot j (from 0) contributes the sign (-1)^j.

        """
        if self.degree == 0:
            return DifferentialForm(self.chart, 0)
        terms = {}
        for index, coefficient in self._terms.items():
            if position in index:
                slot = index.index(position)
                rest = index[:slot] + index[slot + 1:]
                _accumulate(terms, rest, -coefficient if slot % 2
                            else coefficient)
        return DifferentialForm(self.chart, self.degree - 1, terms)

    def leading(self):
        """Get the first nonzero (multi-index, coefficient) pair, if any."""
        items = self.items()
        return items[0] if items else None


class VectorField(object):
    """Sparse vector field: map of coordinates to component polynomials.

    :param chart: :class:`~multiphase.core.chart.Chart` of the field
    :param components: mapping of coordinate name or position to polynomial;
        missing coordinates have zero components

    """

    def __init__(self, chart, components=None):
        self.chart = chart
        self._components = {}
        for key, value in (components or {}).items():
            position = _position(chart, key)
            value = chart.poly(value)
            if value:
                if position in self._components:
                    value = value + self._components[position]
                self._components[position] = value

    @classmethod
    def coordinate(cls, chart, name, factor=1):
        """Create the coordinate field factor ∂/∂ξ."""
        return cls(chart, {name: factor})

    def __repr__(self):
        return "VectorField({!r}, {})".format(self.chart, self.data)

    def __str__(self):
        return _join_terms([
            _format_term(value, "d/d" + self.chart.names[position])
            for position, value in self.items()])

    def __eq__(self, other):
        return (isinstance(other, VectorField) and
                self.chart == other.chart and
                self._components == other._components)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.chart, frozenset(self._components.items())))

    def __bool__(self):
        return bool(self._components)

    def __add__(self, other):
        _check_charts(self, other)
        components = dict(self._components)
        for position, value in other._components.items():
            _accumulate(components, position, value)
        return VectorField(self.chart, components)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    @property
    def is_zero(self):
        """Determine if all components vanish."""
        return not self._components

    @property
    def is_vertical(self):
        """Determine if all base components vanish."""
        return not any(k in self._components for k in self.chart.base)

    @property
    def data(self):
        """Get the nonzero components keyed by coordinate name."""
        return {self.chart.names[k]: str(v.as_expr())
                for k, v in sorted(self._components.items())}

    def items(self):
        """Get (position, component) pairs in chart order."""
        return sorted(self._components.items())

    def component(self, key):
        """Get the component along a coordinate (name or position)."""
        return self._components.get(_position(self.chart, key),
                                    self.chart.zero)

    def scale(self, factor):
        """Multiply every component by a polynomial or number."""
        factor = self.chart.poly(factor)
        return VectorField(self.chart, {k: v * factor
                                        for k, v in self._components.items()})

    def apply(self, poly):
        """Differentiate a polynomial along the field, X(f)."""
        gens = self.chart.gens
        result = self.chart.zero
        for position, value in self._components.items():
            result += value * poly.diff(gens[position])
        return result


class VectorValuedForm(object):
    """Finite family of forms indexed by coefficient-basis labels.

    :param chart: :class:`~multiphase.core.chart.Chart` of the components
    :param degree: common degree of the component forms
    :param components: mapping of label to :class:`DifferentialForm`;
        missing labels are zero
    :param labels: ordered basis labels (default: the chart's labels)

    """

    def __init__(self, chart, degree, components=None, labels=None):
        self.chart = chart
        self.degree = degree
        self.labels = tuple(labels or chart.labels)
        if not self.labels:
            raise ChartError("vector-valued forms need basis labels")
        self._components = {}
        for label, form in (components or {}).items():
            if label not in self.labels:
                msg = "unknown basis label '{}'".format(label)
                raise DocumentError(msg)
            _check_charts(self, form)
            if form.degree != degree:
                msg = "component '{}' has degree {}, expected {}".format(
                    label, form.degree, degree)
                raise DocumentError(msg)
            if form:
                self._components[label] = form

    def __repr__(self):
        return "VectorValuedForm({!r}, {}, {})".format(self.chart, self.degree,
                                                      self.labels)

    def __str__(self):
        parts = ["({}) (x) {}".format(self.component(label), label)
                 for label in self.labels if label in self._components]
        return ' + '.join(parts) or "0"

    def __eq__(self, other):
        return (isinstance(other, VectorValuedForm) and
                self.chart == other.chart and
                self.degree == other.degree and
                self.labels == other.labels and
                self._components == other._components)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.chart, self.degree, self.labels,
                     frozenset(self._components.items())))

    def __bool__(self):
        return bool(self._components)

    def __add__(self, other):
        _check_charts(self, other)
        return VectorValuedForm(
            self.chart, self.degree,
            {label: self.component(label) + other.component(label)
             for label in self.labels}, labels=self.labels)

    def __neg__(self):
        return self.map(lambda form: -form)

    def __sub__(self, other):
        return self + (-other)

    @property
    def is_zero(self):
        """Determine if all components vanish."""
        return not self._components

    def component(self, label):
        """Get the form along a basis label."""
        if label not in self.labels:
            raise DocumentError("unknown basis label '{}'".format(label))
        return self._components.get(label,
                                    DifferentialForm(self.chart, self.degree))

    def items(self):
        """Get (label, form) pairs in label order, zero forms included."""
        return [(label, self.component(label)) for label in self.labels]

    def map(self, func):
        """Apply a form operation to every component."""
        components = {label: func(form) for label, form in self.items()}
        degree = components[self.labels[0]].degree
        return VectorValuedForm(self.chart, degree, components,
                                labels=self.labels)


# basis constructors #########################################################


def function(chart, poly):
    """Create the 0-form of a polynomial."""
    return DifferentialForm(chart, 0, {(): chart.poly(poly)})


def differential(chart, name):
    """Create the coordinate 1-form dξ."""
    return DifferentialForm(chart, 1, {(_position(chart, name),): 1})


def monomial(chart, names, coefficient=1):
    """Create coefficient·dξ^{k1}∧…∧dξ^{kr} from names in any order."""
    return DifferentialForm.from_monomials(chart, len(names),
                                           [(names, coefficient)])


def volume(chart):
    """Create the local volume form d^n x = dx^1∧…∧dx^n."""
    return DifferentialForm(chart, chart.n, {chart.base: 1})


def volume_contraction(chart, *mus):
    """Create d^n x_{μ1…μr} = i_{∂_{μr}} … i_{∂_{μ1}} d^n x.

    With one index this is d^n x_μ; with two, d^n x_{μν}. Contractions that
    exceed the base dimension give the zero form.

    """
    form = volume(chart)
    for mu in mus:
        form = form.contract(chart.x(mu))
    return form


def wedge(a, b):
    """Exterior product a∧b with the sign of sorting the joined indices.

    :raises: :class:`~multiphase.common.ChartError` for a chart mismatch

    """
    chart = _check_charts(a, b)
    terms = {}
    for index_a, coefficient_a in a._terms.items():  # pylint: disable=W0212
        for index_b, coefficient_b in b._terms.items():  # pylint: disable=W0212
            sign, index = canonical(index_a + index_b)
            if sign:
                _accumulate(terms, index, coefficient_a * coefficient_b * sign)
    return DifferentialForm(chart, a.degree + b.degree, terms)


def wedge_all(*forms):
    """Exterior product of several forms, left to right."""
    result = forms[0]
    for form in forms[1:]:
        result = wedge(result, form)
    return result
