"""Number fields Q[y]/(f) with a chosen complex embedding

Elements are stored by their rational coordinates in the power basis
1, y, ..., y^(n-1) of the defining polynomial f; y is sent to the
field's generator, an AlgebraicNumber with minimal polynomial f.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from math import ceil, gcd, log2

import sympy
from sympy import Poly, QQ, Rational
from sympy.polys.matrices import DomainMatrix

from algnum.numbers import AlgebraicNumber
from algnum.polynomials import (
    IntPolynomial, X, format_polynomial, to_fraction,
)
from algnum.roots import ComplexBox, evaluate
from core import conf
from core.exceptions import DomainError, GrowthLabError, UnsupportedError


logger = logging.getLogger(__name__)

Y = sympy.Symbol('y')

SHIFTS = (1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7, 11, -11)


def _to_poly(coords):
    return Poly([Rational(c.numerator, c.denominator)
                 for c in reversed(coords)], X, domain=QQ)


def _coords(poly, degree):
    values = [to_fraction(c) for c in reversed(poly.all_coeffs())]
    values += [Fraction(0)] * (degree - len(values))
    return tuple(values[:degree])


class NumberField:
    """Q(theta) for an algebraic number theta"""

    def __init__(self, generator):
        self.generator = generator
        self.defining = generator.minpoly
        self._modulus = generator.minpoly.as_poly(domain=QQ)

    @classmethod
    def rationals(cls):
        return cls(AlgebraicNumber.from_rational(0))

    @property
    def degree(self):
        return self.defining.degree

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.degree:
            return self.reduce(_to_poly(coords))
        return FieldElement(self, coords)

    def reduce(self, poly):
        return FieldElement(self, _coords(poly.rem(self._modulus),
                                          self.degree))

    def rational(self, value):
        value = Fraction(value)
        return FieldElement(
            self, (value,) + (Fraction(0),) * (self.degree - 1)
        )

    def zero(self):
        return self.rational(0)

    def one(self):
        return self.rational(1)

    def gen(self):
        if self.degree == 1:
            return self.rational(self.generator.rational_value())
        return FieldElement(self, tuple(
            Fraction(int(k == 1)) for k in range(self.degree)
        ))

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.generator == other.generator

    def __hash__(self):
        return hash(self.defining)

    def __str__(self):
        return 'Q[y]/(%s)' % self.defining.__str__().replace('x', 'y')


class FieldElement:
    """Exact element of a NumberField"""
    __slots__ = ('field', 'coords')

    def __init__(self, field, coords):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coords', tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError('FieldElement is immutable')

    def __reduce__(self):
        return FieldElement, (self.field, self.coords)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise DomainError('elements of different fields')
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def as_poly(self):
        return _to_poly(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise DomainError('%s is not rational' % self)
        return self.coords[0]

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.coords))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, tuple(
            a + b for a, b in zip(self.coords, other.coords)
        ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_rational():
            scale = other.coords[0]
            return FieldElement(self.field,
                                tuple(c * scale for c in self.coords))
        if self.is_rational():
            return other * self
        return self.field.reduce(self.as_poly() * other.as_poly())

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DomainError('zero has no inverse')
        if self.is_rational():
            return self.field.rational(1 / self.coords[0])
        return self.field.reduce(
            self.as_poly().invert(self.field._modulus)
        )

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** -n
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def multiplication_matrix(self):
        """Matrix of z -> self * z on the power basis, over QQ"""
        n = self.field.degree
        columns, power = [], self
        for k in range(n):
            columns.append(power.coords)
            if k < n - 1:
                power = power * self.field.gen()
        rows = [[QQ(columns[k][i].numerator, columns[k][i].denominator)
                 for k in range(n)] for i in range(n)]
        return DomainMatrix(rows, (n, n), QQ)

    def charpoly(self):
        """Monic characteristic polynomial over Q, descending Fractions"""
        if self.field.degree == 1:
            return (Fraction(1), -self.coords[0])
        return tuple(to_fraction(c)
                     for c in self.multiplication_matrix().charpoly())

    def trace(self):
        return -self.charpoly()[1]

    def norm(self):
        coeffs = self.charpoly()
        return coeffs[-1] * (-1) ** (len(coeffs) - 1)

    def minpoly(self):
        """Primitive integer minimal polynomial"""
        charpoly = Poly([Rational(c.numerator, c.denominator)
                         for c in self.charpoly()], X, domain=QQ)
        return IntPolynomial.from_poly(charpoly.sqf_part())

    def is_algebraic_integer(self):
        return all(c.denominator == 1 for c in self.charpoly())

    def is_unit(self):
        return self.is_algebraic_integer() and abs(self.norm()) == 1

    def height(self):
        """Largest numerator or common denominator of the coordinates"""
        denominator = 1
        for c in self.coords:
            denominator = denominator * c.denominator // gcd(
                denominator, c.denominator)
        return max([denominator] + [abs(c * denominator)
                                    for c in self.coords])

    def embed(self, prec):
        """Certified enclosure of the image under the field's embedding"""
        if self.is_rational():
            return ComplexBox.exact(self.coords[0], prec)
        size = max(abs(c.numerator).bit_length() for c in self.coords)
        modulus = self.field.generator.box.modulus(64).upper() + 1
        extra = (size + 1 + self.field.degree.bit_length()
                 + self.field.degree * ceil(log2(modulus)))
        theta = self.field.generator.enclosure(prec + 8 + extra)
        return evaluate(self.coords, theta)

    def to_algebraic(self):
        return AlgebraicNumber.from_enclosure(self.minpoly(), self.embed)

    def __repr__(self):
        return 'FieldElement(%s)' % self

    def __str__(self):
        return format_polynomial(self.coords, var='y')


Compositum = namedtuple('Compositum', ['field', 'first', 'second', 'shift'])


def lift(element, image):
    """Map an element of Q(theta) to a field where theta = image"""
    result = image.field.zero()
    for c in reversed(element.coords):
        result = result * image + c
    return result


def _shifted_resultant(f, g, shift):
    """Res_y(g(y), f(x - shift y)), whose roots are theta_i + shift beta_j"""
    first = f.as_poly().as_expr().subs(X, X - shift * Y)
    second = g.as_poly().as_expr().subs(X, Y)
    return Poly(sympy.resultant(second, first, Y, X), X, domain=QQ)


def _strip(poly):
    while poly and poly[-1].is_zero():
        poly.pop()
    return poly


def _remainder(a, b):
    a = list(a)
    inverse = b[-1].inverse()
    while len(a) >= len(b):
        factor = a[-1] * inverse
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - factor * c
        a.pop()
        _strip(a)
    return a


def poly_gcd(a, b):
    """Monic gcd of two polynomials (ascending FieldElement lists)"""
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _remainder(a, b)
    inverse = a[-1].inverse()
    return [c * inverse for c in a]


def _substituted(f, base, step):
    """f(base + step y) as an ascending list over base's field"""
    field = base.field
    result = [field.zero()]
    for c in reversed(f.coeffs):
        product = [field.zero()] * (len(result) + 1)
        for i, term in enumerate(result):
            product[i] = product[i] + term * base
            product[i + 1] = product[i + 1] + term * step
        result = product
        result[0] = result[0] + c
    return _strip(result)


def compositum(field, beta, degree_cap=None):
    """Primitive element field of field(beta) with the images of both
    generators

    The generator is gamma = theta + c beta for the first shift c that
    makes the resultant square-free; beta is recovered exactly as the root
    of gcd(g(y), f(gamma - c y)) over Q(gamma).
    """
    cap = conf.pick(degree_cap, 'SPLITTING_DEGREE_CAP')
    if beta.is_rational():
        return Compositum(field, field.gen(),
                          field.rational(beta.rational_value()), 0)
    if field.degree == 1:
        target = NumberField(beta)
        return Compositum(
            target, target.rational(field.generator.rational_value()),
            target.gen(), 0,
        )
    f, g = field.defining, beta.minpoly
    for shift in SHIFTS:
        resultant = _shifted_resultant(f, g, shift)
        if resultant.sqf_part().degree() == resultant.degree():
            break
    else:
        raise UnsupportedError('no primitive element among the shifts %s'
                               % (SHIFTS,))
    logger.debug('primitive element theta %+d beta for %s and %s',
                 shift, f, g)

    def enclose(prec):
        return (field.generator.enclosure(prec + 4)
                + beta.enclosure(prec + 4) * shift)
    gamma = AlgebraicNumber.from_enclosure(
        IntPolynomial.from_poly(resultant), enclose
    )
    if gamma.degree > cap:
        raise UnsupportedError(
            'compositum of degree %d exceeds the cap %d' % (gamma.degree, cap)
        )
    target = NumberField(gamma)
    generator = target.gen()
    common = poly_gcd(
        [target.rational(c) for c in g.coeffs],
        _substituted(f, generator, target.rational(-shift)),
    )
    if len(common) != 2:
        raise GrowthLabError('gcd of degree %d while recovering %s'
                             % (len(common) - 1, beta))
    image = -common[0]
    return Compositum(target, generator - image * shift, image, shift)


def common_field(numbers, degree_cap=None):
    """One field holding every number, with each number's image"""
    field = NumberField.rationals()
    images = []
    for number in numbers:
        joined = compositum(field, number, degree_cap)
        images = [lift(image, joined.first) for image in images]
        images.append(joined.second)
        field = joined.field
    return field, images


def _qq(value):
    return QQ(value.numerator, value.denominator)


def pull_back(element, generator_image, field):
    """Write element in the power basis of field

    element lives in a field of the same degree as field, in which
    field's generator has the image generator_image.
    """
    n = field.degree
    if element.field.degree != n:
        raise DomainError('the fields differ in degree')
    columns, power = [], element.field.one()
    for _ in range(n):
        columns.append(power.coords)
        power = power * generator_image
    matrix = DomainMatrix([[_qq(columns[k][i]) for k in range(n)]
                           for i in range(n)], (n, n), QQ)
    rhs = DomainMatrix([[_qq(c)] for c in element.coords], (n, 1), QQ)
    solution = matrix.lu_solve(rhs)
    return field.element([to_fraction(row[0])
                          for row in solution.to_list()])


def evaluate_at(poly, element):
    """poly(element) for an IntPolynomial, exactly"""
    result = element.field.zero()
    for c in reversed(poly.coeffs):
        result = result * element + c
    return result
