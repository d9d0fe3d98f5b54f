"""Integer and rational univariate polynomials on top of sympy"""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

import sympy
from sympy import Poly, QQ, ZZ
from sympy.parsing.sympy_parser import (
    convert_xor, implicit_multiplication, parse_expr,
    standard_transformations,
)
from tokenize import TokenError

from core.exceptions import InputError


X = sympy.Symbol('x')

_GRAMMAR = re.compile(r'^[0-9x+\-*/^()\s]+$')
_TRANSFORMATIONS = standard_transformations + (
    implicit_multiplication, convert_xor,
)


def to_fraction(value):
    """Convert a sympy, ground-domain or finite MPFR number to Fraction

    Infinities and NaN raise OverflowError or ValueError.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator'):
        return Fraction(int(value.numerator), int(value.denominator))
    num, den = value.as_integer_ratio()
    return Fraction(int(num), int(den))


def parse_rational_polynomial(text):
    """Parse a polynomial in x with rational coefficients

    Returns the coefficients in ascending order. Powers are written with
    "^" (or "**"); a coefficient may precede a power without "*".
    """
    text = text.strip()
    if not _GRAMMAR.match(text):
        raise InputError('not a polynomial in x: %r' % text)
    try:
        expr = parse_expr(text, local_dict={'x': X},
                          transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, TokenError, ZeroDivisionError) as exc:
        raise InputError('cannot parse polynomial %r: %s' % (text, exc))
    if expr.has(sympy.zoo, sympy.nan) or expr.free_symbols - {X}:
        raise InputError('not a polynomial in x: %r' % text)
    try:
        poly = Poly(expr, X, domain=QQ)
    except sympy.PolynomialError:
        raise InputError('not a polynomial in x: %r' % text)
    return tuple(to_fraction(c) for c in reversed(poly.all_coeffs()))


def format_polynomial(coeffs, var='x'):
    """Render ascending coefficients as e.g. "x^2 - 3*x + 1/2" """
    terms = []
    for k in reversed(range(len(coeffs))):
        c = coeffs[k]
        if c == 0:
            continue
        magnitude = abs(c)
        if k == 0:
            body = str(magnitude)
        else:
            power = var if k == 1 else '%s^%d' % (var, k)
            body = power if magnitude == 1 else '%s*%s' % (magnitude, power)
        terms.append(('-' if c < 0 else '+', body))
    if not terms:
        return '0'
    sign, body = terms[0]
    text = '-' + body if sign == '-' else body
    for sign, body in terms[1:]:
        text += ' %s %s' % (sign, body)
    return text


def _strip(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with integer coefficients, ascending order"""
    coeffs: tuple

    def __post_init__(self):
        coeffs = _strip(self.coeffs)
        if not coeffs or any(not isinstance(c, int) for c in coeffs):
            raise InputError('integer coefficients required')
        if coeffs == (0,):
            raise InputError('the zero polynomial is not allowed')
        object.__setattr__(self, 'coeffs', tuple(int(c) for c in coeffs))

    @classmethod
    def from_poly(cls, poly):
        """Primitive integer multiple of a sympy Poly over ZZ or QQ"""
        coeffs = [to_fraction(c) for c in reversed(poly.all_coeffs())]
        return cls.from_rationals(coeffs)

    @classmethod
    def from_rationals(cls, coeffs):
        """Primitive integer polynomial with the same roots"""
        coeffs = [Fraction(c) for c in coeffs]
        denominator = reduce(
            lambda a, b: a * b // gcd(a, b),
            (c.denominator for c in coeffs), 1
        )
        ints = [int(c * denominator) for c in coeffs]
        return cls(tuple(ints)).primitive()

    @classmethod
    def parse(cls, text):
        coeffs = parse_rational_polynomial(text)
        if any(c.denominator != 1 for c in coeffs):
            raise InputError(
                'integer coefficients required in %r' % text
            )
        return cls(tuple(int(c) for c in coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    def content(self):
        return reduce(gcd, self.coeffs)

    def primitive(self):
        """Divide by the content and make the leading coefficient positive"""
        divisor = self.content()
        if self.leading < 0:
            divisor = -divisor
        return IntPolynomial(tuple(c // divisor for c in self.coeffs))

    def is_monic(self):
        return self.leading == 1

    def as_poly(self, domain=ZZ):
        return Poly(list(reversed(self.coeffs)), X, domain=domain)

    def derivative(self):
        if self.degree == 0:
            return None
        return IntPolynomial(tuple(
            k * c for k, c in enumerate(self.coeffs)
        )[1:])

    def __call__(self, value):
        result = 0
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __str__(self):
        return format_polynomial(self.coeffs)

    def is_irreducible(self):
        return self.as_poly().is_irreducible

    def irreducible_factors(self):
        """Distinct primitive irreducible factors of positive degree"""
        _, factors = self.as_poly().factor_list()
        return [IntPolynomial.from_poly(f) for f, _ in factors
                if f.degree() > 0]

    def is_cyclotomic(self):
        return self.degree > 0 and self.as_poly().is_cyclotomic

    def is_reciprocal(self):
        """True when x^n p(1/x) = p(x)"""
        return self.coeffs == tuple(reversed(self.coeffs))

    def root_sum(self):
        """Sum of the roots with multiplicity"""
        if self.degree == 0:
            return Fraction(0)
        return Fraction(-self.coeffs[-2], self.leading)

    def unimodular_root_count(self):
        """Exact number of distinct roots on the unit circle

        A reciprocal factor of even degree 2m is x^m T(x + 1/x), and its
        roots of modulus one are the preimages of the real roots of T in
        [-2, 2].
        """
        count = 0
        for factor in self.irreducible_factors():
            if factor.degree == 1:
                count += abs(factor.coeffs[0]) == abs(factor.coeffs[1])
            elif factor.is_reciprocal() and factor.degree % 2 == 0:
                trace = factor.trace_polynomial().as_poly()
                count += 2 * trace.count_roots(-2, 2)
        return count

    def trace_polynomial(self):
        """T with x^m T(x + 1/x) = p(x) for a reciprocal p of degree 2m"""
        half = self.degree // 2
        t = Poly(X, X, domain=ZZ)
        previous, current = Poly(2, X, domain=ZZ), t
        total = Poly(self.coeffs[half], X, domain=ZZ)
        for j in range(1, half + 1):
            total += self.coeffs[half + j] * current
            previous, current = current, t * current - previous
        return IntPolynomial.from_poly(total)
