"""Certified enclosures of all complex roots of an integer polynomial

Roots are first isolated exactly by sympy (continued fractions on the
real line, winding numbers in the plane). Each isolating region is then
shrunk by Newton's method in MPFR and re-certified: a real root by an
exact sign change, a complex root by the disc |z - z0| <= n |p(z0)/p'(z0)|,
which always holds a root and must lie inside the isolating rectangle.
"""
import logging
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpc, mpfr
from sympy import ZZ
from sympy.polys.rootisolation import dup_isolate_all_roots_sqf

from algnum.polynomials import IntPolynomial, to_fraction
from core import conf
from core.exceptions import PrecisionInsufficient
from numkernel.intervals import (
    IntervalReal, down, format_enclosure, interval_nth_root, interval_pi,
    rounding, up,
)


logger = logging.getLogger(__name__)

NEWTON_STEPS = 96


class ComplexBox:
    """A rectangle re x im of certified real intervals"""
    __slots__ = ('re', 'im')

    def __init__(self, re, im=None):
        if im is None:
            im = IntervalReal.exact(0, re.prec)
        object.__setattr__(self, 're', re)
        object.__setattr__(self, 'im', im)

    def __setattr__(self, name, value):
        raise AttributeError('ComplexBox is immutable')

    def __reduce__(self):
        return ComplexBox, (self.re, self.im)

    @classmethod
    def exact(cls, value, prec):
        """Box around an exact rational or a (re, im) pair of rationals"""
        if isinstance(value, tuple):
            real, imag = value
        else:
            real, imag = value, 0
        return cls(IntervalReal.exact(real, prec),
                   IntervalReal.exact(imag, prec))

    @classmethod
    def from_rectangle(cls, corner, opposite, prec):
        (ax, ay), (bx, by) = corner, opposite
        return cls(IntervalReal.from_bounds(ax, bx, prec),
                   IntervalReal.from_bounds(ay, by, prec))

    @property
    def prec(self):
        return max(self.re.prec, self.im.prec)

    def _coerce(self, other):
        if isinstance(other, ComplexBox):
            return other
        if isinstance(other, IntervalReal):
            return ComplexBox(other)
        if isinstance(other, (int, Fraction)):
            return ComplexBox.exact(other, self.prec)
        return None

    def is_real(self):
        """True when the imaginary part is exactly zero"""
        return self.im.lo == 0 and self.im.hi == 0

    def mid(self):
        return self.re.mid(), self.im.mid()

    def diameter(self):
        """Upper bound for the diameter of the rectangle"""
        return self.re.width() + self.im.width()

    def contains(self, other):
        other = self._coerce(other)
        return self.re.contains(other.re) and self.im.contains(other.im)

    def overlaps(self, other):
        other = self._coerce(other)
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def with_prec(self, prec):
        return ComplexBox(self.re.with_prec(prec), self.im.with_prec(prec))

    def conjugate(self):
        return ComplexBox(self.re, -self.im)

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_real():
            return ComplexBox(self.re * other.re, self.im * other.re)
        if self.is_real():
            return ComplexBox(self.re * other.re, self.re * other.im)
        return ComplexBox(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs_squared(self):
        return self.re ** 2 + self.im ** 2

    def modulus(self, prec=None):
        return interval_nth_root(self.abs_squared(), 2, prec or self.prec)

    def argument(self, prec=None):
        """Enclosure of arg(z) / pi

        The result lies in [-1, 1] unless the box crosses the negative
        real axis, where it lies around 1 instead.
        """
        prec = prec or self.prec
        if self.re.contains_zero() and self.im.contains_zero():
            raise PrecisionInsufficient('argument of a box around 0')
        if self.re.hi < 0 and self.im.contains_zero():
            return (-self).argument(prec) + 1
        corners = [(y, x) for x in (self.re.lo, self.re.hi)
                   for y in (self.im.lo, self.im.hi)]
        with down(prec):
            lo = min(gmpy2.atan2(y, x) for y, x in corners)
        with up(prec):
            hi = max(gmpy2.atan2(y, x) for y, x in corners)
        return IntervalReal(lo, hi, prec) / interval_pi(prec)

    def reciprocal(self):
        if self.is_real():
            return ComplexBox(self.re.reciprocal())
        norm = self.abs_squared()
        return ComplexBox(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** -n).reciprocal()
        if self.is_real():
            return ComplexBox(self.re ** n)
        result, base = ComplexBox.exact(1, self.prec), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        return 'ComplexBox(%s)' % self

    def __str__(self):
        if self.is_real():
            return format_enclosure(self.re)
        return '%s + (%s)i' % (format_enclosure(self.re),
                               format_enclosure(self.im))


def evaluate(coeffs, box):
    """Horner enclosure of sum coeffs[k] z^k over a box"""
    result = ComplexBox.exact(0, box.prec)
    for c in reversed(coeffs):
        result = result * box + c
    return result


def _sign(value):
    return (value > 0) - (value < 0)


def _finite(*values):
    try:
        for value in values:
            to_fraction(value)
    except (ValueError, OverflowError):
        return False
    return True


def _newton(poly, start, prec):
    """Newton iteration in MPFR (mpfr or mpc start); None on failure"""
    derivative = poly.derivative()
    with rounding(prec, gmpy2.RoundToNearest):
        z = start
        tolerance = mpfr(2) ** (4 - prec)
        for _ in range(NEWTON_STEPS):
            slope = derivative(z)
            if slope == 0:
                return None
            step = poly(z) / slope
            z = z - step
            size = abs(z)
            if abs(step) <= tolerance * (size if size > 1 else 1):
                return z
    return None


def _box_prec(prec, *values):
    size = max((abs(v) for v in values), default=Fraction(0))
    return prec + 16 + max(1, int(size).bit_length())


def _refine_real(poly, lower, upper, prec):
    """Shrink an isolating interval of a simple real root"""
    lower, upper = to_fraction(lower), to_fraction(upper)
    target = Fraction(1, 2 ** (prec + 2))
    work = _box_prec(prec, lower, upper)
    if lower == upper:
        return ComplexBox.exact(lower, work)
    for end in (lower, upper):
        if poly(end) == 0:
            return ComplexBox.exact(end, work)
    low_sign = _sign(poly(lower))

    with rounding(work + 32, gmpy2.RoundToNearest):
        start = mpfr(gmpy2.mpq((lower + upper).numerator,
                               2 * (lower + upper).denominator))
    approx = _newton(poly, start, work + 32)
    if approx is not None and _finite(approx):
        centre = to_fraction(approx)
        a = max(lower, centre - target / 2)
        b = min(upper, centre + target / 2)
        if a < b:
            sa, sb = _sign(poly(a)), _sign(poly(b))
            if sa == 0:
                return ComplexBox.exact(a, work)
            if sb == 0:
                return ComplexBox.exact(b, work)
            if sa != sb:
                return ComplexBox(IntervalReal.from_bounds(a, b, work))

    logger.debug('newton missed a real root of %s; bisecting', poly)
    while upper - lower > target:
        middle = (lower + upper) / 2
        value = _sign(poly(middle))
        if value == 0:
            return ComplexBox.exact(middle, work)
        if value == low_sign:
            lower = middle
        else:
            upper = middle
    return ComplexBox(IntervalReal.from_bounds(lower, upper, work))


def _disc_radius(poly, point, work):
    """Upper bound for n |p(z)/p'(z)| at an exact point"""
    value = evaluate(poly.coeffs, point)
    slope = evaluate(poly.derivative().coeffs, point)
    slope_low = slope.abs_squared().lower()
    if slope_low <= 0:
        return None
    ratio = value.abs_squared().upper() * poly.degree ** 2 / slope_low
    bound = interval_nth_root(IntervalReal.exact(ratio, work), 2, work)
    return bound.upper()


def _refine_complex(poly, rectangle, prec):
    """Certified small box for the unique root in an isolating rectangle"""
    (ax, ay), (bx, by) = [
        tuple(to_fraction(c) for c in corner) for corner in rectangle
    ]
    target = Fraction(1, 2 ** (prec + 3))
    work = _box_prec(prec, ax, ay, bx, by)
    with rounding(work + 32, gmpy2.RoundToNearest):
        start = mpc(mpfr(gmpy2.mpq((ax + bx).numerator,
                                   2 * (ax + bx).denominator)),
                    mpfr(gmpy2.mpq((ay + by).numerator,
                                   2 * (ay + by).denominator)))
    approx = _newton(poly, start, work + 32)
    if approx is None or not _finite(approx.real, approx.imag):
        return None
    x, y = to_fraction(approx.real), to_fraction(approx.imag)
    radius = _disc_radius(poly, ComplexBox.exact((x, y), work + 32),
                          work + 32)
    if radius is None or radius > target:
        return None
    if not (ax <= x - radius and x + radius <= bx
            and ay <= y - radius and y + radius <= by):
        return None
    return ComplexBox(IntervalReal.from_bounds(x - radius, x + radius, work),
                      IntervalReal.from_bounds(y - radius, y + radius, work))


def _attempt(sqf, prec, eps):
    dense = [ZZ(c) for c in reversed(sqf.coeffs)]
    real, complex_ = dup_isolate_all_roots_sqf(dense, ZZ, eps=eps)
    boxes = [_refine_real(sqf, s, t, prec) for s, t in real]
    # rectangles come as (conjugate, root) pairs, root in the upper half
    for rectangle in complex_[1::2]:
        if eps is not None and eps <= Fraction(1, 2 ** (prec + 1)):
            (ax, ay), (bx, by) = [
                tuple(to_fraction(c) for c in corner) for corner in rectangle
            ]
            box = ComplexBox.from_rectangle(
                (ax, ay), (bx, by), _box_prec(prec, ax, ay, bx, by)
            )
        else:
            box = _refine_complex(sqf, rectangle, prec)
        if box is None:
            return None
        boxes.extend((box.conjugate(), box))
    return boxes


def _order(box):
    return (not box.is_real(), box.re.mid(), box.im.mid())


@lru_cache(maxsize=1024)
def isolate_roots(poly, prec):
    """Disjoint boxes of diameter <= 2^-prec, one per distinct root

    Real roots come first in increasing order, then the complex roots by
    real part with each conjugate pair listed lower half first.
    """
    if prec > conf.get('PREC_CAP'):
        raise PrecisionInsufficient(
            'root isolation at %d bits exceeds the precision cap' % prec
        )
    sqf = IntPolynomial.from_poly(poly.as_poly().sqf_part())
    if sqf.degree == 0:
        return ()
    for eps in (None, Fraction(1, 2 ** 16), Fraction(1, 2 ** (prec + 2))):
        boxes = _attempt(sqf, prec, eps)
        if boxes is not None:
            return tuple(sorted(boxes, key=_order))
        logger.debug('refining isolating rectangles of %s below %s',
                     sqf, eps)
    raise PrecisionInsufficient('could not certify the roots of %s' % sqf)
