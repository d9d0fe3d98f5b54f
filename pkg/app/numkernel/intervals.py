"""Certified real interval arithmetic on dyadic endpoints

Endpoints are MPFR numbers (an integer mantissa times a power of two).
Every operation rounds the lower endpoint toward -inf and the upper
endpoint toward +inf, so the returned interval always contains the exact
image of its inputs. MPFR's elementary functions are correctly rounded,
which makes the directed rounding of ln, exp and n-th roots certified as
well.
"""
import logging
import math
from collections import namedtuple
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr, mpq

from core.exceptions import DomainError, PrecisionInsufficient


logger = logging.getLogger(__name__)

_EMAX = gmpy2.get_emax_max()
_EMIN = gmpy2.get_emin_min()
_HALF = Fraction(1, 2)

_rootn = getattr(gmpy2, 'rootn', gmpy2.root)


def rounding(prec, direction):
    """Return an MPFR context with the given precision and rounding"""
    return gmpy2.context(
        precision=max(2, int(prec)),
        round=direction,
        emax=_EMAX,
        emin=_EMIN,
        subnormalize=False,
    )


def down(prec):
    return rounding(prec, gmpy2.RoundDown)


def up(prec):
    return rounding(prec, gmpy2.RoundUp)


def to_fraction(value):
    """Exact rational value of an int, Fraction or finite mpfr"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    num, den = value.as_integer_ratio()
    return Fraction(int(num), int(den))


def _as_mpq(value):
    value = to_fraction(value)
    return mpq(value.numerator, value.denominator)


class IntervalReal:
    """A certified enclosure [lo, hi] of a real number

    Instances are immutable; arithmetic returns new intervals computed at
    the larger of the operands' precisions.
    """
    __slots__ = ('lo', 'hi', 'prec')

    def __init__(self, lo, hi, prec):
        if lo > hi:
            raise ValueError('empty interval [%s, %s]' % (lo, hi))
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)
        object.__setattr__(self, 'prec', int(prec))

    def __setattr__(self, name, value):
        raise AttributeError('IntervalReal is immutable')

    def __reduce__(self):
        return IntervalReal, (self.lo, self.hi, self.prec)

    @classmethod
    def exact(cls, value, prec):
        """Enclose an int, Fraction or mpfr value at prec bits"""
        value = _as_mpq(value)
        with down(prec):
            lo = mpfr(value)
        with up(prec):
            hi = mpfr(value)
        return cls(lo, hi, prec)

    @classmethod
    def from_bounds(cls, lower, upper, prec):
        """Enclose the rational interval [lower, upper] at prec bits"""
        with down(prec):
            lo = mpfr(_as_mpq(lower))
        with up(prec):
            hi = mpfr(_as_mpq(upper))
        return cls(lo, hi, prec)

    @classmethod
    def hull(cls, first, *others):
        """Smallest interval containing all the given intervals"""
        lo, hi, prec = first.lo, first.hi, first.prec
        for other in others:
            lo, hi = min(lo, other.lo), max(hi, other.hi)
            prec = max(prec, other.prec)
        return cls(lo, hi, prec)

    def _coerce(self, other):
        if isinstance(other, IntervalReal):
            return other
        if isinstance(other, (int, Fraction)):
            return IntervalReal.exact(other, self.prec)
        return None

    def lower(self):
        return to_fraction(self.lo)

    def upper(self):
        return to_fraction(self.hi)

    def mid(self):
        return (self.lower() + self.upper()) / 2

    def width(self):
        return self.upper() - self.lower()

    def radius(self):
        return self.width() / 2

    def magnitude(self):
        """Upper bound for |x| over the interval"""
        return max(abs(self.lower()), abs(self.upper()))

    def contains(self, value):
        if isinstance(value, IntervalReal):
            return self.lo <= value.lo and value.hi <= self.hi
        value = _as_mpq(value)
        return self.lo <= value <= self.hi

    def contains_zero(self):
        return self.lo <= 0 <= self.hi

    def overlaps(self, other):
        other = self._coerce(other)
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other):
        if not self.overlaps(other):
            raise ValueError('intervals are disjoint')
        return IntervalReal(
            max(self.lo, other.lo), min(self.hi, other.hi),
            max(self.prec, other.prec)
        )

    def certainly_lt(self, other):
        other = self._coerce(other)
        return self.hi < other.lo

    def certainly_gt(self, other):
        other = self._coerce(other)
        return self.lo > other.hi

    def is_exact(self):
        return self.lo == self.hi

    def with_prec(self, prec):
        """Round outward to prec bits (never narrows)"""
        with down(prec):
            lo = mpfr(self.lo)
        with up(prec):
            hi = mpfr(self.hi)
        return IntervalReal(lo, hi, prec)

    def __neg__(self):
        with down(self.prec):
            lo = -self.hi
        with up(self.prec):
            hi = -self.lo
        return IntervalReal(lo, hi, self.prec)

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        with up(self.prec):
            hi = max(-self.lo, self.hi)
        return IntervalReal(mpfr(0), hi, self.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = max(self.prec, other.prec)
        with down(prec):
            lo = self.lo + other.lo
        with up(prec):
            hi = self.hi + other.hi
        return IntervalReal(lo, hi, prec)

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
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prec = max(self.prec, other.prec)
        pairs = (
            (self.lo, other.lo), (self.lo, other.hi),
            (self.hi, other.lo), (self.hi, other.hi),
        )
        with down(prec):
            lo = min(a * b for a, b in pairs)
        with up(prec):
            hi = max(a * b for a, b in pairs)
        return IntervalReal(lo, hi, prec)

    __rmul__ = __mul__

    def reciprocal(self):
        if self.lo == 0 and self.hi == 0:
            raise DomainError('division by zero')
        if self.contains_zero():
            raise PrecisionInsufficient(
                'divisor interval contains zero'
            )
        with down(self.prec):
            lo = 1 / self.hi
        with up(self.prec):
            hi = 1 / self.lo
        return IntervalReal(lo, hi, self.prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_exact() and other.lo != 0:
            prec = max(self.prec, other.prec)
            with down(prec):
                quotients = (self.lo / other.lo, self.hi / other.lo)
                lo = min(quotients)
            with up(prec):
                quotients = (self.lo / other.lo, self.hi / other.lo)
                hi = max(quotients)
            return IntervalReal(lo, hi, prec)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** -n).reciprocal()
        if n == 0:
            return IntervalReal.exact(1, self.prec)
        if n % 2 == 1 or self.lo >= 0:
            a, b = self.lo, self.hi
        elif self.hi <= 0:
            negated = -self
            a, b = negated.lo, negated.hi
        else:
            with up(self.prec):
                hi = max(-self.lo, self.hi) ** n
            return IntervalReal(mpfr(0), hi, self.prec)
        with down(self.prec):
            lo = a ** n
        with up(self.prec):
            hi = b ** n
        return IntervalReal(lo, hi, self.prec)

    def floor(self):
        """Common floor of all points, else PrecisionInsufficient"""
        low = math.floor(self.lower())
        if low != math.floor(self.upper()):
            raise PrecisionInsufficient(
                'interval %s straddles an integer' % format_enclosure(self)
            )
        return low

    def __repr__(self):
        return 'IntervalReal(%s, prec=%d)' % (format_enclosure(self),
                                              self.prec)

    def __str__(self):
        return format_enclosure(self)


def interval_ln(x, prec):
    """Enclosure of ln over a positive interval"""
    if x.lo <= 0:
        raise DomainError(
            'ln is undefined on an interval reaching %s' % x.lo
        )
    with down(prec):
        lo = gmpy2.log(x.lo)
    with up(prec):
        hi = gmpy2.log(x.hi)
    return IntervalReal(lo, hi, prec)


def interval_exp(x, prec):
    """Enclosure of exp over an interval"""
    with down(prec):
        lo = gmpy2.exp(x.lo)
    with up(prec):
        hi = gmpy2.exp(x.hi)
    return IntervalReal(lo, hi, prec)


def interval_pi(prec):
    """Enclosure of pi"""
    with down(prec):
        lo = gmpy2.const_pi()
    with up(prec):
        hi = gmpy2.const_pi()
    return IntervalReal(lo, hi, prec)


def interval_nth_root(x, n, prec):
    """Enclosure of the real n-th root of a nonnegative interval"""
    if n < 1:
        raise DomainError('root index must be positive, got %d' % n)
    if x.lo < 0:
        raise DomainError(
            'real root of an interval reaching %s' % x.lo
        )
    if n == 1:
        return x.with_prec(prec)
    with down(prec):
        lo = _rootn(x.lo, n)
    with up(prec):
        hi = _rootn(x.hi, n)
    return IntervalReal(lo, hi, prec)


def power_of_two_above(value):
    """Least 2^e (as a Fraction) that is >= the positive rational value"""
    value = to_fraction(value)
    if value <= 0:
        raise DomainError('expected a positive bound, got %s' % value)
    exponent = value.numerator.bit_length() - value.denominator.bit_length()
    while Fraction(2) ** exponent < value:
        exponent += 1
    while Fraction(2) ** (exponent - 1) >= value:
        exponent -= 1
    return Fraction(2) ** exponent


NearestInteger = namedtuple('NearestInteger', ['dist', 'nearest', 'tie'])


def _norm(value):
    return abs(value - round(value))


def dist_nearest_int(x):
    """Enclose the distance to the nearest integer

    The nearest integer is taken for the interval midpoint; an exact tie
    at one half resolves to the even integer and is flagged.
    """
    lower, upper = x.lower(), x.upper()
    if upper - lower >= Fraction(1, 4):
        raise PrecisionInsufficient(
            'interval %s too wide to locate the nearest integer'
            % format_enclosure(x)
        )
    middle = (lower + upper) / 2
    nearest = round(middle)
    tie = middle - math.floor(middle) == _HALF
    ends = (_norm(lower), _norm(upper))
    low, high = min(ends), max(ends)
    if math.ceil(lower) <= upper:
        low = Fraction(0)
    if math.ceil(lower - _HALF) <= upper - _HALF:
        high = _HALF
    dist = IntervalReal.from_bounds(low, high, x.prec)
    return NearestInteger(dist, nearest, tie)


def _floor_log10(value):
    exponent = len(str(value.numerator)) - len(str(value.denominator))
    while Fraction(10) ** exponent > value:
        exponent -= 1
    while Fraction(10) ** (exponent + 1) <= value:
        exponent += 1
    return exponent


def _decimal(value, places):
    scaled = round(value * 10 ** places)
    printed = Fraction(scaled, 10 ** places)
    sign = '-' if scaled < 0 else ''
    digits = str(abs(scaled)).rjust(places + 1, '0')
    if places:
        text = '%s%s.%s' % (sign, digits[:-places], digits[-places:])
    else:
        text = sign + digits
    return text, printed


def format_enclosure(x):
    """Render as "<midpoint>±<radius>", e.g. 1.6180339887498949±3e-17"""
    lower, upper = x.lower(), x.upper()
    middle, rad = (lower + upper) / 2, (upper - lower) / 2
    if rad == 0 and middle.denominator == 1:
        return '%d±0' % middle.numerator
    if rad > 0:
        places = max(0, 1 - _floor_log10(rad))
    else:
        places = max(1, (x.prec * 3) // 10)
    text, printed = _decimal(middle, places)
    total = rad + abs(middle - printed)
    if total == 0:
        return text + '±0'
    exponent = _floor_log10(total)
    digit = math.ceil(total / Fraction(10) ** exponent)
    if digit == 10:
        digit, exponent = 1, exponent + 1
    return '%s±%de%d' % (text, digit, exponent)


def parse_enclosure(text, prec):
    """Inverse of format_enclosure

    A bare decimal is read with a radius of half a unit in its last
    place; "+-" is accepted in place of "±".
    """
    text = text.strip().replace('+-', '±')
    try:
        if '±' in text:
            middle, rad = text.split('±', 1)
            middle, rad = Fraction(middle.strip()), Fraction(rad.strip())
        else:
            middle = Fraction(text)
            mantissa = text.lower().split('e')[0]
            places = len(mantissa.split('.')[1]) if '.' in mantissa else 0
            exponent = int(text.lower().split('e')[1]) if 'e' in \
                text.lower() else 0
            rad = Fraction(1, 2) * Fraction(10) ** (exponent - places)
            if '.' not in mantissa and 'e' not in text.lower():
                rad = Fraction(0)
    except (ValueError, ZeroDivisionError, IndexError) as exc:
        raise DomainError('cannot read enclosure %r: %s' % (text, exc))
    if rad < 0:
        raise DomainError('negative radius in %r' % text)
    return IntervalReal.from_bounds(middle - rad, middle + rad, prec)
