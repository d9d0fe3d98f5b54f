"""Algebraic numbers: a minimal polynomial and an isolating box"""
import logging
from fractions import Fraction

from algnum.polynomials import IntPolynomial
from algnum.roots import ComplexBox, isolate_roots
from core import conf
from core.exceptions import DomainError, InputError, PrecisionInsufficient


logger = logging.getLogger(__name__)

REFERENCE_PREC = 64


def escalate(start):
    """Precisions start, 2 start, 4 start, ... up to the cap"""
    prec = max(start, REFERENCE_PREC)
    cap = conf.get('PREC_CAP')
    while prec <= cap:
        yield prec
        prec *= 2
    raise PrecisionInsufficient('no decision below %d bits' % cap)


class AlgebraicNumber:
    """One root of an irreducible primitive integer polynomial

    The box contains that root and no other root of the polynomial.
    """
    __slots__ = ('minpoly', 'box')

    def __init__(self, minpoly, box):
        minpoly = minpoly.primitive()
        object.__setattr__(self, 'minpoly', minpoly)
        object.__setattr__(self, 'box', box)

    def __setattr__(self, name, value):
        raise AttributeError('AlgebraicNumber is immutable')

    def __reduce__(self):
        return AlgebraicNumber, (self.minpoly, self.box)

    @classmethod
    def from_rational(cls, value):
        value = Fraction(value)
        poly = IntPolynomial((-value.numerator, value.denominator))
        return cls(poly, ComplexBox.exact(value, REFERENCE_PREC))

    @classmethod
    def from_minpoly(cls, poly, approx=None):
        """The root of poly closest to approx, a rational or (re, im)

        poly may be reducible; the root's irreducible factor becomes the
        minimal polynomial. Without approx poly must have a single root.
        """
        if approx is not None and not isinstance(approx, tuple):
            approx = (Fraction(approx), Fraction(0))
        found = []
        for factor in poly.irreducible_factors():
            for box in isolate_roots(factor, REFERENCE_PREC):
                found.append((factor, box))
        if not found:
            raise InputError('%s has no roots' % poly)
        if approx is None:
            if len(found) > 1:
                raise InputError(
                    'a root approximation is needed to choose among the '
                    'roots of %s' % poly
                )
            return cls(*found[0])
        re, im = approx

        def distance(item):
            x, y = item[1].mid()
            return (x - re) ** 2 + (y - im) ** 2
        found.sort(key=distance)
        if len(found) > 1 and distance(found[0]) == distance(found[1]):
            raise InputError('%s is equally close to two roots of %s'
                             % (approx, poly))
        return cls(*found[0])

    @classmethod
    def from_enclosure(cls, poly, enclose, start=REFERENCE_PREC):
        """The root of poly inside enclose(prec) for every prec

        enclose maps a precision to a ComplexBox around the number; the
        precision rises until a single root of poly matches it.
        """
        factors = poly.irreducible_factors()
        for prec in escalate(start):
            target = enclose(prec)
            found = [
                (factor, box) for factor in factors
                for box in isolate_roots(factor, prec)
                if box.overlaps(target)
            ]
            if len(found) == 1:
                return cls(*found[0])
            if not found:
                raise DomainError('%s has no root near %s' % (poly, target))
            logger.debug('%d roots of %s near %s at %d bits',
                         len(found), poly, target, prec)

    @property
    def degree(self):
        return self.minpoly.degree

    def enclosure(self, prec):
        """Box of diameter <= 2^-prec around the number"""
        if self.is_rational():
            return ComplexBox.exact(self.rational_value(), prec)
        for work in escalate(prec):
            found = [box for box in isolate_roots(self.minpoly, work)
                     if box.overlaps(self.box)]
            if len(found) == 1:
                return found[0]

    def real_enclosure(self, prec):
        if not self.is_real():
            raise DomainError('%s is not real' % self)
        return self.enclosure(prec).re

    def locate(self, boxes):
        """Index of the box, among disjoint root boxes of the minimal
        polynomial, that holds this number"""
        start = max(box.prec for box in boxes)
        for prec in escalate(start):
            target = self.enclosure(prec)
            found = [i for i, box in enumerate(boxes)
                     if box.overlaps(target)]
            if len(found) == 1:
                return found[0]

    def conjugates(self, prec):
        return isolate_roots(self.minpoly, prec)

    def is_real(self):
        return self.box.is_real()

    def is_rational(self):
        return self.degree == 1

    def rational_value(self):
        if not self.is_rational():
            raise DomainError('%s is irrational' % self)
        return Fraction(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])

    def is_zero(self):
        return self.minpoly.coeffs == (0, 1)

    def is_algebraic_integer(self):
        return self.minpoly.is_monic()

    def is_unit(self):
        return (self.is_algebraic_integer()
                and abs(self.minpoly.coeffs[0]) == 1)

    def modulus(self, prec):
        return self.enclosure(prec).modulus(prec + 8)

    def __eq__(self, other):
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        if self.minpoly != other.minpoly:
            return False
        if self.is_rational():
            return True
        boxes = isolate_roots(self.minpoly, REFERENCE_PREC)
        return self.locate(boxes) == other.locate(boxes)

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return 'AlgebraicNumber(%s)' % self

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        return 'root of %s near %s' % (self.minpoly,
                                       self.enclosure(REFERENCE_PREC))
