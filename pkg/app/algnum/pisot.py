"""Pisot tests, traces, roots of unity and heights of algebraic numbers"""
import logging
from collections import namedtuple
from fractions import Fraction
from math import lcm

from sympy import cyclotomic_poly, totient

from algnum.fields import FieldElement, common_field, lift
from algnum.numbers import REFERENCE_PREC, escalate
from algnum.polynomials import X
from algnum.roots import isolate_roots
from core.exceptions import InputError
from numkernel.intervals import IntervalReal, interval_ln


logger = logging.getLogger(__name__)

PISOT = 'pisot'
NOT_PISOT = 'not-pisot'

INSIDE, ON, OUTSIDE = -1, 0, 1

RootModulus = namedtuple('RootModulus', ['box', 'modulus', 'side'])

PisotVerdict = namedtuple(
    'PisotVerdict', ['verdict', 'reason', 'dominant', 'max_other']
)

PseudoPisotVerdict = namedtuple('PseudoPisotVerdict', [
    'pseudo_pisot', 'pisot', 'total', 'integral', 'conjugates',
    'max_modulus', 'reason',
])

ReducedClass = namedtuple('ReducedClass', ['residue', 'coefficients',
                                           'bases'])

DegenerateReduction = namedtuple('DegenerateReduction', [
    'modulus', 'field', 'classes',
])


def max_interval(intervals):
    return IntervalReal(max(i.lo for i in intervals),
                        max(i.hi for i in intervals),
                        max(i.prec for i in intervals))


def unit_circle_sides(poly, prec=None):
    """Place every root of poly inside, on or outside the unit circle

    The number of roots on the circle is known exactly, so precision
    rises until all other roots are separated from it.
    """
    on_circle = poly.unimodular_root_count()
    for work in escalate(prec or REFERENCE_PREC):
        boxes = isolate_roots(poly, work)
        squares = [box.abs_squared() for box in boxes]
        if sum(1 for s in squares if s.contains(1)) == on_circle:
            return [
                RootModulus(
                    box, box.modulus(work + 8),
                    ON if s.contains(1)
                    else OUTSIDE if s.certainly_gt(1) else INSIDE,
                )
                for box, s in zip(boxes, squares)
            ]
        logger.debug('moduli of %s undecided at %d bits', poly, work)


def classify_pisot(poly, prec=None):
    """Pisot verdict for an irreducible integer polynomial"""
    poly = poly.primitive()
    if poly.degree < 1 or not poly.is_irreducible():
        raise InputError('%s is not irreducible' % poly)
    if not poly.is_monic():
        return PisotVerdict(NOT_PISOT, 'not an algebraic integer',
                            None, None)
    rows = unit_circle_sides(poly, prec)
    outside = [row for row in rows if row.side == OUTSIDE]
    others = [row for row in rows if row not in outside[:1]]
    max_other = (max_interval([row.modulus for row in others])
                 if others else None)
    dominant = outside[0].box.re if outside else None

    if any(row.side == ON for row in rows):
        reason = 'a conjugate lies on the unit circle'
    elif not outside:
        reason = 'no root outside the unit circle'
    elif len(outside) > 1:
        reason = '%d roots outside the unit circle' % len(outside)
    elif not outside[0].box.is_real() or outside[0].box.re.certainly_lt(0):
        reason = 'the root outside the unit circle is not a positive real'
    else:
        return PisotVerdict(
            PISOT, 'real root > 1, other conjugates inside the unit circle',
            dominant, max_other,
        )
    return PisotVerdict(NOT_PISOT, reason, dominant, max_other)


def pseudo_pisot_tuple(elems, prec=None):
    """Pseudo-Pisot test for a tuple of distinct nonzero numbers

    B holds every conjugate of the entries that is not itself an entry;
    the tuple is pseudo-Pisot when the entries and B sum to an integer
    and every member of B lies inside the unit circle.
    """
    if any(e.is_zero() for e in elems):
        raise InputError('tuple entries must be nonzero')
    if len(set(elems)) != len(elems):
        raise InputError('tuple entries must be distinct')
    polys = list(dict.fromkeys(e.minpoly for e in elems))
    total = sum((poly.root_sum() for poly in polys), Fraction(0))
    conjugates = []
    for poly in polys:
        rows = unit_circle_sides(poly, prec)
        boxes = [row.box for row in rows]
        taken = {e.locate(boxes) for e in elems if e.minpoly == poly}
        conjugates.extend(row for i, row in enumerate(rows)
                          if i not in taken)

    integral = total.denominator == 1
    small = all(row.side == INSIDE for row in conjugates)
    if not integral:
        reason = 'the conjugate sum %s is not an integer' % total
    elif not small:
        reason = 'a conjugate outside the tuple has modulus >= 1'
    else:
        reason = 'integer conjugate sum, remaining conjugates inside'
    pseudo = integral and small
    return PseudoPisotVerdict(
        pseudo_pisot=pseudo,
        pisot=pseudo and all(e.is_algebraic_integer() for e in elems),
        total=total,
        integral=integral,
        conjugates=[row.box for row in conjugates],
        max_modulus=(max_interval([row.modulus for row in conjugates])
                     if conjugates else None),
        reason=reason,
    )


def power_sums(poly, count):
    """Power sums p_0 .. p_count of the roots by Newton's identities"""
    d, c = poly.degree, poly.coeffs
    e = [Fraction(1)] + [
        Fraction((-1) ** k * c[d - k], c[d]) for k in range(1, d + 1)
    ]
    sums = [Fraction(d)]
    for m in range(1, count + 1):
        total = sum(
            (-1) ** (i - 1) * e[i] * sums[m - i]
            for i in range(1, min(m - 1, d) + 1)
        )
        if m <= d:
            total += (-1) ** (m - 1) * m * e[m]
        sums.append(total)
    return sums


def power_trace(a, n):
    """Tr_{Q(a)/Q}(a^n), exact"""
    if n < 0:
        raise InputError('the exponent must be nonnegative')
    return power_sums(a.minpoly, n)[n]


def _cyclotomic_index(poly):
    """m with poly = Phi_m, or None"""
    if not poly.is_monic() or not poly.is_cyclotomic():
        return None
    target = poly.as_poly()
    d = poly.degree
    for m in range(1, 2 * d * d + 7):
        if totient(m) == d and cyclotomic_poly(m, X, polys=True) == target:
            return m
    return None


def is_root_of_unity(a):
    """Least m with a^m = 1, or None"""
    if a.is_zero():
        raise InputError('zero is not a root of unity')
    return _cyclotomic_index(a.minpoly)


def _element_order(element):
    """Order of a root of unity given as a field element, or None"""
    order = _cyclotomic_index(element.minpoly())
    if order is not None and element ** order != 1:
        return None
    return order


def degeneracy_order(images):
    """lcm of the orders of the ratios images[i] / images[j] that are
    roots of unity; 1 for a non-degenerate tuple"""
    h = 1
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            order = _element_order(images[i] / images[j])
            if order is not None:
                h = lcm(h, order)
    return h


def reduce_degenerate(alphas, qs, degree_cap=None):
    """Split sum q_i alpha_i^n into residue classes n = a + h m

    h is the lcm of the orders of the roots of unity alpha_i / alpha_j.
    For each class a the terms become q_i alpha_i^a (alpha_i^h)^m, and
    terms with equal bases alpha_i^h are merged; zero coefficients are
    dropped. A non-degenerate tuple comes back as the single class a = 0
    with its own coefficients and bases.
    """
    if len(alphas) != len(qs):
        raise InputError('alphas and coefficients differ in length')
    fields = list(dict.fromkeys(
        q.field for q in qs if isinstance(q, FieldElement)
    ))
    if len(fields) > 1:
        raise InputError('coefficients must share one field')
    numbers = [f.generator for f in fields] + list(alphas)
    field, images = common_field(numbers, degree_cap)
    if fields:
        base, images = images[0], images[1:]
    qs = [lift(q, base) if isinstance(q, FieldElement)
          else field.rational(q) for q in qs]

    h = degeneracy_order(images)
    logger.debug('degenerate tuple reduces modulo %d', h)

    classes = []
    for residue in range(h):
        merged = {}
        for q, alpha in zip(qs, images):
            power = alpha ** h
            coefficient = q * alpha ** residue
            merged[power] = merged.get(power, field.zero()) + coefficient
        bases = [b for b, c in merged.items() if not c.is_zero()]
        classes.append(ReducedClass(
            residue, [merged[b] for b in bases], bases
        ))
    return DegenerateReduction(h, field, classes)


def weil_height(a, prec=None):
    """(ln|lead| + sum ln max(1, |root|)) / degree"""
    if a.is_zero():
        raise InputError('the height of zero is undefined')
    prec = prec or REFERENCE_PREC
    work = prec + 16 + a.degree.bit_length()
    total = interval_ln(IntervalReal.exact(a.minpoly.leading, work), work)
    for box in isolate_roots(a.minpoly, work):
        modulus = box.modulus(work)
        clipped = IntervalReal(max(modulus.lo, 1), max(modulus.hi, 1), work)
        total = total + interval_ln(clipped, work)
    return (total / a.degree).with_prec(prec)


def _above_one(a):
    for prec in escalate(REFERENCE_PREC):
        value = a.real_enclosure(prec)
        if value.certainly_gt(1):
            return True
        if value.certainly_lt(1):
            return False


def quadratic_pisot_unit_flags(a):
    """Both readings of "quadratic Pisot unit with conjugate 1/alpha"

    strict: the conjugate is 1/alpha (constant term +1);
    absolute: the conjugate is +-1/alpha (constant term +-1).
    """
    poly = a.minpoly
    shape = (poly.degree == 2 and poly.is_monic() and a.is_real()
             and _above_one(a))
    return {
        'strict': bool(shape and poly.coeffs[0] == 1),
        'absolute': bool(shape and abs(poly.coeffs[0]) == 1),
    }


def quadratic_pisot_unit_check(a):
    return quadratic_pisot_unit_flags(a)['strict']
