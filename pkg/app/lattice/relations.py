"""Integer relations and minimal polynomials from certified enclosures

Values are embedded in a lattice with rows (e_i, round(2^(bits-8) x_i));
short reduced rows are relation candidates. A candidate is only reported
after an exact check: a minimal polynomial must be irreducible with a
certified root inside the input enclosure, and a linear relation must
vanish on the enclosures at twice the search precision.
"""
import logging
from collections import namedtuple
from fractions import Fraction

from algnum.polynomials import IntPolynomial
from algnum.roots import ComplexBox, isolate_roots
from core import conf
from core.exceptions import InputError, PrecisionInsufficient, UnsupportedError
from lattice.reduction import IntLattice, lll_reduce
from numkernel.intervals import IntervalReal


logger = logging.getLogger(__name__)

RELATION_FOUND = 'relation-found'
NONE_WITHIN_BOUNDS = 'none-within-bounds'

MAX_QUANTITIES = 12

RelationReport = namedtuple('RelationReport', [
    'verdict', 'found', 'polynomial', 'height_bound_searched',
    'degree_bound', 'precision_used',
])


def search_precision(max_deg, max_height):
    """Input bits that let the lattice separate relations of this size"""
    return (max_deg + 1) * (max_height.bit_length() + max_deg) + 64


def required_bits(terms, max_height, factor=None):
    factor = conf.pick(factor, 'RELATION_GUARD_FACTOR')
    return factor * terms * max_height.bit_length()


def _parts(value):
    if isinstance(value, ComplexBox):
        return [value.re, value.im]
    return [value]


def effective_bits(value):
    """Relative precision of an enclosure, in bits

    An enclosure within a few units in the last place counts at its full
    precision; a wider one counts at its measured relative width.
    """
    bits = []
    for part in _parts(value):
        width = part.width()
        size = max(Fraction(1), part.magnitude())
        if width <= size / 2 ** (part.prec - 4):
            bits.append(part.prec)
            continue
        ratio = width / size
        bits.append(max(0, ratio.denominator.bit_length()
                        - ratio.numerator.bit_length() - 1))
    return min(bits)


def _guard(values, terms, max_height):
    bits = min(effective_bits(v) for v in values)
    needed = required_bits(terms, max_height)
    if bits < needed:
        raise PrecisionInsufficient(
            'relation search needs %d bits of input, got %d'
            % (needed, bits)
        )
    return bits


def relation_candidates(values, bits):
    """Coefficient parts of an LLL-reduced relation lattice"""
    if bits < 16:
        raise PrecisionInsufficient('too few bits for a relation search')
    n = len(values)
    scale = 2 ** (bits - 8)
    columns = ([0, 1] if any(isinstance(v, ComplexBox) for v in values)
               else [0])
    rows = []
    for i, value in enumerate(values):
        box = value if isinstance(value, ComplexBox) else ComplexBox(value)
        parts = (box.re, box.im)
        rows.append([int(k == i) for k in range(n)]
                    + [round(scale * parts[c].mid()) for c in columns])
    reduced = lll_reduce(IntLattice(rows))
    return [row[:n] for row in reduced.basis]


def _normalized(vector):
    for c in vector:
        if c:
            return tuple(vector) if c > 0 else tuple(-v for v in vector)
    return tuple(vector)


def _combination(coeffs, values):
    total = None
    for c, value in zip(coeffs, values):
        if not c:
            continue
        term = value * c
        total = term if total is None else total + term
    return total


def _vanishes(coeffs, values, threshold):
    total = _combination(coeffs, values)
    if total is None:
        return False
    return all(part.contains(0) and part.width() < threshold
               for part in _parts(total))


def find_int_relation(xs, max_height=None, refine=None):
    """Integer vector c with sum c_i x_i = 0 on the enclosures

    refine, when given, maps a precision to fresh enclosures of the same
    quantities and is used for the check at twice the search precision.
    """
    max_height = conf.pick(max_height, 'MAX_HEIGHT')
    xs = list(xs)
    if len(xs) < 2:
        raise InputError('a relation needs at least two quantities')
    if len(xs) > MAX_QUANTITIES:
        raise UnsupportedError('relations among more than %d quantities'
                               % MAX_QUANTITIES)
    bits = _guard(xs, len(xs) - 1, max_height)
    threshold = Fraction(1, 2 ** (bits // 2))
    checked = refine(2 * bits) if refine is not None else xs
    for candidate in relation_candidates(xs, bits):
        candidate = _normalized(candidate)
        if not any(candidate) or max(map(abs, candidate)) > max_height:
            continue
        if _vanishes(candidate, xs, threshold) and \
                _vanishes(candidate, checked, threshold):
            logger.info('integer relation %s at %d bits', candidate, bits)
            return RelationReport(RELATION_FOUND, list(candidate), None,
                                  max_height, None, bits)
    return RelationReport(NONE_WITHIN_BOUNDS, None, None, max_height,
                          None, bits)


def _root_matches(poly, value, prec):
    target = ComplexBox(value)
    return any(box.overlaps(target) for box in isolate_roots(poly, prec))


def guess_min_poly(x, max_deg=None, max_height=None, refine=None):
    """Search for an irreducible integer polynomial vanishing at x

    x is a real IntervalReal. A candidate counts only if it is
    irreducible, within both bounds, and has a certified root inside x
    (and inside refine(2 bits) when refine is given).
    """
    max_deg = conf.pick(max_deg, 'MAX_DEG')
    max_height = conf.pick(max_height, 'MAX_HEIGHT')
    if not 1 <= max_deg < MAX_QUANTITIES:
        raise UnsupportedError('degree bound %d outside 1..%d'
                               % (max_deg, MAX_QUANTITIES - 1))
    bits = _guard([x], max_deg, max_height)
    work = bits + 16
    powers = [IntervalReal.exact(1, work)]
    for _ in range(max_deg):
        powers.append(powers[-1] * x)
    checked = refine(2 * bits) if refine is not None else x

    for candidate in relation_candidates(powers, bits):
        if not any(candidate) or max(map(abs, candidate)) > max_height:
            continue
        if not any(candidate[1:]):
            continue
        for factor in IntPolynomial(tuple(candidate)).irreducible_factors():
            if max(map(abs, factor.coeffs)) > max_height:
                continue
            if _root_matches(factor, x, bits) and \
                    _root_matches(factor, checked, 2 * bits):
                logger.info('minimal polynomial %s at %d bits', factor, bits)
                return RelationReport(
                    RELATION_FOUND, list(factor.coeffs), factor,
                    max_height, max_deg, bits,
                )
    logger.info('no polynomial of degree <= %d and height <= %d',
                max_deg, max_height)
    return RelationReport(NONE_WITHIN_BOUNDS, None, None, max_height,
                          max_deg, bits)
