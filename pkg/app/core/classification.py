"""Transcendence-or-Pisot classification of a recursion's growth constant

The pipeline runs the stages growth, minpoly, torsion, pisot and
moreover; an error raised inside a stage carries that stage's name.
"""
import logging
from collections import namedtuple

from algnum.fields import common_field
from algnum.numbers import REFERENCE_PREC, AlgebraicNumber, escalate
from algnum.pisot import (
    NOT_PISOT, PISOT, classify_pisot, pseudo_pisot_tuple,
    quadratic_pisot_unit_flags,
)
from algnum.polynomials import IntPolynomial
from algnum.roots import ComplexBox
from algnum.torsion import torsion_order
from core import conf
from core.exceptions import staged
from dioph.analysis import as_number
from growth.constants import growth_constant
from lattice.relations import (
    RELATION_FOUND, guess_min_poly, search_precision,
)
from numkernel.intervals import IntervalReal, interval_nth_root
from recursion.orbits import rational_root


logger = logging.getLogger(__name__)

INTEGER = 'integer'
QUADRATIC_PISOT_UNIT = 'quadratic-pisot-unit'
OTHER_ALGEBRAIC = 'other-algebraic'
NO_CANDIDATE = 'no-candidate'

ClassificationReport = namedtuple('ClassificationReport', [
    'spec', 'alpha', 'minpoly_candidate', 'transcendence_evidence',
    'torsion', 'torsion_claim', 'alpha_h_minpoly', 'pisot_alpha_h',
    'rational_scale', 'rational_scale_case', 'moreover',
])

TorsionClaim = namedtuple('TorsionClaim', ['claimed_h', 'matches'])

MoreoverRow = namedtuple('MoreoverRow', [
    'm', 'minpoly', 'verdict', 'scaled_minpoly', 'scaled_pseudo_pisot',
])

MoreoverCheck = namedtuple('MoreoverCheck', ['applies', 'least_m', 'rows'])


def _outside_unit_circle(number):
    for prec in escalate(REFERENCE_PREC):
        modulus = number.modulus(prec)
        if modulus.certainly_gt(1):
            return True
        if modulus.certainly_lt(1):
            return False


def pisot_verdict(number):
    """classify_pisot of the minimal polynomial, downgraded when number
    is not the root outside the unit circle"""
    verdict = classify_pisot(number.minpoly)
    if verdict.verdict == PISOT and not _outside_unit_circle(number):
        return verdict._replace(
            verdict=NOT_PISOT,
            reason='the number is a conjugate inside the unit circle',
        )
    return verdict


def scale_number(spec):
    """a_d^{1/(d-1)} as an AlgebraicNumber"""
    exponent = spec.degree - 1
    exact = rational_root(spec.leading, exponent)
    if exact is not None:
        return AlgebraicNumber.from_rational(exact)
    leading = spec.leading
    poly = IntPolynomial(
        (-leading.numerator,) + (0,) * (exponent - 1)
        + (leading.denominator,)
    )
    approx = interval_nth_root(IntervalReal.exact(leading, REFERENCE_PREC),
                               exponent, REFERENCE_PREC).mid()
    return AlgebraicNumber.from_minpoly(poly, approx)


def _rational_scale_case(alpha):
    if alpha.is_rational() and alpha.is_algebraic_integer():
        return INTEGER
    if quadratic_pisot_unit_flags(alpha)['absolute']:
        return QUADRATIC_PISOT_UNIT
    return OTHER_ALGEBRAIC


def _torsion_claim(spec, h):
    """A monomial a_d x^d has closure torsion d - 1 by a common reading;
    report it next to the certified h"""
    if any(spec.coeffs[:-1]):
        return None
    claimed = spec.degree - 1
    return TorsionClaim(claimed, h == claimed)


def moreover_check(spec, alpha, m_cap):
    """a_d^{(d-2)/(d-1)} alpha^(d^m) for m = 0..m_cap

    Each row carries the Pisot verdict of that number and whether d
    times it is pseudo-Pisot; least_m is set only for integer a_d.
    """
    scale = scale_number(spec)
    _, (alpha_image, scale_image) = common_field([alpha, scale])
    d = spec.degree
    base = scale_image ** (d - 2)
    rows = []
    for m in range(m_cap + 1):
        element = base * alpha_image ** (d ** m)
        number = as_number(element)
        scaled = as_number(element * d)
        rows.append(MoreoverRow(
            m=m,
            minpoly=number.minpoly,
            verdict=pisot_verdict(number),
            scaled_minpoly=scaled.minpoly,
            scaled_pseudo_pisot=pseudo_pisot_tuple([scaled]).pseudo_pisot,
        ))
    applies = spec.leading.denominator == 1
    least = next((row.m for row in rows if row.verdict.verdict == PISOT),
                 None)
    return MoreoverCheck(applies, least if applies else None, rows)


def classify_recursion(spec, prec=None, max_deg=None, max_height=None,
                       m_cap=None):
    """Run the classification pipeline on a divergent recursion"""
    prec = conf.pick(prec, 'DEFAULT_PREC')
    max_deg = conf.pick(max_deg, 'MAX_DEG')
    max_height = conf.pick(max_height, 'MAX_HEIGHT')
    m_cap = conf.pick(m_cap, 'M_CAP')
    work = max(prec, search_precision(max_deg, max_height))
    logger.info('classifying %s at %d bits', spec, work)

    with staged('growth'):
        growth = growth_constant(spec, work)

    with staged('minpoly'):
        relation = guess_min_poly(
            growth.alpha, max_deg, max_height,
            refine=lambda bits: growth_constant(spec, bits).alpha,
        )
    rational_scale = rational_root(spec.leading, spec.degree - 1) is not None
    if relation.verdict != RELATION_FOUND:
        logger.info('no minimal polynomial within degree %d, height %d',
                    max_deg, max_height)
        return ClassificationReport(
            spec=spec, alpha=growth, minpoly_candidate=None,
            transcendence_evidence=relation, torsion=None,
            torsion_claim=None, alpha_h_minpoly=None, pisot_alpha_h=None,
            rational_scale=rational_scale,
            rational_scale_case=(NO_CANDIDATE if rational_scale else None),
            moreover=None,
        )

    alpha = AlgebraicNumber.from_enclosure(
        relation.polynomial, lambda _: ComplexBox(growth.alpha)
    )
    with staged('torsion'):
        generators = [alpha.minpoly]
        scale = scale_number(spec)
        if not scale.is_rational() and scale.minpoly != alpha.minpoly:
            generators.append(scale.minpoly)
        torsion = torsion_order(generators)

    with staged('pisot'):
        power = as_number(common_field([alpha])[1][0] ** torsion.h)
        verdict = pisot_verdict(power)

    with staged('moreover'):
        moreover = moreover_check(spec, alpha, m_cap)

    return ClassificationReport(
        spec=spec,
        alpha=growth,
        minpoly_candidate=relation,
        transcendence_evidence=None,
        torsion=torsion,
        torsion_claim=_torsion_claim(spec, torsion.h),
        alpha_h_minpoly=power.minpoly,
        pisot_alpha_h=verdict,
        rational_scale=rational_scale,
        rational_scale_case=(_rational_scale_case(alpha)
                             if rational_scale else None),
        moreover=moreover,
    )
