"""What a hit says, and how other sums are brought into scanning shape

analyze_hit checks a hit against the integrality and pseudo-Pisot
conclusions. expand_poly_power_sum turns ||P(alpha_1^n, ..., alpha_k^n)||
into an exponential sum, and split_torsion_terms folds root-of-unity
bases into beta, one residue class at a time.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from math import lcm

from algnum.fields import FieldElement, common_field
from algnum.numbers import AlgebraicNumber
from algnum.pisot import (
    INSIDE, is_root_of_unity, max_interval, power_trace, pseudo_pisot_tuple,
    unit_circle_sides,
)
from algnum.roots import ComplexBox
from core.exceptions import InputError, MultiplicativeDependence
from dioph.specs import ExpSumSpec
from lattice.relations import RELATION_FOUND, find_int_relation
from numkernel.intervals import interval_ln


logger = logging.getLogger(__name__)

DEPENDENCE_HEIGHT = 1000
DEPENDENCE_PREC = 256

HitAnalysis = namedtuple('HitAnalysis', [
    'n', 'alpha_integral', 'coefficient_integral', 'coefficient_units',
    'conjugates', 'pseudo_pisot', 'trace_sum', 'trace_integral',
    'trace_prediction', 'trace_agrees', 'integral_case',
])

ConjugateReport = namedtuple('ConjugateReport', ['others_inside',
                                                 'max_other'])

SplitClass = namedtuple('SplitClass', ['residue', 'beta'])

TorsionSplit = namedtuple('TorsionSplit', ['modulus', 'alphas', 'qs',
                                           'classes'])


def as_number(element):
    """AlgebraicNumber for a field element"""
    if element.is_rational():
        return AlgebraicNumber.from_rational(element.rational_value())
    return element.to_algebraic()


def _tuple_entries(spec, n):
    terms = [q * image ** n for q, image in zip(spec.qs, spec.images)]
    merged = {}
    for term in terms + [spec.beta_image]:
        if not term.is_zero():
            merged[term] = merged.get(term, spec.field.zero()) + term
    return [as_number(e) for e in merged.values() if not e.is_zero()]


def _conjugate_report(spec, index):
    alpha = spec.alphas[index]
    rows = unit_circle_sides(alpha.minpoly)
    boxes = [row.box for row in rows]
    taken = {a.locate(boxes) for a in spec.alphas
             if a.minpoly == alpha.minpoly}
    others = [row for i, row in enumerate(rows) if i not in taken]
    return ConjugateReport(
        others_inside=all(row.side == INSIDE for row in others),
        max_other=(max_interval([row.modulus for row in others])
                   if others else None),
    )


def _trace_prediction(spec, n):
    """sum q_i Tr(alpha_i^n) + beta when every q_i and beta are rational
    and every alpha_i is an algebraic integer"""
    if not all(q.is_rational() for q in spec.qs):
        return None
    if not all(a.is_algebraic_integer() for a in spec.alphas):
        return None
    if not spec.beta_image.is_rational():
        return None
    total = spec.beta_image.rational_value()
    for q, alpha in zip(spec.qs, spec.alphas):
        total += q.rational_value() * power_trace(alpha, n)
    return total


def analyze_hit(spec, hit):
    """Integrality, conjugate and pseudo-Pisot report for a hit"""
    n = hit.n
    verdict = pseudo_pisot_tuple(_tuple_entries(spec, n))
    prediction = _trace_prediction(spec, n)
    coefficient_integral = [q.is_algebraic_integer() for q in spec.qs]
    logger.debug('hit at n=%d: conjugate sum %s', n, verdict.total)
    return HitAnalysis(
        n=n,
        alpha_integral=[a.is_algebraic_integer() for a in spec.alphas],
        coefficient_integral=coefficient_integral,
        coefficient_units=[q.is_unit() for q in spec.qs],
        conjugates=[_conjugate_report(spec, i) for i in range(spec.k)],
        pseudo_pisot=verdict,
        trace_sum=verdict.total,
        trace_integral=verdict.total.denominator == 1,
        trace_prediction=prediction,
        trace_agrees=(None if prediction is None
                      else round(prediction) == hit.nearest),
        integral_case=all(coefficient_integral),
    )


def _log_polar(alphas, prec):
    boxes = []
    for a in alphas:
        box = a.enclosure(prec + 8)
        boxes.append(ComplexBox(interval_ln(box.modulus(prec + 8), prec),
                                box.argument(prec)))
    # 2 pi i in the same units
    boxes.append(ComplexBox.exact((0, 2), prec))
    return boxes


def check_independence(alphas, degree_cap=None):
    """Raise MultiplicativeDependence when a product of powers of the
    alphas is a root of unity

    Relations are searched among ln|alpha_i| + i arg(alpha_i) / pi and
    a full turn; both parts must vanish. A found relation is confirmed
    exactly in the common field when the product is a root of unity and
    reported as dependence either way.
    """
    alphas = list(alphas)
    if len(alphas) == 1:
        order = is_root_of_unity(alphas[0])
        if order is not None:
            raise MultiplicativeDependence(
                '%s is a root of unity' % alphas[0], [order]
            )
        return
    report = find_int_relation(
        _log_polar(alphas, DEPENDENCE_PREC),
        max_height=DEPENDENCE_HEIGHT,
        refine=lambda prec: _log_polar(alphas, prec),
    )
    if report.verdict != RELATION_FOUND:
        return
    relation = report.found[:-1]
    field, images = common_field(alphas, degree_cap)
    product = field.one()
    for image, c in zip(images, relation):
        product = product * image ** c
    order = is_root_of_unity(as_number(product))
    if order is None:
        logger.warning('prod alpha_i^c_i = 1 to %d bits for c = %s but '
                       'not exactly', 2 * report.precision_used, relation)
        raise MultiplicativeDependence(
            'the bases are numerically dependent to %d bits'
            % (2 * report.precision_used), relation,
        )
    raise MultiplicativeDependence(
        'the bases are multiplicatively dependent',
        [c * order for c in relation],
    )


def _monomials(poly, k):
    terms, constant = [], Fraction(0)
    for exponents, coefficient in poly.items():
        exponents = tuple(exponents)
        if len(exponents) != k or any(
                not isinstance(e, int) or e < 0 for e in exponents):
            raise InputError('exponent %s does not fit %d bases'
                             % (exponents, k))
        coefficient = Fraction(coefficient)
        if coefficient == 0:
            continue
        if not any(exponents):
            constant = coefficient
        else:
            terms.append((exponents, coefficient))
    if not terms:
        raise InputError('the polynomial has no non-constant monomial')
    return sorted(terms, reverse=True), constant


def expand_poly_power_sum(poly, alphas, theta, budget=None,
                          degree_cap=None):
    """ExpSumSpec of ||P(alpha_1^n, ..., alpha_k^n)|| < theta^n

    poly maps exponent tuples (i_1, ..., i_k) to rational coefficients;
    each monomial becomes a base alpha_1^i_1 ... alpha_k^i_k and the
    constant term becomes beta.
    """
    alphas = list(alphas)
    if not alphas:
        raise InputError('expected at least one base')
    terms, constant = _monomials(poly, len(alphas))
    check_independence(alphas, degree_cap)
    field, images = common_field(alphas, degree_cap)
    bases, coefficients = [], []
    for exponents, coefficient in terms:
        base = field.one()
        for image, e in zip(images, exponents):
            base = base * image ** e
        bases.append(as_number(base))
        coefficients.append(coefficient)
    logger.info('expanded %d monomials over a field of degree %d',
                len(bases), field.degree)
    return ExpSumSpec.build(bases, coefficients, constant, theta,
                            budget=budget, degree_cap=degree_cap)


def split_torsion_terms(alphas, qs, beta, degree_cap=None):
    """Fold root-of-unity bases into beta for each residue class

    With m the lcm of their orders, n = r (mod m) turns q zeta^n into
    the constant q zeta^r; the class r carries beta + sum q zeta^r.
    """
    alphas, qs = list(alphas), list(qs)
    if len(alphas) != len(qs):
        raise InputError('%d bases but %d coefficients'
                         % (len(alphas), len(qs)))
    folded, kept = [], []
    for alpha, q in zip(alphas, qs):
        order = is_root_of_unity(alpha)
        if order is None:
            kept.append((alpha, q))
            continue
        if isinstance(q, FieldElement):
            raise InputError('coefficients of root-of-unity bases must be '
                             'rational')
        folded.append((alpha, Fraction(q), order))
    modulus = lcm(*[order for _, _, order in folded]) if folded else 1

    numbers = [alpha for alpha, _, _ in folded]
    if isinstance(beta, AlgebraicNumber) and not beta.is_rational():
        numbers.append(beta)
    field, images = common_field(numbers, degree_cap)
    if len(images) > len(folded):
        base = images[-1]
    elif isinstance(beta, AlgebraicNumber):
        base = field.rational(beta.rational_value())
    else:
        base = field.rational(Fraction(beta))

    classes = []
    for residue in range(modulus):
        total = base
        for image, (_, q, _) in zip(images, folded):
            total = total + q * image ** residue
        value = total.rational_value() if total.is_rational() \
            else as_number(total)
        if isinstance(value, AlgebraicNumber) and not value.is_real():
            raise InputError('the folded shift for n = %d mod %d is not '
                             'real' % (residue, modulus))
        classes.append(SplitClass(residue, value))
    logger.debug('folded %d root-of-unity bases modulo %d',
                 len(folded), modulus)
    return TorsionSplit(modulus, [a for a, _ in kept], [q for _, q in kept],
                        classes)