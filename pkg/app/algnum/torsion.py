"""Roots of unity in the Galois closure of fields generated by roots

The closure is built by adjoining roots one at a time with exact
composita. For each prime power q with phi(q) dividing the closure
degree, membership of the q-th roots of unity is decided in order:

* not a member when p is unramified (p does not divide the discriminant)
  or when some Frobenius degree is not a multiple of the order of l mod q;
* a member when coordinates found by lattice reduction give an exact
  root of Phi_q in the field;
* otherwise by the degree of the compositum with Q(zeta_q).

A candidate that none of these settles is reported as unresolved, and
the order is then only a lower bound.
"""
import logging
from collections import namedtuple
from math import prod

from sympy import Poly, cyclotomic_poly, primefactors, primerange, totient
from sympy.ntheory import n_order

from algnum.fields import (
    NumberField, compositum, evaluate_at, lift, pull_back,
)
from algnum.numbers import REFERENCE_PREC, AlgebraicNumber
from algnum.polynomials import IntPolynomial, X
from algnum.roots import isolate_roots
from core import conf
from core.exceptions import GrowthLabError, InputError, UnsupportedError
from lattice.relations import relation_candidates, search_precision


logger = logging.getLogger(__name__)

MEMBER, NOT_MEMBER, UNRESOLVED = 'member', 'not-member', 'unresolved'

FIELD_SEARCH_HEIGHT = 2 ** 64
FROBENIUS_PRIMES = 400

TorsionReport = namedtuple('TorsionReport', [
    'generators', 'h', 'lower_bound', 'closure_degree', 'defining',
    'real', 'certificates', 'unresolved', 'field',
])


def cyclotomic(q):
    return IntPolynomial.from_poly(cyclotomic_poly(q, X, polys=True))


def find_in_field(field, number, max_height=None):
    """The element of field equal to number under its embedding, or None

    Coordinates come from an integer relation among the embedded powers
    of the generator and the number; a candidate is kept only if it is
    exactly a root of the number's minimal polynomial with the same
    embedding.
    """
    if number.is_rational():
        return field.rational(number.rational_value())
    n = field.degree
    if n % number.degree:
        return None
    max_height = max_height or FIELD_SEARCH_HEIGHT
    prec = search_precision(n, max_height)
    generator = field.gen()
    values = [(generator ** k).embed(prec) for k in range(n)]
    values.append(number.enclosure(prec))
    for candidate in relation_candidates(values, prec):
        denominator = candidate[-1]
        if not denominator or max(map(abs, candidate)) > max_height:
            continue
        element = field.element([-c for c in candidate[:-1]]) / denominator
        if not evaluate_at(number.minpoly, element).is_zero():
            continue
        if element.to_algebraic() == number:
            return element
    return None


def _join(field, number, known):
    """Adjoin number, keeping field when number already lies in it"""
    image = find_in_field(field, number)
    if image is not None:
        return field, image, known
    joined = compositum(field, number)
    if joined.field.degree == field.degree:
        image = pull_back(joined.second, joined.first, field)
        return field, image, known
    logger.debug('closure degree %d -> %d', field.degree,
                 joined.field.degree)
    return (joined.field, joined.second,
            [lift(k, joined.first) for k in known])


def splitting_field(generators):
    """A primitive element field for all roots of the generators"""
    field = NumberField.rationals()
    for poly in generators:
        for factor in poly.irreducible_factors():
            boxes = isolate_roots(factor, REFERENCE_PREC)
            known = []
            for box in boxes:
                # the remaining root is the root sum minus the known ones
                if len(known) >= factor.degree - 1:
                    break
                field, image, known = _join(
                    field, AlgebraicNumber(factor, box), known
                )
                known.append(image)
    if not field.defining.is_irreducible():
        raise GrowthLabError('closure polynomial %s is reducible'
                             % field.defining)
    return field


def _frobenius_degree(defining, ell):
    _, factors = Poly(list(reversed(defining.coeffs)), X,
                      modulus=ell).factor_list()
    degrees = {f.degree() for f, _ in factors}
    return degrees.pop() if len(degrees) == 1 else None


def _excluded(field, q, p):
    """True when zeta_q is certainly not in the Galois field"""
    defining = field.defining
    discriminant = int(defining.as_poly().discriminant())
    bad = abs(discriminant * defining.leading)
    if bad % p:
        return True
    for ell in primerange(3, FROBENIUS_PRIMES):
        if bad % ell == 0 or q % ell == 0:
            continue
        degree = _frobenius_degree(defining, ell)
        if degree is not None and degree % n_order(ell, q):
            logger.debug('frobenius at %d excludes zeta_%d', ell, q)
            return True
    return False


def decide_root_of_unity(field, q):
    """(status, g) for the q-th roots of unity in a Galois field

    g is an element with Phi_q(g) = 0 when the status is MEMBER.
    """
    p = primefactors(q)[0]
    if _excluded(field, q, p):
        return NOT_MEMBER, None
    phi = cyclotomic(q)
    zeta = AlgebraicNumber(phi, isolate_roots(phi, REFERENCE_PREC)[0])
    g = find_in_field(field, zeta)
    if g is None:
        try:
            joined = compositum(field, zeta)
        except UnsupportedError:
            logger.warning('zeta_%d undecided over %s', q, field)
            return UNRESOLVED, None
        if joined.field.degree > field.degree:
            return NOT_MEMBER, None
        g = pull_back(joined.second, joined.first, field)
    if not evaluate_at(phi, g).is_zero():
        raise GrowthLabError('certificate for zeta_%d failed' % q)
    return MEMBER, g


def _candidate_primes(degree):
    return [p for p in primerange(2, degree + 2) if degree % (p - 1) == 0]


def torsion_order(generators, degree_cap=None):
    """Number h of roots of unity in the Galois closure of the generators

    certificates maps each prime power q exactly dividing h to an element
    g of the closure with Phi_q(g) = 0.
    """
    cap = conf.pick(degree_cap, 'TORSION_DEGREE_CAP')
    generators = [g.primitive() for g in generators]
    if not generators or any(g.degree < 1 for g in generators):
        raise InputError('generators must be nonconstant polynomials')
    if prod(g.degree for g in generators) > cap:
        raise UnsupportedError(
            'degree product %d exceeds the torsion cap %d'
            % (prod(g.degree for g in generators), cap)
        )
    field = splitting_field(generators)
    degree = field.degree
    real = degree == 1 or field.generator.is_real()
    logger.info('Galois closure of degree %d defined by %s',
                degree, field.defining)

    certificates = {2: field.rational(-1)}
    unresolved = []
    if not real:
        for p in _candidate_primes(degree):
            k = 2 if p == 2 else 1
            while degree % int(totient(p ** k)) == 0:
                status, g = decide_root_of_unity(field, p ** k)
                if status == MEMBER:
                    certificates.pop(p ** (k - 1), None)
                    certificates[p ** k] = g
                    k += 1
                    continue
                if status == UNRESOLVED:
                    unresolved.append(p ** k)
                break
    h = prod(certificates)
    if unresolved:
        logger.warning('torsion order %d is a lower bound; unresolved %s',
                       h, unresolved)
    return TorsionReport(
        generators=generators,
        h=h,
        lower_bound=bool(unresolved),
        closure_degree=degree,
        defining=field.defining,
        real=real,
        certificates={str(q): str(g) for q, g in sorted(certificates.items())},
        unresolved=unresolved,
        field=field,
    )
