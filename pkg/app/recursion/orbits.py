"""Exact orbits of x_{n+1} = P(x_n) and the y-substitution

All indices are absolute: the seed sits at spec.seed_index and terms[i]
is x_{seed_index + i}.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import gmpy2
from sympy import Poly, QQ, Rational

from core import conf
from core.exceptions import (
    DivergenceNotEstablished, GrowthLabError, InputError, UnsupportedError,
)
from algnum.polynomials import X
from numkernel.intervals import IntervalReal, interval_nth_root


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orbit:
    terms: tuple
    seed_index: int = 0
    divergence_verified_from: Optional[int] = None

    def __len__(self):
        return len(self.terms)

    @property
    def last_index(self):
        return self.seed_index + len(self.terms) - 1

    def term(self, index):
        """x_index for an absolute index"""
        position = index - self.seed_index
        if position < 0 or position >= len(self.terms):
            raise IndexError('x_%d is not in this orbit' % index)
        return self.terms[position]


def _roots_above(poly, bound):
    """Number of distinct real roots of poly in (bound, oo)"""
    count = poly.count_roots(inf=bound)
    if poly.eval(bound) == 0:
        count -= 1
    return count


@lru_cache(maxsize=256)
def escape_bound(spec):
    """Least integer B >= 1 with P(x) > x and P'(x) > 0 for all x > B"""
    poly = spec.as_poly()
    critical = (poly - Poly(X, X, domain=QQ)) * poly.diff(X)
    critical = critical.sqf_part()
    ratio = max(
        abs(c) for c in critical.all_coeffs()[1:]
    ) / abs(critical.LC()) if critical.degree() > 0 else 0
    low, high = 1, max(1, int(ratio) + 2)
    if _roots_above(critical, low) == 0:
        return low
    while high - low > 1:
        middle = (low + high) // 2
        if _roots_above(critical, middle):
            low = middle
        else:
            high = middle
    logger.debug('escape bound of %s is %d', spec.polynomial, high)
    return high


def _check_size(value, index, bit_cap):
    if value.bit_length() > bit_cap:
        raise UnsupportedError(
            'x_%d has %d bits, above the %d-bit cap'
            % (index, value.bit_length(), bit_cap)
        )


def iterate_orbit(spec, count, term_cap=None, bit_cap=None):
    """Return the exact orbit x_{s}, ..., x_{s+count} of the seed"""
    term_cap = conf.pick(term_cap, 'ORBIT_TERM_CAP')
    bit_cap = conf.pick(bit_cap, 'ORBIT_BIT_CAP')
    if count < 1:
        raise InputError('count must be positive')
    if count > term_cap:
        raise UnsupportedError(
            'count %d exceeds the orbit term cap %d' % (count, term_cap)
        )
    bound = escape_bound(spec)
    terms = [spec.seed]
    escaped = spec.seed_index if spec.seed > bound else None
    for step in range(1, count + 1):
        index = spec.seed_index + step
        value = spec.image(terms[-1], index)
        _check_size(value, index, bit_cap)
        terms.append(value)
        if escaped is None and value > bound:
            escaped = index
    return Orbit(tuple(terms), spec.seed_index, escaped)


def divergence_check(spec, probe=None, bit_cap=None):
    """Least absolute index n0 within probe steps with x_n0 > B(P)

    Returns None when the orbit cycles, stays below the escape bound for
    probe steps, outgrows the size cap or leaves the integers.
    """
    probe = conf.pick(probe, 'DIVERGENCE_PROBE')
    bit_cap = conf.pick(bit_cap, 'ORBIT_BIT_CAP')
    bound = escape_bound(spec)
    value, seen = spec.seed, set()
    for step in range(probe + 1):
        index = spec.seed_index + step
        if value > bound:
            return index
        if value in seen:
            logger.info('orbit of %s cycles at x_%d', spec, index)
            return None
        seen.add(value)
        if step == probe:
            break
        try:
            value = spec.image(value, index + 1)
            _check_size(value, index + 1, bit_cap)
        except GrowthLabError as exc:
            logger.info('divergence probe stopped: %s', exc.message)
            return None
    return None


def require_divergence(spec, probe=None):
    start = divergence_check(spec, probe)
    if start is None:
        raise DivergenceNotEstablished(
            'orbit of %s was not shown to diverge' % spec
        )
    return start


def rational_root(value, n):
    """Exact n-th root of a positive Fraction, or None"""
    num, num_exact = gmpy2.iroot(gmpy2.mpz(value.numerator), n)
    den, den_exact = gmpy2.iroot(gmpy2.mpz(value.denominator), n)
    if num_exact and den_exact:
        return Fraction(int(num), int(den))
    return None


def scale_factor(spec, prec):
    """Enclosure of c = a_d^{1/(d-1)}, exact when c is rational"""
    exact = rational_root(spec.leading, spec.degree - 1)
    if exact is not None:
        return IntervalReal.exact(exact, prec), exact
    leading = IntervalReal.exact(spec.leading, prec + 8)
    return interval_nth_root(leading, spec.degree - 1, prec), None


def to_y_sequence(spec, orbit, prec):
    """Enclose y_n = a_d^{1/(d-1)} (x_n + a_{d-1}/(d a_d)) along the orbit"""
    if not orbit.terms:
        raise InputError('empty orbit')
    scale, exact = scale_factor(spec, prec)
    shift = spec.shift
    if exact is not None:
        return [IntervalReal.exact(exact * (x + shift), prec)
                for x in orbit.terms]
    return [scale * IntervalReal.exact(x + shift, prec)
            for x in orbit.terms]


@dataclass(frozen=True)
class Substitution:
    """y_{n+1} = sum_k reduced[k] * c^{1-k} * y_n^k with c^{d-1} = a_d

    reduced are the coefficients of R(t) = P(t - shift) + shift; the
    t^d coefficient is a_d and the t^{d-1} coefficient vanishes.
    """
    shift: Fraction
    reduced: tuple
    leading: Fraction

    @property
    def degree(self):
        return len(self.reduced) - 1

    def coefficients(self, prec):
        """Enclosures of the y-recursion coefficients b_0..b_d"""
        base = IntervalReal.exact(self.leading, prec + 8)
        scale = interval_nth_root(base, self.degree - 1, prec + 8)
        result = []
        for k, r in enumerate(self.reduced):
            if r == 0:
                result.append(IntervalReal.exact(0, prec))
            else:
                result.append(r * scale ** (1 - k))
        return result


@lru_cache(maxsize=256)
def substitution_polynomial(spec):
    shift = spec.shift
    rational_shift = Rational(shift.numerator, shift.denominator)
    t_poly = Poly(X - rational_shift, X, domain=QQ)
    reduced = spec.as_poly().compose(t_poly) + rational_shift
    coeffs = tuple(Fraction(int(c.p), int(c.q))
                   for c in reversed(reduced.all_coeffs()))
    return Substitution(shift, coeffs, spec.leading)


@lru_cache(maxsize=256)
def substitution_constant(spec):
    """Upper bound of 1 + sum_{k <= d-2} |b_k| as a Fraction

    For y >= 1, |y_{n+1} - y_n^d| <= (C - 1) y_n^{d-2} < C y_n^{d-2}.
    """
    substitution = substitution_polynomial(spec)
    total = Fraction(1)
    for b in substitution.coefficients(64)[:-2]:
        total += b.magnitude()
    return total
