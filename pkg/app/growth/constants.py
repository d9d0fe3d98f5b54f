"""Certified growth constants alpha = lim x_n^{d^-n}

The log-series writes ln(alpha) as d^-j ln(y_j) plus the corrections
d^{-k-1} ln(y_{k+1} / y_k^d) for k >= j. With y_{k+1} = y_k^d (1 + r_k)
and |r_k| <= C/y_k^2 <= 1/2 every correction is at most 2C d^{-k-1}/y_k^2
in absolute value, which bounds the omitted tail.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

from core import conf
from core.exceptions import (
    DomainError, PrecisionInsufficient, UnsupportedError,
)
from numkernel.intervals import (
    IntervalReal, dist_nearest_int, interval_exp, interval_ln,
    interval_nth_root, power_of_two_above,
)
from recursion.orbits import (
    iterate_orbit, require_divergence, scale_factor, substitution_constant,
)
from recursion.specs import RecursionSpec


logger = logging.getLogger(__name__)

LOG_SERIES = 'log-series'
DIRECT_ROOT = 'direct-root'
PRODUCT_FORMULA = 'product-formula'

KAPPA_SPEC = RecursionSpec((1, 0, 1), 1, 0)


@dataclass(frozen=True)
class GrowthResult:
    alpha: IntervalReal
    log_alpha: IntervalReal
    terms_used: int
    tail_bound: Fraction
    method: str = LOG_SERIES
    start_index: int = 0


DirectRootEstimate = namedtuple(
    'DirectRootEstimate', ['value', 'index', 'caveat']
)

KappaResult = namedtuple(
    'KappaResult', ['value', 'partial', 'factors', 'tail_bound']
)

ResidualRow = namedtuple('ResidualRow', [
    'index', 'residual', 'scaled', 'identity_holds', 'scaled_dist',
    'scaled_dist_bound', 'floor_reading', 'nearest_reading',
])

AsymptoticReport = namedtuple('AsymptoticReport', ['rows', 'c_fit'])

RoundingIdentity = namedtuple('RoundingIdentity', ['n0', 'rows', 'c_fit'])


class _YStream:
    """Walks the orbit one term at a time with y-enclosures at prec"""

    def __init__(self, spec, prec, term_cap):
        self.spec = spec
        self.prec = prec
        self.term_cap = term_cap
        self.scale, self.exact_scale = scale_factor(spec, prec)
        self.index = spec.seed_index
        self.x = spec.seed

    @property
    def y(self):
        shifted = self.x + self.spec.shift
        if self.exact_scale is not None:
            return IntervalReal.exact(self.exact_scale * shifted, self.prec)
        return self.scale * IntervalReal.exact(shifted, self.prec)

    def advance(self):
        if self.index - self.spec.seed_index >= self.term_cap:
            raise UnsupportedError(
                'the log-series needs more than %d orbit terms'
                % self.term_cap
            )
        self.index += 1
        self.x = self.spec.image(self.x, self.index)


def _tail(constant, degree, index, y):
    """Bound on sum_{k >= index} of the corrections, given y_index >= y"""
    low = y.lower()
    return 2 * constant * Fraction(degree, degree - 1) / (
        Fraction(degree) ** (index + 1) * low * low
    )


def growth_constant(spec, prec=None, probe=None, term_cap=None):
    """Certified enclosure of alpha and ln(alpha) by the log-series"""
    prec = conf.pick(prec, 'DEFAULT_PREC')
    term_cap = conf.pick(term_cap, 'ORBIT_TERM_CAP')
    escaped = require_divergence(spec, probe)
    constant = substitution_constant(spec)
    d = spec.degree
    work = prec + 32
    stream = _YStream(spec, work, term_cap)

    while True:
        y = stream.y
        if (stream.index >= escaped and y.lower() >= 2
                and y.lower() ** 2 >= 2 * constant):
            break
        stream.advance()
    start = stream.index
    logger.debug('log-series for %s starts at y_%d', spec, start)

    total = interval_ln(y, work) / d ** start
    target = Fraction(1, 2 ** (prec + 4))
    tail = _tail(constant, d, stream.index, y)
    while tail >= target:
        stream.advance()
        following = stream.y
        ratio = following / y ** d
        total = total + interval_ln(ratio, work) / d ** stream.index
        y = following
        tail = _tail(constant, d, stream.index, y)

    tail_bound = power_of_two_above(tail)
    log_alpha = total + IntervalReal.from_bounds(-tail_bound, tail_bound,
                                                 work)
    alpha = interval_exp(log_alpha, work)
    logger.debug('log-series used %d terms, tail <= %s',
                 stream.index - start, tail_bound)
    if not alpha.certainly_gt(1):
        raise PrecisionInsufficient('alpha is not certified above 1')
    return GrowthResult(
        alpha=alpha.with_prec(prec),
        log_alpha=log_alpha.with_prec(prec),
        terms_used=stream.index - start,
        tail_bound=tail_bound,
        method=LOG_SERIES,
        start_index=start,
    )


def direct_root_alpha(spec, n, prec=None):
    """Enclosure of x_n^{d^-n}; approximates alpha only as n grows"""
    prec = conf.pick(prec, 'DEFAULT_PREC')
    if n < spec.seed_index:
        raise DomainError('x_%d precedes the seed x_%d'
                          % (n, spec.seed_index))
    if n == spec.seed_index:
        x = spec.seed
    else:
        x = iterate_orbit(spec, n - spec.seed_index).term(n)
    if x < 1:
        raise DomainError('x_%d = %d is below 1' % (n, x))
    work = prec + 16
    log_x = interval_ln(IntervalReal.exact(x, work), work)
    value = interval_exp(log_x / spec.degree ** n, work).with_prec(prec)
    return DirectRootEstimate(
        value, n, 'encloses x_n^(d^-n), which only tends to alpha'
    )


def _main_term(spec, alpha, n, inverse_scale):
    """a_d^{-1/(d-1)} alpha^{d^n} - a_{d-1}/(d a_d) and alpha^{d^n}"""
    power = alpha ** (spec.degree ** n)
    main = inverse_scale * power - spec.shift
    if main.width() > Fraction(1, 4):
        raise PrecisionInsufficient(
            'alpha is too wide to resolve x_%d; raise the precision' % n
        )
    return main, power


def asymptotic_check(spec, orbit, alpha, n_range):
    """Residuals x_n - (a_d^{-1/(d-1)} alpha^{d^n} - a_{d-1}/(d a_d))

    Each row also carries |r_n| alpha^{d^n}, the nearest-integer distance
    of d a_d a_d^{-1/(d-1)} alpha^{d^n} and the floor and nearest
    readings of alpha^{d^n} itself.
    """
    prec = alpha.prec
    scale, exact = scale_factor(spec, prec + 16)
    inverse_scale = (IntervalReal.exact(1 / exact, prec + 16)
                     if exact is not None else scale.reciprocal())
    factor = spec.degree * spec.leading * inverse_scale
    rows = []
    for n in n_range:
        x = orbit.term(n)
        main, power = _main_term(spec, alpha, n, inverse_scale)
        residual = x - main
        scaled = residual.magnitude() * power.upper()
        scaled_power = dist_nearest_int(factor * power)
        try:
            floor_reading = power.floor() == x
        except PrecisionInsufficient:
            floor_reading = None
        nearest = dist_nearest_int(power)
        rows.append(ResidualRow(
            index=n,
            residual=residual,
            scaled=scaled,
            identity_holds=dist_nearest_int(main).nearest == x,
            scaled_dist=scaled_power.dist,
            scaled_dist_bound=scaled_power.dist.upper() * power.upper(),
            floor_reading=floor_reading,
            nearest_reading=nearest.nearest == x,
        ))
    c_fit = max((row.scaled for row in rows), default=Fraction(0))
    return AsymptoticReport(rows, c_fit)


def rounding_identity(spec, orbit, alpha, n_range):
    """Least n0 in n_range from which x_n is the nearest integer of the
    main term for every later index of the range"""
    report = asymptotic_check(spec, orbit, alpha, n_range)
    n0 = None
    for row in reversed(report.rows):
        if not row.identity_holds:
            break
        n0 = row.index
    return RoundingIdentity(n0, report.rows, report.c_fit)


def kappa_product(spec, prec=None, factors=None):
    """kappa = prod_{k >= 0} (1 + 1/x_k^2)^{2^-(k+1)} for x^2 + 1 from 1

    With factors unset the product runs until the tail factor, which lies
    in [1, exp(2^-K / x_K^2)], is below 2^-(prec+4).
    """
    if spec != KAPPA_SPEC:
        raise UnsupportedError(
            'the product formula applies only to %s' % KAPPA_SPEC
        )
    prec = conf.pick(prec, 'DEFAULT_PREC')
    work = prec + 32
    target = Fraction(1, 2 ** (prec + 4))
    partial = IntervalReal.exact(1, work)
    x, k = spec.seed, 0
    while True:
        tail = Fraction(1, 2 ** k * x * x)
        if (factors is None and tail < target) or k == factors:
            break
        factor = IntervalReal.exact(1 + Fraction(1, x * x), work)
        partial = partial * interval_nth_root(factor, 2 ** (k + 1), work)
        x, k = x * x + 1, k + 1
    tail_bound = power_of_two_above(tail)
    tail_factor = interval_exp(
        IntervalReal.from_bounds(0, tail_bound, work), work
    )
    return KappaResult(
        value=(partial * tail_factor).with_prec(prec),
        partial=partial.with_prec(prec),
        factors=k,
        tail_bound=tail_bound,
    )
