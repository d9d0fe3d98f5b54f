"""Certified scan of ||sum q_i alpha_i^n + beta|| < theta^n over n

The sum at each n is computed exactly in the spec's field and only then
embedded, so the shrinking right-hand side is compared against a
certified enclosure. An index is a hit when dist.hi < theta^n and a miss
when dist.lo >= theta^n; anything else escalates precision until the cap
and is then reported as undecided.
"""
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from multiprocessing import get_context

from core import conf
from core.exceptions import DomainError, InputError, PrecisionInsufficient
from dioph.specs import IndexFilter
from numkernel.intervals import dist_nearest_int


logger = logging.getLogger(__name__)

HIT, MISS, UNDECIDED = 'hit', 'miss', 'undecided'

Hit = namedtuple('Hit', ['n', 'value', 'dist', 'nearest', 'height_ok'])

Undecided = namedtuple('Undecided', ['n', 'dist', 'theta_power', 'prec'])

ScanResult = namedtuple('ScanResult', [
    'n_max', 'n_filter', 'scanned', 'hits', 'undecided', 'n0',
    'dist_lower_bound',
])

QUARTER = Fraction(1, 4)

Decision = namedtuple('Decision', ['n', 'outcome', 'record', 'dist_lower'])


def _real_part(exact, prec):
    box = exact.embed(prec)
    if not box.im.contains(0):
        raise DomainError('the sum %s is not real' % exact)
    return box.re


def eval_exp_sum(spec, n, prec=None, prec_cap=None):
    """Enclosure of the sum at n, narrow enough to locate the nearest
    integer; precision doubles up to prec_cap"""
    if n < 0:
        raise InputError('n must be nonnegative, got %d' % n)
    prec = conf.pick(prec, 'DEFAULT_PREC')
    prec_cap = conf.pick(prec_cap, 'PREC_CAP')
    exact = spec.exact_sum(n)
    while prec <= prec_cap:
        value = _real_part(exact, prec)
        if value.width() < QUARTER:
            return value
        logger.debug('sum at n=%d too wide at %d bits', n, prec)
        prec *= 2
    raise PrecisionInsufficient('the sum at n=%d needs more than %d bits'
                                % (n, prec_cap))


def exact_distance(spec, n):
    """sum - nearest integer, as an element of the spec's field"""
    value = eval_exp_sum(spec, n)
    return spec.exact_sum(n) - dist_nearest_int(value).nearest


def distance_law_holds(spec, n, c):
    """True when the distance at n is exactly c theta^n"""
    target = spec.theta_image ** n * c
    distance = exact_distance(spec, n)
    return distance == target or distance == -target


def _height_ok(spec, heights, n):
    if spec.budget is None:
        return True
    if not heights:
        return True
    bound = spec.budget.value(n)
    return max(h.upper() for h in heights) < bound.lower()


def _decide(spec, n, exact, heights, prec, prec_cap):
    work, done, near, bound, checked = prec, prec, None, None, False
    while True:
        try:
            value = _real_part(exact, work)
            current = spec.theta_power(n, work)
        except PrecisionInsufficient:
            # embedding needs a few bits above work
            if bound is None:
                raise
            break
        bound, done = current, work
        try:
            near = dist_nearest_int(value)
        except PrecisionInsufficient:
            near = None
        if near is not None:
            if near.dist.upper() < bound.lower():
                hit = Hit(n, value, near.dist, near.nearest,
                          _height_ok(spec, heights, n))
                return Decision(n, HIT, hit, None)
            if near.dist.lower() >= bound.upper():
                return Decision(n, MISS, None, near.dist.lower())
            if not checked:
                checked = True
                distance = exact - near.nearest
                power = spec.theta_image ** n
                if distance == power or distance == -power:
                    return Decision(n, MISS, None, near.dist.lower())
        if work * 2 > prec_cap:
            break
        work *= 2
    logger.warning('n=%d undecided at %d bits', n, done)
    record = Undecided(n, near.dist if near else None, bound, done)
    return Decision(n, UNDECIDED, record, None)


def scan_chunk(spec, indices, prec, prec_cap):
    """Decide every index in indices (increasing)

    Reads no settings: every bound arrives as an argument.
    """
    heights = spec.coefficient_heights() if spec.budget else []
    decisions, previous, powers, steps = [], None, None, {}
    for n in indices:
        if previous is None:
            powers = [image ** n for image in spec.images]
        else:
            delta = n - previous
            if delta not in steps:
                steps[delta] = [image ** delta for image in spec.images]
            powers = [p * s for p, s in zip(powers, steps[delta])]
        previous = n
        exact = spec.exact_sum(n, powers)
        decisions.append(_decide(spec, n, exact, heights, prec, prec_cap))
    return decisions


def _split(indices, workers):
    return [indices[i::workers] for i in range(workers)
            if indices[i::workers]]


def scan_hits(spec, n_max, n_filter=None, prec=None, workers=None,
              prec_cap=None):
    """Certified hits for n in [0, n_max] passing n_filter"""
    cap = conf.get('SCAN_N_MAX')
    if not 0 <= n_max <= cap:
        raise InputError('n_max must lie in 0..%d' % cap)
    n_filter = n_filter or IndexFilter()
    prec = conf.pick(prec, 'DEFAULT_PREC')
    workers = conf.pick(workers, 'SCAN_WORKERS')
    prec_cap = conf.pick(prec_cap, 'PREC_CAP')
    indices = list(n_filter.indices(n_max))
    logger.info('scanning %d indices up to %d with %d workers',
                len(indices), n_max, workers)

    if workers > 1 and len(indices) > 1:
        chunks = _split(indices, workers)
        with ProcessPoolExecutor(max_workers=len(chunks),
                                 mp_context=get_context('fork')) as pool:
            futures = [pool.submit(scan_chunk, spec, chunk, prec, prec_cap)
                       for chunk in chunks]
            decisions = [d for future in futures for d in future.result()]
        decisions.sort(key=lambda d: d.n)
    else:
        decisions = scan_chunk(spec, indices, prec, prec_cap)

    hits = [d.record for d in decisions if d.outcome == HIT]
    undecided = [d.record for d in decisions if d.outcome == UNDECIDED]
    marked = [d.n for d in decisions if d.outcome != MISS]
    if marked:
        n0 = marked[-1] + 1
    else:
        n0 = indices[0] if indices else None
    lowers = [d.dist_lower for d in decisions
              if d.outcome == MISS and n0 is not None and d.n >= n0]
    return ScanResult(
        n_max=n_max,
        n_filter=str(n_filter),
        scanned=len(indices),
        hits=hits,
        undecided=undecided,
        n0=n0,
        dist_lower_bound=min(lowers) if lowers else None,
    )
