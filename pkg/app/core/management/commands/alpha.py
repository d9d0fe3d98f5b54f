import logging
import re

from core import conf
from core.exceptions import InputError, staged
from core.management.base import ReportCommand
from core.serializers import AlphaReportSerializer
from core.specfiles import read_spec_file
from growth.constants import (
    KAPPA_SPEC, direct_root_alpha, growth_constant, kappa_product,
    rounding_identity,
)
from recursion.orbits import iterate_orbit
from recursion.specs import parse_recursion


logger = logging.getLogger(__name__)

OPTIONS = ['prec', 'n', 'residual_range']

_RANGE = re.compile(r'^(\d+)\.\.(\d+)$')


def parse_range(text):
    match = _RANGE.match(str(text).strip())
    if not match or int(match.group(1)) > int(match.group(2)):
        raise InputError('residual range must read "a..b" with a <= b, '
                         'got %r' % text, stage='parse')
    return int(match.group(1)), int(match.group(2))


def _log2_ceiling(value):
    return value.numerator.bit_length() - value.denominator.bit_length() + 1


def residual_indices(spec, alpha, prec, first, last):
    """Indices of first..last from the seed on, cut where alpha^(d^n)
    would need more bits than the precision cap

    Returns the indices with the working precision of each and the first
    index cut, if any.
    """
    cap = conf.get('PREC_CAP')
    d, log_bits = spec.degree, _log2_ceiling(alpha.upper())
    kept = []
    for n in range(max(first, spec.seed_index), last + 1):
        bits = prec + 2 * d ** n * log_bits + n * d.bit_length() + 32
        if bits > cap:
            logger.info('residuals stop at x_%d: %d bits exceed the cap %d',
                        n, bits, cap)
            return kept, n
        kept.append((n, bits))
    return kept, None


class Command(ReportCommand):
    """Certify alpha, cross-check it and tabulate the residuals"""
    help = ('Growth constant of a recursion spec file with the direct root, '
            'the product formula where it applies and the residual law')

    def add_report_arguments(self, parser):
        parser.add_argument('spec_file')
        parser.add_argument('--prec', type=int)
        parser.add_argument('--n', type=int,
                            help='Index of the direct root x_n^(d^-n)')
        parser.add_argument('--residual-range',
                            help='Residual indices as "a..b"')

    def build_report(self, options):
        spec, file_options = parse_recursion(
            read_spec_file(options['spec_file'])
        )
        config = conf.resolve(options, file_options, OPTIONS, defaults={
            'prec': conf.get('DEFAULT_PREC'),
            'n': None,
        })
        first, last = parse_range(config['residual_range'])
        prec = config['prec']

        with staged('growth'):
            growth = growth_constant(spec, prec)
        kept, truncated = residual_indices(spec, growth.alpha, prec,
                                           first, last)
        n = config['n']
        if n is None:
            n = kept[-1][0] if kept else spec.seed_index + 1
            config['n'] = n

        with staged('direct-root'):
            direct = direct_root_alpha(spec, n, prec)
        kappa = None
        if spec == KAPPA_SPEC:
            with staged('kappa'):
                kappa = kappa_product(spec, prec)

        with staged('residuals'):
            if kept:
                fine = growth_constant(spec, kept[-1][1]).alpha
                orbit = iterate_orbit(spec,
                                      max(1, kept[-1][0] - spec.seed_index))
                residuals = rounding_identity(spec, orbit, fine,
                                              [index for index, _ in kept])
            else:
                residuals = {'n0': None, 'c_fit': 0, 'rows': []}

        report = {
            'spec': spec,
            'growth': growth,
            'direct_root': direct,
            'direct_root_gap': (direct.value - growth.alpha).magnitude(),
            'kappa': kappa,
            'kappa_agrees': (None if kappa is None
                             else kappa.value.overlaps(growth.alpha)),
            'residual_range': '%d..%d' % (first, last),
            'residuals': residuals,
            'truncated_from': truncated,
        }
        return AlphaReportSerializer(report).data, config
