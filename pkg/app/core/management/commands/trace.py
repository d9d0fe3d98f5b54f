from algnum.numbers import REFERENCE_PREC, AlgebraicNumber
from algnum.pisot import power_trace
from algnum.polynomials import IntPolynomial
from algnum.roots import isolate_roots
from algnum.serializers import TraceSerializer
from core.exceptions import InputError, staged
from core.management.base import ReportCommand


class Command(ReportCommand):
    """Print Tr(a^n) for a root a of an irreducible polynomial"""
    help = 'Exact trace of the n-th power of an algebraic number'

    def add_report_arguments(self, parser):
        parser.add_argument('polynomial')
        parser.add_argument('n', type=int)

    def build_report(self, options):
        with staged('parse'):
            poly = IntPolynomial.parse(options['polynomial']).primitive()
            if poly.degree < 1 or not poly.is_irreducible():
                raise InputError('%s is not irreducible' % poly)
        # every conjugate has the same trace
        number = AlgebraicNumber(poly, isolate_roots(poly, REFERENCE_PREC)[0])
        with staged('trace'):
            trace = power_trace(number, options['n'])
        return TraceSerializer({
            'polynomial': poly, 'n': options['n'], 'trace': trace,
        }).data, {}
