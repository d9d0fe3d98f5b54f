from algnum.pisot import classify_pisot
from algnum.polynomials import IntPolynomial
from algnum.serializers import PisotVerdictSerializer
from core.exceptions import staged
from core.management.base import ReportCommand


class Command(ReportCommand):
    """Print the Pisot verdict of an irreducible integer polynomial"""
    help = 'Decide whether the roots of a polynomial make a Pisot number'

    def add_report_arguments(self, parser):
        parser.add_argument('polynomial', help='e.g. "x^3 - x - 1"')
        parser.add_argument('--prec', type=int,
                            help='Starting precision of the root moduli')

    def build_report(self, options):
        with staged('parse'):
            poly = IntPolynomial.parse(options['polynomial'])
        with staged('pisot'):
            verdict = classify_pisot(poly, options['prec'])
        return {
            'polynomial': str(poly),
            'verdict': PisotVerdictSerializer(verdict).data,
        }, {'prec': options['prec']}
