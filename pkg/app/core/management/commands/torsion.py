from algnum.polynomials import IntPolynomial
from algnum.serializers import TorsionSerializer
from algnum.torsion import torsion_order
from core import conf
from core.exceptions import staged
from core.management.base import ReportCommand


class Command(ReportCommand):
    """Print the number of roots of unity in a Galois closure"""
    help = ('Torsion order of the Galois closure of the fields given by '
            'the polynomials')

    def add_report_arguments(self, parser):
        parser.add_argument('polynomials', nargs='+')
        parser.add_argument('--degree-cap', type=int,
                            help='Cap on the product of the degrees')

    def build_report(self, options):
        with staged('parse'):
            generators = [IntPolynomial.parse(text)
                          for text in options['polynomials']]
        config = {'degree_cap': conf.pick(options['degree_cap'],
                                          'TORSION_DEGREE_CAP')}
        with staged('torsion'):
            report = torsion_order(generators, config['degree_cap'])
        return TorsionSerializer(report).data, config
