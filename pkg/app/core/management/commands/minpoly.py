from core import conf
from core.exceptions import staged
from core.management.base import ReportCommand
from lattice.relations import guess_min_poly, search_precision
from lattice.serializers import RelationReportSerializer
from numkernel.intervals import parse_enclosure


class Command(ReportCommand):
    """Search an integer polynomial vanishing at a decimal enclosure"""
    help = ('Minimal polynomial candidate for a value written as a decimal '
            'or as "mid±rad"')

    def add_report_arguments(self, parser):
        parser.add_argument('value')
        parser.add_argument('--max-deg', type=int)
        parser.add_argument('--max-height', type=int)

    def build_report(self, options):
        config = conf.resolve(options, {}, ['max_deg', 'max_height'])
        prec = max(search_precision(config['max_deg'], config['max_height']),
                   4 * len(options['value']))
        with staged('parse'):
            value = parse_enclosure(options['value'], prec)
        with staged('minpoly'):
            report = guess_min_poly(value, config['max_deg'],
                                    config['max_height'])
        return RelationReportSerializer(report).data, config
