from core import conf
from core.classification import classify_recursion
from core.management.base import ReportCommand
from core.serializers import ClassificationReportSerializer
from core.specfiles import read_spec_file
from recursion.specs import parse_recursion


OPTIONS = ['prec', 'max_deg', 'max_height', 'm_cap']


class Command(ReportCommand):
    """Decide whether alpha looks transcendental or has a Pisot power"""
    help = ('Run growth constant, minimal polynomial, torsion, Pisot and '
            'moreover checks on a recursion spec file')

    def add_report_arguments(self, parser):
        parser.add_argument('spec_file')
        parser.add_argument('--prec', type=int)
        parser.add_argument('--max-deg', type=int)
        parser.add_argument('--max-height', type=int)
        parser.add_argument('--m-cap', type=int)

    def build_report(self, options):
        spec, file_options = parse_recursion(
            read_spec_file(options['spec_file'])
        )
        config = conf.resolve(options, file_options, OPTIONS,
                              defaults={'prec': conf.get('DEFAULT_PREC')})
        report = classify_recursion(spec, **config)
        return ClassificationReportSerializer(report).data, config
