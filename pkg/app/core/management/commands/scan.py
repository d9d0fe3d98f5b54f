from core import conf
from core.exceptions import InputError, staged
from core.management.base import ReportCommand
from core.specfiles import read_spec_file
from dioph.analysis import analyze_hit, split_torsion_terms
from dioph.scanner import scan_hits
from dioph.serializers import (
    ExpSumSpecSerializer, HitAnalysisSerializer, ScanResultSerializer,
    TorsionSplitSerializer,
)
from dioph.specs import (
    ALL, RESIDUE, ExpSumSpec, IndexFilter, parse_exp_sum, read_exp_sum,
)


OPTIONS = ['n_max', 'n_filter', 'prec', 'workers']

DEFAULT_N_MAX = 100


def scan_and_analyze(spec, config):
    with staged('scan'):
        result = scan_hits(spec, config['n_max'], config['n_filter'],
                           prec=config['prec'], workers=config['workers'])
    with staged('analysis'):
        analyses = [analyze_hit(spec, hit) for hit in result.hits]
    return {
        'spec': ExpSumSpecSerializer(spec).data,
        'scan': ScanResultSerializer(result).data,
        'analyses': HitAnalysisSerializer(analyses, many=True).data,
    }


class Command(ReportCommand):
    """Scan ||sum q_i alpha_i^n + beta|| < theta^n and analyze each hit"""
    help = 'Certified scan of an exponential-sum spec file'

    def add_report_arguments(self, parser):
        parser.add_argument('spec_file')
        parser.add_argument('--n-max', type=int)
        parser.add_argument('--n-filter',
                            help='all, powers_of_2 or "residue r mod m"')
        parser.add_argument('--prec', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--split-torsion', action='store_true',
                            help='Fold root-of-unity bases into beta and '
                                 'scan each residue class')

    def build_report(self, options):
        text = read_spec_file(options['spec_file'])
        flags = dict(options)
        if flags.get('n_filter') is not None:
            try:
                flags['n_filter'] = IndexFilter.parse(flags['n_filter'])
            except InputError as exc:
                raise exc.with_stage('parse')
        if options['split_torsion']:
            return self.split_report(text, flags)
        spec, file_options = parse_exp_sum(text)
        config = self.resolve(flags, file_options)
        return scan_and_analyze(spec, config), config

    def resolve(self, flags, file_options):
        return conf.resolve(flags, file_options, OPTIONS, defaults={
            'n_max': DEFAULT_N_MAX,
            'n_filter': IndexFilter(),
            'prec': conf.get('DEFAULT_PREC'),
            'workers': conf.get('SCAN_WORKERS'),
        })

    def split_report(self, text, flags):
        found = read_exp_sum(text)
        config = self.resolve(flags, found.options)
        if config['n_filter'].kind != ALL:
            raise InputError('--split-torsion scans residue classes itself; '
                             'drop n_filter', stage='parse')
        with staged('split'):
            split = split_torsion_terms(found.alphas, found.qs, found.beta)
        classes = []
        for item in split.classes:
            with staged('split'):
                spec = ExpSumSpec.build(split.alphas, split.qs, item.beta,
                                        found.theta, budget=found.budget)
            n_filter = (IndexFilter(RESIDUE, item.residue, split.modulus)
                        if split.modulus > 1 else IndexFilter())
            classes.append(dict(
                residue=item.residue,
                **scan_and_analyze(spec, dict(config, n_filter=n_filter)),
            ))
        config['split_torsion'] = True
        return {
            'split': TorsionSplitSerializer(split).data,
            'classes': classes,
        }, config
