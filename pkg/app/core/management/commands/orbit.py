from core import conf
from core.exceptions import staged
from core.management.base import ReportCommand
from core.specfiles import read_spec_file
from recursion.orbits import escape_bound, iterate_orbit
from recursion.serializers import OrbitSerializer, RecursionSpecSerializer
from recursion.specs import parse_recursion


DEFAULT_COUNT = 10


class Command(ReportCommand):
    """Print the exact orbit of a recursion spec file"""
    help = 'Iterate x_{n+1} = P(x_n) from the seed of a spec file'

    def add_report_arguments(self, parser):
        parser.add_argument('spec_file')
        parser.add_argument('--count', type=int,
                            help='Number of steps after the seed')

    def build_report(self, options):
        spec, file_options = parse_recursion(
            read_spec_file(options['spec_file'])
        )
        config = conf.resolve(options, file_options, ['count'],
                              defaults={'count': DEFAULT_COUNT})
        with staged('orbit'):
            orbit = iterate_orbit(spec, config['count'])
            bound = escape_bound(spec)
        return {
            'spec': RecursionSpecSerializer(spec).data,
            'orbit': OrbitSerializer(orbit).data,
            'escape_bound': bound,
        }, config
