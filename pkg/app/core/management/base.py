"""Shared plumbing for the commands that print one JSON report"""
import logging

import django
import gmpy2
import rest_framework
import sympy
from django.core.management.base import BaseCommand, CommandError
from django.utils import timezone
from rest_framework.renderers import JSONRenderer

from core.exceptions import GrowthLabError
from core.serializers import MetaSerializer


logger = logging.getLogger(__name__)


def plain(value):
    """JSON-ready form of a resolved config value"""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    return str(value)


def meta():
    return MetaSerializer({
        'generated_at': timezone.now(),
        'versions': {
            'django': django.get_version(),
            'djangorestframework': rest_framework.VERSION,
            'sympy': sympy.__version__,
            'gmpy2': gmpy2.version(),
        },
    }).data


def _leaf(value):
    if value is None:
        return 'null'
    if isinstance(value, str):
        return value
    return JSONRenderer().render(value).decode()


def flatten(value, prefix=''):
    """(path, leaf) pairs of a JSON document, depth first"""
    if isinstance(value, dict) and value:
        for key, item in value.items():
            yield from flatten(item, '%s.%s' % (prefix, key) if prefix
                               else key)
    elif isinstance(value, list) and value:
        for index, item in enumerate(value):
            yield from flatten(item, '%s[%d]' % (prefix, index))
    else:
        yield prefix, _leaf(value)


def render_table(document):
    rows = list(flatten(document))
    width = max(len(path) for path, _ in rows)
    return '\n'.join('%s  %s' % (path.ljust(width), leaf)
                     for path, leaf in rows)


class ReportCommand(BaseCommand):
    """A command whose output is exactly one JSON document

    Subclasses implement build_report, returning the report and the
    resolved configuration. GrowthLabErrors become {"error": ...} and a
    CommandError carrying the error's exit code.
    """
    requires_system_checks = []

    def add_arguments(self, parser):
        self.add_report_arguments(parser)
        parser.add_argument('--pretty', action='store_true',
                            help='Print a path/value table instead of JSON')
        parser.add_argument('--no-meta', action='store_true',
                            help='Leave out the timestamp and versions')

    def add_report_arguments(self, parser):
        pass

    def build_report(self, options):
        raise NotImplementedError

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]

    def emit(self, document, options):
        if options.get('pretty'):
            self.stdout.write(render_table(document))
        else:
            self.stdout.write(JSONRenderer().render(document).decode())

    def handle(self, *args, **options):
        try:
            report, config = self.build_report(options)
        except GrowthLabError as exc:
            logger.info('%s failed: %s', self.command_name, exc.message)
            self.emit({'error': exc.as_dict()}, options)
            raise CommandError(exc.message, returncode=exc.exit_code)
        document = {
            'command': self.command_name,
            'report': report,
            'config': {key: plain(value) for key, value in config.items()},
        }
        if not options.get('no_meta'):
            document['meta'] = meta()
        self.emit(document, options)
