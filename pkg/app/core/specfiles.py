"""Reading of the flat "key = value" spec files used by the commands"""
from collections import OrderedDict

from rest_framework import serializers

from core.exceptions import InputError


def read_assignments(text):
    """Split text into an ordered mapping of keys to raw string values

    Statements are separated by newlines or semicolons; "#" starts a
    comment. Keys are case-sensitive and may not repeat.
    """
    assignments = OrderedDict()
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0]
        for statement in line.split(';'):
            statement = statement.strip()
            if not statement:
                continue
            if '=' not in statement:
                raise InputError(
                    'line %d: expected "key = value", got %r'
                    % (line_number, statement)
                )
            key, value = statement.split('=', 1)
            key, value = key.strip(), value.strip()
            if not key or not value:
                raise InputError(
                    'line %d: empty key or value in %r'
                    % (line_number, statement)
                )
            if key in assignments:
                raise InputError('duplicate key %r' % key)
            assignments[key] = value
    return assignments


def flatten_errors(detail, prefix=''):
    """Render DRF error detail as "field: message" fragments"""
    if isinstance(detail, dict):
        parts = []
        for key, value in detail.items():
            name = key if key != 'non_field_errors' else ''
            label = '%s.%s' % (prefix, name) if prefix and name else \
                (name or prefix)
            parts.extend(flatten_errors(value, label))
        return parts
    if isinstance(detail, list):
        parts = []
        for item in detail:
            parts.extend(flatten_errors(item, prefix))
        return parts
    return ['%s: %s' % (prefix, detail) if prefix else str(detail)]


def validated(serializer, stage=None):
    """Run serializer validation, converting failures to InputError"""
    try:
        serializer.is_valid(raise_exception=True)
    except serializers.ValidationError as exc:
        raise InputError('; '.join(flatten_errors(exc.detail)),
                         stage=stage)
    return serializer.validated_data


def read_spec_file(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise InputError('cannot read %s: %s' % (path, exc.strerror))
