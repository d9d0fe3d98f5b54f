from fractions import Fraction

from django.conf import settings


def get(name):
    """Return a computation default from settings.GROWTHLAB"""
    return settings.GROWTHLAB[name]


def pick(value, name):
    """Return value unless it is None, else the named default"""
    return get(name) if value is None else value


def lll_delta():
    """Return the configured LLL parameter as an exact rational"""
    return Fraction(get('LLL_DELTA'))


def resolve(flags, file_options, names, defaults=None):
    """Merge flag values over spec-file values over settings

    Keys are lower-case option names; a name missing from defaults is
    looked up under the upper-case setting name.
    """
    defaults = defaults or {}
    resolved = {}
    for name in names:
        value = flags.get(name)
        if value is None:
            value = file_options.get(name)
        if value is None:
            value = (defaults[name] if name in defaults
                     else get(name.upper()))
        resolved[name] = value
    return resolved
