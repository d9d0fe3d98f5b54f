"""
Django settings for the growthlab project.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'GROWTHLAB_SECRET_KEY',
    'growthlab-local-only-k3y-no-web-surface'
)

DEBUG = bool(int(os.environ.get('GROWTHLAB_DEBUG', 0)))

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'core',
    'numkernel',
    'recursion',
    'growth',
    'algnum',
    'lattice',
    'dioph',
]


# Database
# Nothing is persisted; sqlite keeps the test runner and management
# commands happy without a server.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get(
            'DB_NAME', os.path.join(BASE_DIR, 'db.sqlite3')
        ),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.AutoField'


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# Rendering of JSON reports

REST_FRAMEWORK = {
    'UNICODE_JSON': True,
    'COMPACT_JSON': True,
    'STRICT_JSON': True,
    'UNAUTHENTICATED_USER': None,
}


# Computation defaults; command flags and spec-file keys override these.

GROWTHLAB = {
    'DEFAULT_PREC': 256,
    'PREC_CAP': int(os.environ.get('GROWTHLAB_PREC_CAP', 20000)),
    'ORBIT_TERM_CAP': 24,
    'ORBIT_BIT_CAP': 2 ** 24,
    'DIVERGENCE_PROBE': 64,
    'LLL_DELTA': '99/100',
    'RELATION_GUARD_FACTOR': 1,
    'MAX_DEG': 8,
    'MAX_HEIGHT': 10 ** 15,
    'TORSION_DEGREE_CAP': 12,
    'SPLITTING_DEGREE_CAP': 48,
    'M_CAP': 4,
    'SCAN_WORKERS': int(os.environ.get('GROWTHLAB_SCAN_WORKERS', 1)),
    'SCAN_N_MAX': 10 ** 5,
    'RESIDUAL_RANGE': '0..12',
}


# Logging goes to standard error; standard output is reserved for reports.

LOG_LEVEL = os.environ.get('GROWTHLAB_LOG_LEVEL', 'WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {'handlers': ['console'], 'level': LOG_LEVEL}
        for app in (
            'core', 'numkernel', 'recursion', 'growth',
            'algnum', 'lattice', 'dioph',
        )
    },
}
