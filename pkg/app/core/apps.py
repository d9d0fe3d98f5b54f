import sys

from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = 'core'

    def ready(self):
        # orbit terms run to millions of digits
        if hasattr(sys, 'set_int_max_str_digits'):
            sys.set_int_max_str_digits(0)
