from django.apps import AppConfig


class NumkernelConfig(AppConfig):
    name = 'numkernel'
