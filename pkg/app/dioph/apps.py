from django.apps import AppConfig


class DiophConfig(AppConfig):
    name = 'dioph'
