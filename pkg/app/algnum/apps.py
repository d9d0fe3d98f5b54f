from django.apps import AppConfig


class AlgnumConfig(AppConfig):
    name = 'algnum'
