from django.apps import AppConfig


class RecursionConfig(AppConfig):
    name = 'recursion'
