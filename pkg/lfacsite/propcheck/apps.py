from django.apps import AppConfig


class PropcheckConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'propcheck'
    verbose_name = 'Проверка тождеств'
