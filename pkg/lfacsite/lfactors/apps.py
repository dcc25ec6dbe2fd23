from django.apps import AppConfig


class LfactorsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'lfactors'
    verbose_name = 'L-факторы'
