from django.apps import AppConfig


class LfaccliConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'lfaccli'
    verbose_name = 'Командная строка lfac'
