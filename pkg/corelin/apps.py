from django.apps import AppConfig


class CorelinConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "corelin"
    verbose_name = "Dense complex linear algebra"
