from django.apps import AppConfig


class AnalisisConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    # Ruta completa del paquete de la app (está dentro de "apps/analisis")
    name = "apps.analisis"
    verbose_name = "Análisis de continuos de Julia"
