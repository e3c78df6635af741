"""config.settings
Archivo de configuración principal del proyecto Django.

Objetivo:
    Reunir en un solo lugar los valores por defecto de las corridas de análisis
    (resolución, semilla, tolerancias, parámetros de escaneo) y el registro de
    eventos, leyendo el entorno con django-environ.

Notas clave:
    - No hay superficie web: el proyecto se usa mediante comandos de gestión
      (`python manage.py julia|classify|antenna|dim|cheb|cover`).
    - Precedencia de configuración: estos valores < archivo --config < flags.
"""

from pathlib import Path  # Path: manejo de rutas sin depender de separadores del SO
import environ            # django-environ: facilita lectura/casting de variables .env

# BASE_DIR: raíz del proyecto (donde vive manage.py).
BASE_DIR = Path(__file__).resolve().parent.parent

############################
# Variables de entorno     #
############################
env = environ.Env(
    DEBUG=(bool, True),
    LOG_LEVEL=(str, "INFO"),
)
# Carga el archivo .env si existe (silencioso si falta, permitiendo defaults).
environ.Env.read_env(BASE_DIR / ".env")

############################
# Core / Seguridad         #
############################
SECRET_KEY = env("SECRET_KEY", default="dev-insecure-key-change-me")  # Sólo lo exige Django
DEBUG = env.bool("DEBUG", default=True)
ALLOWED_HOSTS = env.list("ALLOWED_HOSTS", default=[])

############################
# Aplicaciones instaladas  #
############################
INSTALLED_APPS = [
    "apps.analisis",
]

############################
# Análisis (RunConfig)     #
############################
# Versión del artefacto, incluida en cada JSON emitido.
ANALISIS_VERSION = "0.3.0"

ANALISIS = {
    "MAPA": env("ANALISIS_MAPA", default="poly: i, 0, 1"),           # z^2 + i
    "RESOLUCION": env.int("ANALISIS_RESOLUCION", default=512),        # potencia de dos >= 64
    "MAX_ITER": env.int("ANALISIS_MAX_ITER", default=200),
    "ESCALAS": env.int("ANALISIS_ESCALAS", default=4),
    "CENTROS": env.int("ANALISIS_CENTROS", default=16),
    "C_MIN": env.float("ANALISIS_C_MIN", default=0.001),
    "PROFUNDIDAD": env.int("ANALISIS_PROFUNDIDAD", default=5),
    "TOL_RAIZ": env.float("ANALISIS_TOL_RAIZ", default=1e-10),
    "TOL_ORBITA": env.float("ANALISIS_TOL_ORBITA", default=1e-9),
    "TOL_GEOM": env.float("ANALISIS_TOL_GEOM", default=1e-6),
    "SALIDA": env("ANALISIS_SALIDA", default=str(BASE_DIR / "salida")),
    "SEMILLA": env.int("ANALISIS_SEMILLA", default=0),
    "HILOS": env.int("ANALISIS_HILOS", default=1),
    "GRADOS": env("ANALISIS_GRADOS", default="2-8"),
}

############################
# Registro (logging)       #
############################
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "consola": {"class": "logging.StreamHandler", "formatter": "simple"},
    },
    "loggers": {
        "core": {"handlers": ["consola"], "level": env("LOG_LEVEL"), "propagate": False},
        "apps": {"handlers": ["consola"], "level": env("LOG_LEVEL"), "propagate": False},
    },
}

############################
# Internacionalización     #
############################
LANGUAGE_CODE = "es"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

############################
# Otros                    #
############################
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"
