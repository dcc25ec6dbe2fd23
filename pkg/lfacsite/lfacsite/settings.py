"""
Django settings for lfacsite project.

Проект не обслуживает HTTP: Django даёт структуру приложений,
management-команды, конфигурацию и логирование для движка L-факторов.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.0/ref/settings/
"""

from pathlib import Path
from os import getenv

import sentry_sdk
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Необязательный .env рядом с manage.py, переменные окружения главнее
load_dotenv(BASE_DIR / ".env")

SENTRY_DSN = getenv("LFAC_SENTRY_DSN", "")
if SENTRY_DSN:  # Sentry включаем только когда задан DSN
    sentry_sdk.init(
        dsn=SENTRY_DSN,
        send_default_pii=False,
    )

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = getenv(
    "DJANGO_SECRET_KEY",
    "django-insecure-lfac-local-only-0c9f3a7e5b1d",
)

DEBUG = getenv("DJANGO_DEBUG", "0") == "1"

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    "rest_framework",

    "lfactors.apps.LfactorsConfig",  # движок: алгебра, WD-представления, каталог, полюса
    "propcheck.apps.PropcheckConfig",  # рандомизированная проверка тождеств
    "lfaccli.apps.LfaccliConfig",  # DSL, рендеринг и команды lfac
]

# База данных не нужна, все значения живут в памяти
DATABASES = {}

LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    # Пробелы после ':' и ',' в JSON: {"entries": []}
    "COMPACT_JSON": False,
    # Только ASCII в выводе, вывод одинаков на всех платформах
    "UNICODE_JSON": False,
}

# Настройки самого движка
LFAC = {
    # Файл с переписанными параметрами типов IIa, Va, VIa, X, XIa
    "CATALOG_FILE": getenv(
        "LFAC_CATALOG_FILE",
        str(BASE_DIR / "lfactors" / "fixtures" / "gsp4-catalog.json"),
    ),
    "DEFAULT_TRIALS": int(getenv("LFAC_TRIALS", "200")),
    "DEFAULT_SEED": int(getenv("LFAC_SEED", "7")),
    # Сколько раз перевыбирать рациональные значения символов при коллизиях
    "SPECIALIZE_ATTEMPTS": 25,
    # Приёмочные объёмы наборов и бюджет времени на набор
    "ACCEPTANCE_TRIALS": {
        "lemma71": 200,
        "theoremA": 100,
        "cor62": 100,
        "soudry": 100,
        "ideal": 100,
        "poles": 100,
        "theoremC": 100,
        "table": 1,
    },
    "SUITE_BUDGET_SECONDS": float(getenv("LFAC_SUITE_BUDGET", "30")),
    "JSON_SCHEMA": "lfac/1",
}

LOGFILE_NAME = getenv("LFAC_LOGFILE", str(BASE_DIR / "log.txt"))
LOGFILE_SIZE = 1024 * 1024
LOGFILE_COUNT = 3

LOGLEVEL = getenv("LFAC_LOGLEVEL", "warning").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            # stderr, чтобы stdout команд оставался побайтово стабильным
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
        "logfile": {
            "class": "logging.handlers.RotatingFileHandler",
            "filename": LOGFILE_NAME,
            "maxBytes": LOGFILE_SIZE,
            "backupCount": LOGFILE_COUNT,
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console", "logfile"],
        "level": LOGLEVEL,
    },
}
