"""
Paramètres de base pour le projet isac-region.

Le projet n'expose aucune vue ni base de données : Django sert d'hôte aux commandes
d'administration (``manage.py isac_region``) et à la configuration du logging.
"""

import os
from pathlib import Path

from region import config

BASE_DIR = Path(__file__).resolve().parent.parent.parent

SECRET_KEY = os.getenv("SECRET_KEY", "django-insecure-isac-region-cli-only")

DEBUG = False

INSTALLED_APPS = [
    "analysis",
]

LANGUAGE_CODE = "fr-fr"
TIME_ZONE = "Europe/Paris"
USE_I18N = True
USE_TZ = True

FIXTURES_DIR = BASE_DIR / "fixtures"

# Valeurs par défaut des analyses
REGION_CONFIG = {
    "SLOPE_TOL": config.DEFAULT_SLOPE_TOL,
    "MIN_INTERVAL_FACTOR": config.DEFAULT_MIN_INTERVAL_FACTOR,
    "DELTA_FACTOR": config.DEFAULT_DELTA_FACTOR,
    "REGION_SAMPLES": config.DEFAULT_REGION_SAMPLES,
    "COMPARE_SAMPLES": config.COMPARE_SAMPLES,
    "COMPARE_MAX_DEVIATION": config.COMPARE_MAX_DEVIATION,
    "CSV_SIGNIFICANT_DIGITS": config.CSV_SIGNIFICANT_DIGITS,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
        "json": {
            "format": '{"timestamp": "%(asctime)s", "level": "%(levelname)s", "logger": "%(name)s", "message": "%(message)s", "module": "%(module)s"}',
            "style": "%",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
            "stream": "ext://sys.stderr",
        },
        "json_console": {
            "class": "logging.StreamHandler",
            "formatter": "json",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "region": {
            "handlers": ["console"],
            "level": os.getenv("ISAC_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
        "analysis": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
}

if os.getenv("ISAC_LOG_FORMAT") == "json":
    for name in ("region", "analysis"):
        LOGGING["loggers"][name]["handlers"] = ["json_console"]
