"""
Paramètres de développement pour isac-region.
"""

from .base import *

DEBUG = True

LOGGING["handlers"]["console"]["level"] = "DEBUG"
LOGGING["loggers"]["region"]["level"] = os.getenv("ISAC_LOG_LEVEL", "DEBUG")
