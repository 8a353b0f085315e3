"""
Paramètres utilisés par la suite de tests.
"""

from .base import *

LOGGING["loggers"]["region"]["level"] = "WARNING"
LOGGING["loggers"]["analysis"]["level"] = "WARNING"
