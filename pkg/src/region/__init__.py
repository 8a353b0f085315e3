"""
Région détection-débit des réseaux ISAC : modèle de réseau, simplexe, flot maximum,
tracé de la frontière de Pareto et oracles de validation.
"""

from .exceptions import RegionError
from .netmodel import ValidatedNetwork, load_network, parse_network, validate_network
from .regioncore import (
    RateAssignment,
    RegionBoundary,
    SensingThroughputPoint,
    max_throughput_at_sensing,
    trace_region,
)

__all__ = [
    "RegionError",
    "ValidatedNetwork",
    "load_network",
    "parse_network",
    "validate_network",
    "RateAssignment",
    "RegionBoundary",
    "SensingThroughputPoint",
    "max_throughput_at_sensing",
    "trace_region",
]
