"""
Exceptions du module region.
"""

from typing import Optional, Tuple


class RegionError(Exception):
    """Erreur de base du module region."""


class NetworkParseError(RegionError, ValueError):
    """Fichier réseau syntaxiquement invalide."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class DuplicateLinkError(NetworkParseError):
    """Deux liens déclarés pour la même paire de noeuds."""


class NetworkValidationError(RegionError, ValueError):
    """Réseau bien formé mais violant un invariant du modèle."""


class InvalidEndpointsError(NetworkValidationError):
    pass


class NodeRangeError(NetworkValidationError):
    pass


class CapacityError(NetworkValidationError):
    pass


class SelfLoopError(NetworkValidationError):
    pass


class LinearProgramError(RegionError):
    """Erreur liée à un programme linéaire."""


class LinearProgramStructureError(LinearProgramError, ValueError):
    """Dimensions incohérentes, détectées avant toute résolution."""


class SolverFailure(LinearProgramError):
    """Rupture numérique du simplexe : jamais de réponse silencieusement fausse."""


class TargetRangeError(RegionError, ValueError):
    """Cible hors de l'intervalle admissible."""

    def __init__(self, name: str, value: float, interval: Tuple[float, float]):
        self.value = value
        self.interval = interval
        low, high = interval
        super().__init__(f"{name} must be in [{low:g}, {high:g}] (got {value:g})")


class ParameterError(RegionError, ValueError):
    pass


class AssignmentStructureError(RegionError, ValueError):
    """L'affectation ne couvre pas exactement les liens orientés du réseau."""


class InvalidAssignmentError(RegionError, ValueError):
    pass


class InternalConsistencyError(RegionError):
    """Un résultat garanti par la théorie n'a pas été obtenu."""


class EnumerationBudgetError(RegionError):
    """Énumération trop grande pour l'oracle."""
