"""
Configuration pour le module region.
"""

import os

from dotenv import load_dotenv

load_dotenv()


def _env_float(name: str, default: float) -> float:
    value = os.getenv(name)
    return float(value) if value else default


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    return int(value) if value else default


# Tolérances du simplexe
FEASIBILITY_TOL = _env_float("ISAC_FEASIBILITY_TOL", 1e-9)
OBJECTIVE_TOL = _env_float("ISAC_OBJECTIVE_TOL", 1e-7)
PIVOT_TOL = _env_float("ISAC_PIVOT_TOL", 1e-10)

# Anti-cyclage : règle de Bland après 3 x taille de base pivots non améliorants
BLAND_THRESHOLD_FACTOR = 3
MAX_SIMPLEX_ITERATIONS = _env_int("ISAC_MAX_SIMPLEX_ITERATIONS", 50_000)

# Tracé de la frontière
DEFAULT_SLOPE_TOL = _env_float("ISAC_SLOPE_TOL", 1e-6)
DEFAULT_MIN_INTERVAL_FACTOR = 1e-6  # x s*
COLLINEAR_NOISE = 1e-12  # x max(1, |v|), bruit numérique admis sur v

# Algorithme de bisection (s̃)
DEFAULT_DELTA_FACTOR = 1e-4  # x s*

# Oracle par énumération
ORACLE_MAX_LINKS = _env_int("ISAC_ORACLE_MAX_LINKS", 5)
ORACLE_MAX_ASSIGNMENTS = _env_int("ISAC_ORACLE_MAX_ASSIGNMENTS", 10**8)

# Sorties de la commande
CSV_SIGNIFICANT_DIGITS = 12
DEFAULT_REGION_SAMPLES = 20
COMPARE_SAMPLES = 50
COMPARE_MAX_DEVIATION = 1e-6

# Validité d'une affectation de débits (relative à la plus grande capacité)
VALIDITY_TOL = _env_float("ISAC_VALIDITY_TOL", 1e-8)
