"""
Forme fermée de la région pour les réseaux en chemin 1 - 2 - ... - K.

Sur un chemin, tout le débit traverse chaque lien : f* = c_min et chaque unité de débit
consomme une unité de capacité sur chacun des |U(A)| liens de détection.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .exceptions import TargetRangeError
from .netmodel import UndirectedLink, ValidatedNetwork, sensing_link_sets
from .regioncore import TRADEOFF, RegionBoundary, RegionSegment, SensingThroughputPoint


@dataclass(frozen=True)
class PathNetwork:
    net: ValidatedNetwork
    links: Tuple[UndirectedLink, ...]
    c_min: float
    sensing_count: int
    sensing_capacity: float


def classify_path(net: ValidatedNetwork) -> Optional[PathNetwork]:
    """
    Reconnaît un réseau en chemin (liens {j, j+1} exactement, Tx = 1, Rx = K, U(A) non vide).

    Returns:
        PathNetwork, ou None si le réseau n'est pas un chemin unidimensionnel
    """
    k = net.node_count
    if net.source != 1 or net.sink != k:
        return None
    expected = [(j, j + 1) for j in range(1, k)]
    if [link.key for link in net.links] != expected:
        return None

    sets = sensing_link_sets(net)
    if not sets.u_a:
        return None
    return PathNetwork(
        net=net,
        links=net.links,
        c_min=min(link.capacity for link in net.links),
        sensing_count=len(sets.u_a),
        sensing_capacity=sets.capacity,
    )


def analytic_max_throughput(p: PathNetwork) -> float:
    return p.c_min


def analytic_boundary(p: PathNetwork, f: float) -> float:
    """
    Détection maximale à débit f : sum_{U(A)} c_u - |U(A)| f.

    Raises:
        TargetRangeError: si f est hors de [0, c_min]
    """
    if not math.isfinite(f) or f < 0.0 or f > p.c_min:
        raise TargetRangeError("throughput", f, (0.0, p.c_min))
    return p.sensing_capacity - p.sensing_count * f


def analytic_max_throughput_at_sensing(p: PathNetwork, target_sensing: float) -> float:
    """Inverse de analytic_boundary : min(c_min, (s* - T_S) / |U(A)|)."""
    if not math.isfinite(target_sensing) or not 0.0 <= target_sensing <= p.sensing_capacity:
        raise TargetRangeError("T_S", target_sensing, (0.0, p.sensing_capacity))
    return min(p.c_min, (p.sensing_capacity - target_sensing) / p.sensing_count)


def analytic_region(p: PathNetwork) -> RegionBoundary:
    """
    Frontière exacte : de (s*, 0) à (s* - |U(A)| c_min, c_min), pente ds/df = -|U(A)|.
    """
    start = SensingThroughputPoint(p.sensing_capacity, 0.0, "analytic")
    if p.c_min == 0.0:
        return RegionBoundary(breakpoints=(start,))
    corner = SensingThroughputPoint(
        analytic_boundary(p, p.c_min), p.c_min, "analytic"
    )
    segment = RegionSegment(0, 1, -float(p.sensing_count), TRADEOFF, p.sensing_count)
    return RegionBoundary(breakpoints=(start, corner), segments=(segment,))


def free_sensing_possible(p: PathNetwork) -> bool:
    """Détection libre si un lien de U(A) a une capacité supérieure à c_min."""
    sets = sensing_link_sets(p.net)
    return any(link.capacity > p.c_min for link in sets.u_a)
