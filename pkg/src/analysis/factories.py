"""
Générateurs de réseaux pour les tests (graines numpy fixes).
"""

from pathlib import Path
from typing import List, Tuple

import numpy as np
from django.conf import settings

from region.netmodel import ValidatedNetwork, build_network, path_network


def fixture_path(name: str) -> Path:
    return Path(settings.FIXTURES_DIR) / name


def random_path_network(rng: np.random.Generator, max_nodes: int = 12) -> ValidatedNetwork:
    """
    Chemin 1..K à capacités réelles dans [0, 20], zone de détection contenant au moins
    une paire de noeuds adjacents.
    """
    k = int(rng.integers(2, max_nodes + 1))
    capacities = rng.uniform(0.0, 20.0, size=k - 1).round(6)
    start = int(rng.integers(1, k))
    area = {start, start + 1}
    area.update(int(node) for node in np.flatnonzero(rng.random(k) < 0.5) + 1)
    return path_network(list(capacities), sorted(area))


def random_general_network(
    rng: np.random.Generator,
    max_nodes: int = 8,
    max_links: int = 14,
    integer: bool = True,
    max_capacity: int = 10,
) -> ValidatedNetwork:
    """
    Réseau quelconque : Tx = 1, Rx = n, liens tirés parmi les paires, zone aléatoire.
    """
    n = int(rng.integers(3, max_nodes + 1))
    pairs: List[Tuple[int, int]] = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    count = int(rng.integers(1, min(max_links, len(pairs)) + 1))
    chosen = sorted(rng.choice(len(pairs), size=count, replace=False))
    if integer:
        capacities = rng.integers(0, max_capacity + 1, size=count).astype(float)
    else:
        capacities = rng.uniform(0.0, max_capacity, size=count).round(6)
    links = [(pairs[index][0], pairs[index][1], float(c)) for index, c in zip(chosen, capacities)]
    area = [int(node) + 1 for node in np.flatnonzero(rng.random(n) < 0.5)]
    return build_network(n, links, 1, n, area, name=f"random-{n}-{count}")
