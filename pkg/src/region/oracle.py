"""
Oracle par énumération exhaustive sur une grille, pour les très petits réseaux.

Un seul sens actif par lien : chaque lien porte soit rien, soit un flot f (multiple du pas g)
dans l'un de ses deux sens, et la capacité restante sur les liens de U(A) sert à la détection.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .analytic1d import classify_path
from .config import ORACLE_MAX_ASSIGNMENTS, ORACLE_MAX_LINKS
from .exceptions import (
    EnumerationBudgetError,
    InternalConsistencyError,
    ParameterError,
    TargetRangeError,
)
from .netmodel import DirectedLink, UndirectedLink, ValidatedNetwork, sensing_link_sets
from .regioncore import RateAssignment, SensingThroughputPoint, check_validity, evaluate_point

logger = logging.getLogger(__name__)

# Marge d'arrondi sur c / g
GRID_EPS = 1e-9

LinkOption = Tuple[Optional[DirectedLink], int]


@dataclass(frozen=True)
class GridSpec:
    step: float
    max_links: int = ORACLE_MAX_LINKS
    max_assignments: int = field(default=ORACLE_MAX_ASSIGNMENTS, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise ParameterError(f"grid step must be positive (got {self.step})")

    def units(self, capacity: float) -> int:
        """Nombre de pas entiers dans une capacité."""
        return int(math.floor(capacity / self.step + GRID_EPS))


@dataclass(frozen=True)
class GridFlow:
    """Flot énuméré en unités de grille, avec la détection disponible sur U(A)."""

    choice: Tuple[LinkOption, ...]
    throughput_units: int
    sensing_room: Tuple[int, ...]

    @property
    def sensing_units(self) -> int:
        return sum(self.sensing_room)


class GridEnumerator:
    """
    Énumère les flots de grille valides d'un réseau.

    Args:
        net: Réseau validé (au plus grid.max_links liens)
        grid: Pas et garde-fous de l'énumération
    """

    def __init__(self, net: ValidatedNetwork, grid: GridSpec):
        self.net = net
        self.grid = grid
        self.sensing = {link.key for link in sensing_link_sets(net).u_a}
        if len(net.links) > grid.max_links:
            raise EnumerationBudgetError(
                f"network has {len(net.links)} links, enumeration is limited to {grid.max_links}"
            )
        forward_only = classify_path(net) is not None
        self.options = [self._link_options(link, forward_only) for link in net.links]
        self._check_budget()

    def _link_options(self, link: UndirectedLink, forward_only: bool) -> List[LinkOption]:
        options: List[LinkOption] = [(None, 0)]
        directions = link.directions[:1] if forward_only else link.directions
        for e in directions:
            if e[1] == self.net.source or e[0] == self.net.sink:
                continue
            options.extend((e, units) for units in range(1, self.grid.units(link.capacity) + 1))
        return options

    def _room(self, link: UndirectedLink, flow_units: int) -> int:
        if link.key not in self.sensing:
            return 0
        return self.grid.units(link.capacity - flow_units * self.grid.step)

    def _check_budget(self):
        size = 1
        for link, options in zip(self.net.links, self.options):
            size *= sum(self._room(link, units) + 1 for _, units in options)
        if size > self.grid.max_assignments:
            raise EnumerationBudgetError(
                f"enumeration would visit {size:.3g} assignments "
                f"(limit {self.grid.max_assignments:.3g})"
            )
        logger.debug(f"Grid enumeration of '{self.net.name}': {size} assignments")

    def _balanced(self, choice: Tuple[LinkOption, ...]) -> bool:
        balance: Dict[int, int] = {}
        for e, units in choice:
            if e is None:
                continue
            balance[e[0]] = balance.get(e[0], 0) - units
            balance[e[1]] = balance.get(e[1], 0) + units
        ends = (self.net.source, self.net.sink)
        return all(value == 0 for node, value in balance.items() if node not in ends)

    def flows(self) -> Iterator[GridFlow]:
        for choice in itertools.product(*self.options):
            if not self._balanced(choice):
                continue
            throughput = sum(
                units for e, units in choice if e is not None and e[0] == self.net.source
            )
            room = tuple(
                self._room(link, units) for link, (_, units) in zip(self.net.links, choice)
            )
            yield GridFlow(choice=choice, throughput_units=throughput, sensing_room=room)

    def witness(self, flow: GridFlow, sensing_units: int) -> RateAssignment:
        """Affectation réalisant le flot avec sensing_units unités de détection."""
        g = self.grid.step
        assign = RateAssignment.zeros(self.net)
        remaining = sensing_units
        for link, (e, units), room in zip(self.net.links, flow.choice, flow.sensing_room):
            direction = e or link.directions[0]
            if e is not None:
                assign.comm[e] = units * g
            used = min(room, remaining)
            if used:
                assign.sense[direction] = used * g
                remaining -= used
        if remaining:
            raise InternalConsistencyError(
                f"grid flow cannot carry {sensing_units} sensing units"
            )
        if not check_validity(assign, self.net):
            raise InternalConsistencyError("enumerated witness failed the validity check")
        return assign


def brute_force_witnesses(
    net: ValidatedNetwork, grid: GridSpec
) -> List[Tuple[SensingThroughputPoint, RateAssignment]]:
    """
    Points Pareto-maximaux de la grille avec leur affectation témoin.

    Returns:
        Liste triée par débit croissant
    """
    enumerator = GridEnumerator(net, grid)
    best: Dict[int, GridFlow] = {}
    for flow in enumerator.flows():
        current = best.get(flow.throughput_units)
        if current is None or flow.sensing_units > current.sensing_units:
            best[flow.throughput_units] = flow

    frontier: List[GridFlow] = []
    highest = -1
    for units in sorted(best, reverse=True):
        flow = best[units]
        if flow.sensing_units > highest:
            frontier.append(flow)
            highest = flow.sensing_units

    results = []
    for flow in reversed(frontier):
        assign = enumerator.witness(flow, flow.sensing_units)
        results.append((evaluate_point(assign, net, provenance="oracle"), assign))
    logger.info(f"Oracle on '{net.name}' (g={grid.step:g}): {len(results)} Pareto points")
    return results


def brute_force_boundary(net: ValidatedNetwork, grid: GridSpec) -> List[SensingThroughputPoint]:
    """Frontière de Pareto de la région restreinte à la grille."""
    return [point for point, _ in brute_force_witnesses(net, grid)]


def brute_force_max_f(net: ValidatedNetwork, target_sensing: float, grid: GridSpec) -> float:
    """
    Débit maximal de grille pour une détection exactement égale à target_sensing.

    Minorant de v(T_S) ; égal à v(T_S) quand l'optimum est représentable sur la grille.
    """
    units = round(target_sensing / grid.step) if math.isfinite(target_sensing) else -1
    if units < 0 or not math.isclose(
        units * grid.step, target_sensing, rel_tol=GRID_EPS, abs_tol=GRID_EPS
    ):
        raise ParameterError(
            f"target sensing {target_sensing:g} is not a multiple of the grid step {grid.step:g}"
        )

    enumerator = GridEnumerator(net, grid)
    best: Optional[int] = None
    reachable = 0
    for flow in enumerator.flows():
        reachable = max(reachable, flow.sensing_units)
        if flow.sensing_units >= units and (best is None or flow.throughput_units > best):
            best = flow.throughput_units
    if best is None:
        raise TargetRangeError("T_S", target_sensing, (0.0, reachable * grid.step))
    return best * grid.step
