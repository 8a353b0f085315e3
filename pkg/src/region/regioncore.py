"""
Région détection-débit d'un réseau ISAC.

v(T_S) désigne le débit maximal atteignable pour une fidélité de détection T_S ; il est obtenu
par le programme linéaire P1. P2 donne la communication libre f̃, la bisection sur P1 la
détection libre s̃, et le tracé récursif de v la frontière de Pareto.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from .config import (
    COLLINEAR_NOISE,
    DEFAULT_DELTA_FACTOR,
    DEFAULT_MIN_INTERVAL_FACTOR,
    DEFAULT_SLOPE_TOL,
    OBJECTIVE_TOL,
    VALIDITY_TOL,
)
from .exceptions import (
    AssignmentStructureError,
    InternalConsistencyError,
    InvalidAssignmentError,
    ParameterError,
    TargetRangeError,
)
from .netmodel import DirectedLink, ValidatedNetwork, link_key, sensing_link_sets
from .simplex import LinearProgram, LpSolution, LpStatus, Relation, solve_lp

logger = logging.getLogger(__name__)

FREE_SENSING = "free_sensing"
TRADEOFF = "tradeoff"


@dataclass(frozen=True)
class RateAssignment:
    """Débits de communication f_e et de détection s_e par lien orienté."""

    comm: Dict[DirectedLink, float]
    sense: Dict[DirectedLink, float]

    @classmethod
    def zeros(cls, net: ValidatedNetwork) -> "RateAssignment":
        return cls(
            comm={e: 0.0 for e in net.directed_links},
            sense={e: 0.0 for e in net.directed_links},
        )

    @classmethod
    def from_rates(
        cls,
        net: ValidatedNetwork,
        comm: Optional[Dict[DirectedLink, float]] = None,
        sense: Optional[Dict[DirectedLink, float]] = None,
    ) -> "RateAssignment":
        """Complète par des zéros les liens non mentionnés."""
        base = cls.zeros(net)
        base.comm.update(comm or {})
        base.sense.update(sense or {})
        return base


@dataclass(frozen=True)
class SensingThroughputPoint:
    sensing: float
    throughput: float
    provenance: str = "lp"


@dataclass(frozen=True)
class RegionSegment:
    """
    Segment de la frontière entre deux points d'arrêt.

    slope est la pente ds/df (-inf sur l'arête de détection libre) ; gradient est Δf/Δs.
    """

    start: int
    end: int
    slope: float
    kind: str
    k: Optional[int] = None

    @property
    def gradient(self) -> float:
        if math.isinf(self.slope):
            return 0.0
        return 1.0 / self.slope if self.slope != 0.0 else -math.inf


@dataclass(frozen=True)
class RegionBoundary:
    breakpoints: Tuple[SensingThroughputPoint, ...]
    segments: Tuple[RegionSegment, ...] = ()

    @property
    def tradeoff_segments(self) -> Tuple[RegionSegment, ...]:
        return tuple(s for s in self.segments if s.kind == TRADEOFF)

    @property
    def free_communication_point(self) -> SensingThroughputPoint:
        """Point X = (s*, f̃)."""
        return self.breakpoints[0]

    @property
    def free_sensing_point(self) -> SensingThroughputPoint:
        """Point Z = (s̃, f*)."""
        for segment in self.segments:
            if segment.kind == FREE_SENSING:
                return self.breakpoints[segment.start]
        return self.breakpoints[-1]


@dataclass(frozen=True)
class RegionSummary:
    f_star: float
    s_star: float
    f_tilde: float
    s_tilde: float
    lp_calls: int
    avoiding_path: bool
    delta: float


def _check_target(target: float, upper: float, name: str) -> float:
    if not math.isfinite(target) or target < 0.0 or target > upper + OBJECTIVE_TOL:
        raise TargetRangeError(name, target, (0.0, upper))
    return min(target, upper)


def _communication_links(
    net: ValidatedNetwork, excluded: Iterable[DirectedLink] = ()
) -> List[DirectedLink]:
    # Les liens entrant dans Tx et sortant de Rx sont fixés à 0 : pas de variable
    excluded = set(excluded)
    return [
        e
        for e in net.directed_links
        if e[1] != net.source and e[0] != net.sink and e not in excluded
    ]


def _flow_program(
    net: ValidatedNetwork, comm_links: List[DirectedLink], sense_links: List[DirectedLink]
) -> Tuple[LinearProgram, Dict[tuple, int]]:
    labels = [("f",) + e for e in comm_links] + [("s",) + e for e in sense_links]
    index = {label: k for k, label in enumerate(labels)}
    objective = np.zeros(len(labels))
    for j in net.neighbors(net.source):
        column = index.get(("f", net.source, j))
        if column is not None:
            objective[column] = 1.0
    lp = LinearProgram.maximize(objective, labels)

    for node in net.nodes:
        if node in (net.source, net.sink):
            continue
        row = np.zeros(len(labels))
        for j in net.neighbors(node):
            if ("f", j, node) in index:
                row[index[("f", j, node)]] += 1.0
            if ("f", node, j) in index:
                row[index[("f", node, j)]] -= 1.0
        if np.any(row):
            lp.add_constraint(row, Relation.EQ, 0.0)
    return lp, index


def _capacity_rows(lp: LinearProgram, index: Dict[tuple, int], links: Iterable):
    for link in links:
        row = np.zeros(lp.variable_count)
        for kind in ("f", "s"):
            for e in link.directions:
                column = index.get((kind,) + e)
                if column is not None:
                    row[column] = 1.0
        if np.any(row):
            lp.add_constraint(row, Relation.LE, link.capacity)


def max_sensing(net: ValidatedNetwork) -> float:
    """
    s* : somme exacte des capacités de U(A), sans programme linéaire.

    Args:
        net: Réseau validé

    Returns:
        Fidélité de détection maximale
    """
    return sensing_link_sets(net).capacity


def build_p1(net: ValidatedNetwork, target_sensing: float) -> LinearProgram:
    """
    Construit P1 : maximiser le débit sous la contrainte de détection sum s_e = T_S.

    Contraintes : capacité combinée f_ij + f_ji + s_ij + s_ji <= c par lien non orienté,
    conservation du flot hors Tx/Rx, cible de détection sur E(A).

    Args:
        net: Réseau validé
        target_sensing: Cible T_S dans [0, s*]

    Returns:
        LinearProgram étiqueté ("f", i, j) / ("s", i, j)
    """
    sets = sensing_link_sets(net)
    target = _check_target(target_sensing, sets.capacity, "T_S")

    lp, index = _flow_program(net, _communication_links(net), list(sets.e_a))
    _capacity_rows(lp, index, net.links)

    if sets.e_a:
        row = np.zeros(lp.variable_count)
        for e in sets.e_a:
            row[index[("s",) + e]] = 1.0
        lp.add_constraint(row, Relation.EQ, target)
    return lp


def build_p2(net: ValidatedNetwork) -> LinearProgram:
    """
    Construit P2 : débit maximal lorsque les liens de E(A) ne communiquent pas.
    """
    sets = sensing_link_sets(net)
    lp, index = _flow_program(net, _communication_links(net, excluded=sets.e_a), [])
    outside = [link for link in net.links if link not in sets.u_a]
    _capacity_rows(lp, index, outside)
    return lp


def build_sensing_lp(net: ValidatedNetwork, target_throughput: float) -> LinearProgram:
    """
    Tranche inverse de la région : maximiser sum s_e sur E(A) à débit fixé.
    """
    if not math.isfinite(target_throughput) or target_throughput < 0.0:
        raise TargetRangeError("throughput", target_throughput, (0.0, math.inf))
    sets = sensing_link_sets(net)
    lp, index = _flow_program(net, _communication_links(net), list(sets.e_a))
    _capacity_rows(lp, index, net.links)

    throughput_row = lp.objective.copy()
    objective = np.zeros(lp.variable_count)
    for e in sets.e_a:
        objective[index[("s",) + e]] = 1.0
    lp.objective = objective
    lp.add_constraint(throughput_row, Relation.EQ, target_throughput)
    return lp


def decode_assignment(net: ValidatedNetwork, lp: LinearProgram, solution: LpSolution) -> RateAssignment:
    """Reconstruit l'affectation de débits à partir des étiquettes du programme."""
    assign = RateAssignment.zeros(net)
    for label, value in zip(lp.labels, solution.variable_values):
        kind, i, j = label
        rates = assign.comm if kind == "f" else assign.sense
        rates[(i, j)] = float(value) if value > 0.0 else 0.0
    return assign


def _solve_or_fail(lp: LinearProgram, what: str) -> LpSolution:
    solution = solve_lp(lp)
    if solution.status is not LpStatus.OPTIMAL:
        raise InternalConsistencyError(f"{what} returned {solution.status.value}")
    return solution


def _clamp(value: float) -> float:
    return 0.0 if abs(value) < OBJECTIVE_TOL else value


def max_throughput_at_sensing(
    net: ValidatedNetwork, target_sensing: float
) -> Tuple[float, RateAssignment]:
    """
    v(T_S) : débit maximal pour une cible de détection donnée.

    Args:
        net: Réseau validé
        target_sensing: Cible T_S dans [0, s*]

    Returns:
        (valeur, affectation témoin valide)
    """
    lp = build_p1(net, target_sensing)
    solution = _solve_or_fail(lp, f"P1 at T_S={target_sensing:g}")
    value = _clamp(solution.objective_value)
    logger.debug(f"v({target_sensing:.12g}) = {value:.12g} on '{net.name}'")
    return value, decode_assignment(net, lp, solution)


def max_throughput(net: ValidatedNetwork) -> float:
    """f* = v(0)."""
    value, _ = max_throughput_at_sensing(net, 0.0)
    return value


def free_communication(net: ValidatedNetwork) -> float:
    """
    f̃ : débit maximal à fidélité maximale s*, par P2.
    """
    lp = build_p2(net)
    solution = _solve_or_fail(lp, "P2")
    return _clamp(solution.objective_value)


def max_sensing_at_throughput(
    net: ValidatedNetwork, target_throughput: float
) -> Tuple[float, RateAssignment]:
    """
    max{s : (s, f) dans R} pour un débit f donné.

    Raises:
        TargetRangeError: si f dépasse f*
    """
    lp = build_sensing_lp(net, target_throughput)
    solution = solve_lp(lp)
    if solution.status is LpStatus.INFEASIBLE:
        raise TargetRangeError("throughput", target_throughput, (0.0, max_throughput(net)))
    if solution.status is not LpStatus.OPTIMAL:
        raise InternalConsistencyError(f"sensing program returned {solution.status.value}")
    return _clamp(solution.objective_value), decode_assignment(net, lp, solution)


def free_sensing(net: ValidatedNetwork) -> float:
    """s̃ exact : fidélité maximale au débit maximal f*."""
    value, _ = max_sensing_at_throughput(net, max_throughput(net))
    return value


def has_avoiding_path(net: ValidatedNetwork, positive_capacity: bool = True) -> bool:
    """
    Existe-t-il un chemin Tx -> Rx n'empruntant aucun lien de E(A) ?

    Args:
        net: Réseau validé
        positive_capacity: Ignorer aussi les liens de capacité nulle
    """
    sets = sensing_link_sets(net)
    blocked = {link.key for link in sets.u_a}
    seen = {net.source}
    frontier = [net.source]
    while frontier:
        next_frontier = []
        for u in frontier:
            for v in net.neighbors(u):
                key = link_key(u, v)
                if v in seen or key in blocked:
                    continue
                if positive_capacity and net.capacities[key] <= 0.0:
                    continue
                if v == net.sink:
                    return True
                seen.add(v)
                next_frontier.append(v)
        frontier = next_frontier
    return False


def approx_free_sensing(
    net: ValidatedNetwork, delta: float, f_star: Optional[float] = None
) -> Tuple[float, int]:
    """
    Approxime s̃ par bisection sur v (L = 0, U = s*, comparaison de v(M) à f*).

    Args:
        net: Réseau validé
        delta: Précision Δ > 0
        f_star: f* déjà connu (sinon calculé, ce qui compte un appel)

    Returns:
        (s', nombre d'appels au programme linéaire P1)
    """
    if not delta > 0.0:
        raise ParameterError(f"delta must be positive (got {delta})")

    lower, upper = 0.0, max_sensing(net)
    lp_calls = 0
    if upper - lower <= delta:
        return lower, lp_calls

    if f_star is None:
        f_star = max_throughput(net)
        lp_calls += 1

    # Au plus ⌈log₂(s*/Δ)⌉ résolutions, même si Δ est sous la résolution flottante
    max_steps = math.ceil(math.log2(upper) - math.log2(delta))
    for _ in range(max_steps):
        if upper - lower <= delta:
            break
        middle = (lower + upper) / 2.0
        if middle <= lower or middle >= upper:
            break
        value, _ = max_throughput_at_sensing(net, middle)
        lp_calls += 1
        if value >= f_star - OBJECTIVE_TOL:
            lower = middle
        else:
            upper = middle
        logger.debug(f"Bisection: v({middle:.9g})={value:.9g}, interval [{lower:.9g}, {upper:.9g}]")

    logger.info(f"Free sensing on '{net.name}': s'={lower:.9g} after {lp_calls} LP calls")
    return lower, lp_calls


class RegionCurve:
    """v(T_S) mémoïsé ; compte les résolutions de P1."""

    def __init__(self, net: ValidatedNetwork):
        self.net = net
        self.cache: Dict[float, float] = {}

    @property
    def lp_calls(self) -> int:
        return len(self.cache)

    def __call__(self, target: float) -> float:
        if target not in self.cache:
            self.cache[target], _ = max_throughput_at_sensing(self.net, target)
        return self.cache[target]


def sample_region(net: ValidatedNetwork, samples: int) -> List[SensingThroughputPoint]:
    """
    v en n cibles uniformes de [0, s*], par cible croissante.
    """
    if samples < 1:
        raise ParameterError(f"samples must be at least 1 (got {samples})")
    s_star = max_sensing(net)
    if s_star == 0.0 or samples == 1:
        targets = [0.0]
    else:
        targets = [s_star * i / (samples - 1) for i in range(samples)]
        targets[-1] = s_star
    curve = RegionCurve(net)
    return [SensingThroughputPoint(t, curve(t), "sample") for t in targets]


def _match_k(gradient: float, slope_tol: float) -> Optional[int]:
    if gradient >= 0.0:
        return None
    k = max(1, round(-1.0 / gradient))
    return k if abs(gradient + 1.0 / k) <= slope_tol else None


def _linear_pieces(
    curve: Callable[[float], float], s_star: float, slope_tol: float, min_interval: float
) -> List[Tuple[float, float, bool]]:
    # Subdivision récursive (pile explicite), intervalles produits de gauche à droite
    pieces: List[Tuple[float, float, bool]] = []
    stack = [(0.0, s_star)]
    while stack:
        a, b = stack.pop()
        m = (a + b) / 2.0
        va, vm, vb = curve(a), curve(m), curve(b)
        deviation = vm - (va + vb) / 2.0
        noise = COLLINEAR_NOISE * max(1.0, abs(va), abs(vb))
        if abs(deviation) <= slope_tol * (b - a) / 4.0 + noise:
            pieces.append((a, b, True))
        elif b - a <= min_interval or m <= a or m >= b:
            # Intervalle non résoluble en flottants : laissé non linéaire
            pieces.append((a, b, False))
        else:
            stack.append((m, b))
            stack.append((a, m))
    return pieces


def _vertices(
    curve: Callable[[float], float], pieces: List[Tuple[float, float, bool]], slope_tol: float
) -> List[Tuple[float, float]]:
    runs: List[List[float]] = []
    for a, b, linear in pieces:
        if not linear:
            continue
        if runs and runs[-1][1] == a:
            ra = runs[-1][0]
            run_slope = (curve(a) - curve(ra)) / (a - ra)
            piece_slope = (curve(b) - curve(a)) / (b - a)
            if abs(run_slope - piece_slope) <= slope_tol:
                runs[-1][1] = b
                continue
        runs.append([a, b])

    s_star = pieces[-1][1]
    vertices: List[Tuple[float, float]] = [(0.0, curve(0.0))]
    if not runs:
        vertices.append((s_star, curve(s_star)))
        return vertices

    if runs[0][0] > 0.0:
        vertices.append((runs[0][0], curve(runs[0][0])))
    for (a1, b1), (a2, b2) in zip(runs, runs[1:]):
        if b1 == a2:
            vertices.append((b1, curve(b1)))
            continue
        # Coude non résolu entre deux segments : intersection des deux droites
        g1 = (curve(b1) - curve(a1)) / (b1 - a1)
        g2 = (curve(b2) - curve(a2)) / (b2 - a2)
        if g1 - g2 > slope_tol:
            t = (curve(a2) - curve(b1) + g1 * b1 - g2 * a2) / (g1 - g2)
            if b1 <= t <= a2:
                vertices.append((t, curve(b1) + g1 * (t - b1)))
                continue
        vertices.append((b1, curve(b1)))
        vertices.append((a2, curve(a2)))
    if runs[-1][1] < s_star:
        vertices.append((runs[-1][1], curve(runs[-1][1])))
    vertices.append((s_star, curve(s_star)))

    unique: List[Tuple[float, float]] = []
    for vertex in vertices:
        if not unique or vertex[0] > unique[-1][0]:
            unique.append(vertex)
    return unique


def _segment_between(p: SensingThroughputPoint, q: SensingThroughputPoint, slope_tol: float):
    d_sensing = q.sensing - p.sensing
    d_throughput = q.throughput - p.throughput
    if d_throughput <= OBJECTIVE_TOL:
        return -math.inf, FREE_SENSING, None
    slope = d_sensing / d_throughput
    return slope, TRADEOFF, _match_k(1.0 / slope if slope != 0.0 else -math.inf, slope_tol)


def _aligned(
    p: SensingThroughputPoint, q: SensingThroughputPoint, r: SensingThroughputPoint, slope_tol: float
) -> bool:
    # Même critère que la subdivision : écart de q à la corde pr
    span = p.sensing - r.sensing
    if span <= 0.0:
        return True
    weight = (p.sensing - q.sensing) / span
    chord = p.throughput + weight * (r.throughput - p.throughput)
    noise = COLLINEAR_NOISE * max(1.0, abs(p.throughput), abs(r.throughput))
    return abs(q.throughput - chord) <= slope_tol * span / 4.0 + noise


def boundary_from_points(
    points: List[SensingThroughputPoint], slope_tol: float = DEFAULT_SLOPE_TOL
) -> RegionBoundary:
    """
    Construit la frontière à partir de points ordonnés par débit croissant.

    Les points intermédiaires alignés avec leurs voisins sont retirés.
    """
    kept = list(points)
    index = 1
    while index < len(kept) - 1:
        if _aligned(kept[index - 1], kept[index], kept[index + 1], slope_tol):
            del kept[index]
            index = max(1, index - 1)
        else:
            index += 1

    segments = []
    for index in range(len(kept) - 1):
        slope, kind, k = _segment_between(kept[index], kept[index + 1], slope_tol)
        segments.append(RegionSegment(index, index + 1, slope, kind, k))
    return RegionBoundary(breakpoints=tuple(kept), segments=tuple(segments))


def trace_region(
    net: ValidatedNetwork,
    slope_tol: float = DEFAULT_SLOPE_TOL,
    min_interval: Optional[float] = None,
) -> RegionBoundary:
    """
    Trace la frontière supérieure de R par subdivision récursive de [0, s*].

    Un intervalle dont le milieu est aligné avec ses extrémités (à slope_tol près) est un
    segment ; sinon il est coupé en deux jusqu'à min_interval. Les coudes non résolus sont
    placés à l'intersection des segments voisins.

    Args:
        net: Réseau validé
        slope_tol: Tolérance sur les pentes Δf/Δs
        min_interval: Longueur minimale d'intervalle (défaut s* x 1e-6)

    Returns:
        RegionBoundary, points par débit croissant depuis X = (s*, f̃)
    """
    s_star = max_sensing(net)
    if not slope_tol > 0.0:
        raise ParameterError(f"slope_tol must be positive (got {slope_tol})")
    if min_interval is None:
        min_interval = s_star * DEFAULT_MIN_INTERVAL_FACTOR
    if s_star > 0.0 and not min_interval > 0.0:
        raise ParameterError(f"min_interval must be positive (got {min_interval})")

    curve = RegionCurve(net)
    if s_star == 0.0:
        return RegionBoundary(breakpoints=(SensingThroughputPoint(0.0, curve(0.0)),))

    pieces = _linear_pieces(curve, s_star, slope_tol, min_interval)
    vertices = _vertices(curve, pieces, slope_tol)
    points = [SensingThroughputPoint(t, value) for t, value in reversed(vertices)]
    boundary = boundary_from_points(points, slope_tol)
    logger.info(
        f"Traced region of '{net.name}': {len(boundary.breakpoints)} breakpoints, "
        f"{len(boundary.segments)} segments, {curve.lp_calls} LP calls"
    )
    return boundary


def _tolerance(net: ValidatedNetwork) -> float:
    largest = max(net.capacities.values(), default=0.0)
    return VALIDITY_TOL * max(1.0, largest)


def _check_structure(assign: RateAssignment, net: ValidatedNetwork):
    expected = set(net.directed_links)
    if set(assign.comm) != expected or set(assign.sense) != expected:
        raise AssignmentStructureError(
            "assignment must cover exactly the directed links of the network"
        )


def check_validity(assign: RateAssignment, net: ValidatedNetwork) -> bool:
    """
    Vérifie capacité combinée, conservation du flot, positivité et conventions Tx/Rx.

    Raises:
        AssignmentStructureError: si l'ensemble de liens ne correspond pas
    """
    _check_structure(assign, net)
    eps = _tolerance(net)

    for e in net.directed_links:
        if assign.comm[e] < -eps or assign.sense[e] < -eps:
            return False
        if not (math.isfinite(assign.comm[e]) and math.isfinite(assign.sense[e])):
            return False

    for link in net.links:
        forward, backward = link.directions
        used = (
            assign.comm[forward] + assign.comm[backward]
            + assign.sense[forward] + assign.sense[backward]
        )
        if used > link.capacity + eps:
            return False

    for node in net.nodes:
        if node in (net.source, net.sink):
            continue
        balance = math.fsum(
            assign.comm[(j, node)] - assign.comm[(node, j)] for j in net.neighbors(node)
        )
        if abs(balance) > eps:
            return False

    for j in net.neighbors(net.source):
        if assign.comm[(j, net.source)] > eps:
            return False
    for j in net.neighbors(net.sink):
        if assign.comm[(net.sink, j)] > eps:
            return False
    return True


def evaluate_point(
    assign: RateAssignment, net: ValidatedNetwork, provenance: str = "witness"
) -> SensingThroughputPoint:
    """
    Paire (s, f) atteinte par une affectation valide.

    La détection est sommée lien non orienté par lien non orienté (s_ij + s_ji), dans l'ordre
    canonique des liens de U(A).
    """
    if not check_validity(assign, net):
        raise InvalidAssignmentError("rate assignment is not valid for this network")
    sets = sensing_link_sets(net)
    sensing = math.fsum(
        assign.sense[link.directions[0]] + assign.sense[link.directions[1]] for link in sets.u_a
    )
    throughput = math.fsum(assign.comm[(net.source, j)] for j in net.neighbors(net.source))
    return SensingThroughputPoint(sensing, throughput, provenance)


def reduce_one_direction(assign: RateAssignment, net: ValidatedNetwork) -> RateAssignment:
    """
    Ne garde qu'un sens actif par lien non orienté : flot net sur le sens dominant,
    détection regroupée sur ce même sens.
    """
    _check_structure(assign, net)
    comm: Dict[DirectedLink, float] = {}
    sense: Dict[DirectedLink, float] = {}
    for link in net.links:
        forward, backward = link.directions
        if assign.comm[backward] > assign.comm[forward]:
            dominant, other = backward, forward
        else:
            dominant, other = forward, backward
        comm[dominant] = assign.comm[dominant] - assign.comm[other]
        comm[other] = 0.0
        sense[dominant] = assign.sense[forward] + assign.sense[backward]
        sense[other] = 0.0
    return RateAssignment(comm=comm, sense=sense)


def scale_down(
    assign: RateAssignment, net: ValidatedNetwork, sigma: float, delta: float
) -> RateAssignment:
    """
    À partir d'un témoin de (s, f), construit un témoin de (s - σ, f - δ).

    Args:
        sigma: Réduction de détection, dans [0, s]
        delta: Réduction de débit, dans [0, f]
    """
    point = evaluate_point(assign, net)
    if not 0.0 <= sigma <= point.sensing:
        raise ParameterError(f"sigma must be in [0, {point.sensing:g}]")
    if not 0.0 <= delta <= point.throughput:
        raise ParameterError(f"delta must be in [0, {point.throughput:g}]")
    f_scale = (point.throughput - delta) / point.throughput if point.throughput > 0 else 0.0
    s_scale = (point.sensing - sigma) / point.sensing if point.sensing > 0 else 0.0

    sets = sensing_link_sets(net)
    inside = set(sets.e_a)
    return RateAssignment(
        comm={e: rate * f_scale for e, rate in assign.comm.items()},
        # La détection hors E(A) ne compte pas ; elle est simplement conservée
        sense={e: rate * s_scale if e in inside else rate for e, rate in assign.sense.items()},
    )


def region_summary(net: ValidatedNetwork, delta: Optional[float] = None) -> RegionSummary:
    """
    Grandeurs caractéristiques : f*, s*, f̃, s̃ (bisection), appels P1, chemin évitant E(A).
    """
    s_star = max_sensing(net)
    if delta is None:
        delta = DEFAULT_DELTA_FACTOR * s_star if s_star > 0 else DEFAULT_DELTA_FACTOR
    f_star = max_throughput(net)
    s_tilde, lp_calls = approx_free_sensing(net, delta, f_star=f_star)
    return RegionSummary(
        f_star=f_star,
        s_star=s_star,
        f_tilde=free_communication(net),
        s_tilde=s_tilde,
        lp_calls=lp_calls + 1,
        avoiding_path=has_avoiding_path(net),
        delta=delta,
    )
