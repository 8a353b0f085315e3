"""
Flot maximum par chemins augmentants les plus courts (Edmonds-Karp).

Chaque lien non orienté {i,j} offre une capacité c partagée entre les deux sens : avec
x le flot net de i vers j, les capacités résiduelles sont c - x (i -> j) et c + x (j -> i).
"""

import collections
import logging
import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Set

from .netmodel import DirectedLink, LinkKey, NodeId, ValidatedNetwork, link_key

logger = logging.getLogger(__name__)

# Capacité résiduelle considérée comme nulle
RESIDUAL_EPS = 1e-12


@dataclass(frozen=True)
class FlowResult:
    value: float
    flow: Dict[DirectedLink, float]
    min_cut: FrozenSet[DirectedLink]
    source_side: FrozenSet[NodeId]


class EdmondsKarp:
    """Calcul du flot maximum sur un réseau à liens non orientés."""

    def __init__(self, net: ValidatedNetwork):
        self.net = net
        # Flot net orienté dans le sens de la clé canonique (i < j)
        self.net_flow: Dict[LinkKey, float] = {key: 0.0 for key in net.capacities}

    def residual(self, u: NodeId, v: NodeId) -> float:
        key = link_key(u, v)
        capacity = self.net.capacities[key]
        x = self.net_flow[key]
        return capacity - x if (u, v) == key else capacity + x

    def _push(self, u: NodeId, v: NodeId, amount: float):
        key = link_key(u, v)
        if (u, v) == key:
            self.net_flow[key] += amount
        else:
            self.net_flow[key] -= amount

    def bfs(self, source: NodeId, sink: NodeId) -> Optional[Dict[NodeId, NodeId]]:
        """
        Cherche un chemin augmentant le plus court dans le graphe résiduel.

        Returns:
            Tableau des parents si le puits est atteint, None sinon
        """
        parent: Dict[NodeId, NodeId] = {source: source}
        queue = collections.deque([source])
        while queue:
            u = queue.popleft()
            for v in self.net.neighbors(u):
                if v not in parent and self.residual(u, v) > RESIDUAL_EPS:
                    parent[v] = u
                    if v == sink:
                        return parent
                    queue.append(v)
        return None

    def reachable(self, source: NodeId) -> Set[NodeId]:
        seen = {source}
        queue = collections.deque([source])
        while queue:
            u = queue.popleft()
            for v in self.net.neighbors(u):
                if v not in seen and self.residual(u, v) > RESIDUAL_EPS:
                    seen.add(v)
                    queue.append(v)
        return seen

    def run(self) -> FlowResult:
        source, sink = self.net.source, self.net.sink
        augmentations = 0

        while True:
            parent = self.bfs(source, sink)
            if parent is None:
                break
            path_flow = math.inf
            v = sink
            while v != source:
                u = parent[v]
                path_flow = min(path_flow, self.residual(u, v))
                v = u
            v = sink
            while v != source:
                u = parent[v]
                self._push(u, v, path_flow)
                v = u
            augmentations += 1

        flow: Dict[DirectedLink, float] = {}
        for (i, j), x in self.net_flow.items():
            flow[(i, j)] = x if x > 0 else 0.0
            flow[(j, i)] = -x if x < 0 else 0.0

        side = self.reachable(source)
        cut = frozenset(
            (u, v)
            for u in sorted(side)
            for v in self.net.neighbors(u)
            if v not in side and self.net.capacity(u, v) > 0
        )
        value = math.fsum(flow[(source, j)] - flow[(j, source)] for j in self.net.neighbors(source))
        logger.debug(
            f"Max flow on '{self.net.name}': value={value:g} after {augmentations} augmentations"
        )
        return FlowResult(value=value, flow=flow, min_cut=cut, source_side=frozenset(side))


def max_flow(net: ValidatedNetwork) -> FlowResult:
    """
    Flot maximum de Tx vers Rx, avec certificat de coupe minimale.

    Args:
        net: Réseau validé

    Returns:
        FlowResult (valeur, flot par lien orienté, coupe minimale)
    """
    return EdmondsKarp(net).run()


def cut_capacity(net: ValidatedNetwork, cut: FrozenSet[DirectedLink]) -> float:
    return math.fsum(net.capacity(u, v) for u, v in cut)


def verify_certificate(result: FlowResult, net: ValidatedNetwork, tol: float = 1e-9) -> bool:
    """
    Vérifie conservation, capacité partagée, sens unique et valeur = capacité de la coupe.
    """
    for key, capacity in net.capacities.items():
        forward = result.flow[key]
        backward = result.flow[(key[1], key[0])]
        if forward < -tol or backward < -tol:
            return False
        if forward + backward > capacity + tol:
            return False
        if forward > tol and backward > tol:
            return False

    for node in net.nodes:
        if node in (net.source, net.sink):
            continue
        balance = math.fsum(
            result.flow[(j, node)] - result.flow[(node, j)] for j in net.neighbors(node)
        )
        if abs(balance) > tol:
            return False

    return abs(result.value - cut_capacity(net, result.min_cut)) <= tol
