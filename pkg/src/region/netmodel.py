"""
Modèle de réseau ISAC : graphe, capacités partagées, source, puits et zone de détection.

Le fichier réseau est un document JSON :

    {
      "name": "chemin K=5",
      "nodes": 5,
      "source": 1,
      "sink": 5,
      "sensing_area": [2, 3, 4],
      "links": [{"a": 1, "b": 2, "capacity": 6}, ...]
    }
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .exceptions import (
    CapacityError,
    DuplicateLinkError,
    InvalidEndpointsError,
    NetworkParseError,
    NodeRangeError,
    SelfLoopError,
)

logger = logging.getLogger(__name__)

NodeId = int
DirectedLink = Tuple[NodeId, NodeId]
LinkKey = Tuple[NodeId, NodeId]

KNOWN_FIELDS = {"name", "nodes", "source", "sink", "sensing_area", "links"}


def link_key(i: NodeId, j: NodeId) -> LinkKey:
    """Clé canonique (plus petit id en premier) d'une paire non orientée."""
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class UndirectedLink:
    """Lien non orienté dont la capacité est partagée entre les deux sens."""

    a: NodeId
    b: NodeId
    capacity: float

    @property
    def key(self) -> LinkKey:
        return link_key(self.a, self.b)

    @property
    def directions(self) -> Tuple[DirectedLink, DirectedLink]:
        i, j = self.key
        return (i, j), (j, i)


@dataclass(frozen=True)
class NetworkSpec:
    node_count: int
    links: Tuple[UndirectedLink, ...]
    source: NodeId
    sink: NodeId
    sensing_area: FrozenSet[NodeId]
    name: str = ""


@dataclass(frozen=True)
class SensingLinkSets:
    """U(A) et sa fermeture orientée E(A)."""

    u_a: Tuple[UndirectedLink, ...]
    e_a: Tuple[DirectedLink, ...]

    def contains_link(self, i: NodeId, j: NodeId) -> bool:
        return (i, j) in self.e_a

    @property
    def capacity(self) -> float:
        """Somme des capacités de U(A)."""
        return math.fsum(link.capacity for link in self.u_a)


@dataclass(frozen=True)
class ValidatedNetwork:
    """
    Réseau validé et immuable, avec les ensembles dérivés U, E et les index d'adjacence.

    Seule la spécification participe à l'égalité ; les champs dérivés en découlent.
    """

    spec: NetworkSpec
    links: Tuple[UndirectedLink, ...] = field(compare=False)
    directed_links: Tuple[DirectedLink, ...] = field(compare=False)
    capacities: Mapping[LinkKey, float] = field(compare=False)
    adjacency: Mapping[NodeId, Tuple[NodeId, ...]] = field(compare=False)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def node_count(self) -> int:
        return self.spec.node_count

    @property
    def nodes(self) -> range:
        return range(1, self.spec.node_count + 1)

    @property
    def source(self) -> NodeId:
        return self.spec.source

    @property
    def sink(self) -> NodeId:
        return self.spec.sink

    @property
    def sensing_area(self) -> FrozenSet[NodeId]:
        return self.spec.sensing_area

    def capacity(self, i: NodeId, j: NodeId) -> float:
        return self.capacities[link_key(i, j)]

    def has_link(self, i: NodeId, j: NodeId) -> bool:
        return link_key(i, j) in self.capacities

    def neighbors(self, node: NodeId) -> Tuple[NodeId, ...]:
        return self.adjacency.get(node, ())

    def with_sensing_area(self, sensing_area: Iterable[NodeId]) -> "ValidatedNetwork":
        spec = NetworkSpec(
            node_count=self.spec.node_count,
            links=self.spec.links,
            source=self.spec.source,
            sink=self.spec.sink,
            sensing_area=frozenset(sensing_area),
            name=self.spec.name,
        )
        return validate_network(spec)


def _parse_int(value: Any, field_name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise NetworkParseError("expected an integer", field=field_name)
    return value


def _parse_real(value: Any, field_name: str) -> float:
    if isinstance(value, bool):
        raise NetworkParseError("expected a real number", field=field_name)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise NetworkParseError("expected a real number", field=field_name)


def parse_network(text: str, name: str = "") -> NetworkSpec:
    """
    Analyse le contenu d'un fichier réseau.

    Args:
        text: Contenu JSON du fichier
        name: Nom par défaut si le document n'en fournit pas

    Returns:
        NetworkSpec non validée (seule la syntaxe est vérifiée)
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(f"malformed network file: {e.msg}", line=e.lineno) from e

    if not isinstance(document, dict):
        raise NetworkParseError("network file must contain an object")

    for key in ("nodes", "source", "sink", "sensing_area", "links"):
        if key not in document:
            raise NetworkParseError("missing required field", field=key)

    unknown = sorted(set(document) - KNOWN_FIELDS)
    if unknown:
        logger.warning(f"Ignoring unknown network fields: {', '.join(unknown)}")

    node_count = _parse_int(document["nodes"], "nodes")
    source = _parse_int(document["source"], "source")
    sink = _parse_int(document["sink"], "sink")

    raw_area = document["sensing_area"]
    if not isinstance(raw_area, list):
        raise NetworkParseError("expected a list of node ids", field="sensing_area")
    sensing_area = frozenset(
        _parse_int(node, f"sensing_area[{index}]") for index, node in enumerate(raw_area)
    )

    raw_links = document["links"]
    if not isinstance(raw_links, list):
        raise NetworkParseError("expected a list of links", field="links")

    links: List[UndirectedLink] = []
    seen: Dict[LinkKey, int] = {}
    for index, record in enumerate(raw_links):
        prefix = f"links[{index}]"
        if not isinstance(record, dict):
            raise NetworkParseError("expected an object {a, b, capacity}", field=prefix)
        for key in ("a", "b", "capacity"):
            if key not in record:
                raise NetworkParseError("missing required field", field=f"{prefix}.{key}")
        a = _parse_int(record["a"], f"{prefix}.a")
        b = _parse_int(record["b"], f"{prefix}.b")
        capacity = _parse_real(record["capacity"], f"{prefix}.capacity")

        key = link_key(a, b)
        if key in seen:
            raise DuplicateLinkError(
                f"duplicate link {{{key[0]},{key[1]}}} (first declared as links[{seen[key]}])",
                field=prefix,
            )
        seen[key] = index
        links.append(UndirectedLink(a, b, capacity))

    name = document.get("name", name)
    if not isinstance(name, str):
        raise NetworkParseError("expected a string", field="name")

    return NetworkSpec(
        node_count=node_count,
        links=tuple(links),
        source=source,
        sink=sink,
        sensing_area=sensing_area,
        name=name,
    )


def validate_network(spec: NetworkSpec) -> ValidatedNetwork:
    """
    Vérifie les invariants du modèle et dérive U, E et l'adjacence.

    Args:
        spec: Spécification issue de parse_network ou construite en code

    Returns:
        ValidatedNetwork immuable
    """
    n = spec.node_count
    if spec.source == spec.sink:
        raise InvalidEndpointsError(f"source and sink must differ (both are node {spec.source})")
    if n < 2:
        raise NodeRangeError(f"a network needs at least 2 nodes (got {n})")

    def check_node(node: NodeId, what: str):
        if not 1 <= node <= n:
            raise NodeRangeError(f"{what} {node} is outside [1, {n}]")

    check_node(spec.source, "source node")
    check_node(spec.sink, "sink node")
    for node in sorted(spec.sensing_area):
        check_node(node, "sensing-area node")

    capacities: Dict[LinkKey, float] = {}
    for link in spec.links:
        if link.a == link.b:
            raise SelfLoopError(f"self-loop at node {link.a}")
        check_node(link.a, "link endpoint")
        check_node(link.b, "link endpoint")
        if not math.isfinite(link.capacity):
            raise CapacityError(f"capacity of link {{{link.a},{link.b}}} must be finite")
        if link.capacity < 0:
            raise CapacityError(
                f"capacity of link {{{link.a},{link.b}}} must be non-negative (got {link.capacity:g})"
            )
        if link.key in capacities:
            raise DuplicateLinkError(f"duplicate link {{{link.key[0]},{link.key[1]}}}")
        capacities[link.key] = float(link.capacity)

    ordered = tuple(
        UndirectedLink(key[0], key[1], capacities[key]) for key in sorted(capacities)
    )
    directed = tuple(sorted(d for link in ordered for d in link.directions))

    neighbors: Dict[NodeId, List[NodeId]] = {node: [] for node in range(1, n + 1)}
    for link in ordered:
        i, j = link.key
        neighbors[i].append(j)
        neighbors[j].append(i)
    adjacency = {node: tuple(sorted(adj)) for node, adj in neighbors.items()}

    logger.debug(
        f"Validated network '{spec.name}': |V|={n}, |U|={len(ordered)}, |E|={len(directed)}"
    )
    return ValidatedNetwork(
        spec=spec,
        links=ordered,
        directed_links=directed,
        capacities=MappingProxyType(capacities),
        adjacency=MappingProxyType(adjacency),
    )


def sensing_link_sets(net: ValidatedNetwork) -> SensingLinkSets:
    """
    Calcule U(A) (liens dont les deux extrémités sont dans A) et E(A).

    Args:
        net: Réseau validé

    Returns:
        SensingLinkSets
    """
    area = net.sensing_area
    u_a = tuple(link for link in net.links if link.a in area and link.b in area)
    e_a = tuple(sorted(d for link in u_a for d in link.directions))
    return SensingLinkSets(u_a=u_a, e_a=e_a)


def network_to_dict(net: Union[ValidatedNetwork, NetworkSpec]) -> Dict[str, Any]:
    spec = net.spec if isinstance(net, ValidatedNetwork) else net
    document: Dict[str, Any] = {}
    if spec.name:
        document["name"] = spec.name
    document.update(
        {
            "nodes": spec.node_count,
            "source": spec.source,
            "sink": spec.sink,
            "sensing_area": sorted(spec.sensing_area),
            "links": [
                {"a": link.a, "b": link.b, "capacity": link.capacity} for link in spec.links
            ],
        }
    )
    return document


def serialize_network(net: Union[ValidatedNetwork, NetworkSpec]) -> str:
    """Sérialise un réseau au format du fichier réseau (inverse de parse_network)."""
    return json.dumps(network_to_dict(net), indent=2, ensure_ascii=False) + "\n"


def load_network(path: Union[str, Path]) -> ValidatedNetwork:
    """
    Lit, analyse et valide un fichier réseau.

    Les erreurs d'entrée/sortie remontent telles quelles (OSError).
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return validate_network(parse_network(text, name=path.stem))


def build_network(
    node_count: int,
    links: Iterable[Tuple[NodeId, NodeId, float]],
    source: NodeId,
    sink: NodeId,
    sensing_area: Iterable[NodeId] = (),
    name: str = "",
) -> ValidatedNetwork:
    spec = NetworkSpec(
        node_count=node_count,
        links=tuple(UndirectedLink(a, b, float(c)) for a, b, c in links),
        source=source,
        sink=sink,
        sensing_area=frozenset(sensing_area),
        name=name,
    )
    return validate_network(spec)


def path_network(
    capacities: Sequence[float], sensing_area: Iterable[NodeId], name: str = ""
) -> ValidatedNetwork:
    """
    Réseau en chemin 1 - 2 - ... - K avec Tx = 1 et Rx = K.

    Args:
        capacities: Capacités c_{j,j+1} pour j = 1..K-1
        sensing_area: Noeuds de la zone de détection
    """
    k = len(capacities) + 1
    links = [(j, j + 1, c) for j, c in enumerate(capacities, start=1)]
    return build_network(k, links, 1, k, sensing_area, name=name or f"path-K{k}")


def diamond_network(
    capacity: float = 10.0, sensing_area: Optional[Iterable[NodeId]] = (2, 4)
) -> ValidatedNetwork:
    """Losange 1-{2,3}-4, Tx = 1, Rx = 4."""
    links = [(1, 2, capacity), (1, 3, capacity), (2, 4, capacity), (3, 4, capacity)]
    return build_network(4, links, 1, 4, sensing_area or (), name="diamond")
