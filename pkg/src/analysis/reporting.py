"""
Sorties de la commande isac_region : table CSV, tracé SVG, fichiers témoins.
"""

import io
import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")

import pandas as pd
from matplotlib.figure import Figure

from region.config import CSV_SIGNIFICANT_DIGITS
from region.exceptions import NetworkParseError, ParameterError
from region.netmodel import ValidatedNetwork
from region.regioncore import (
    FREE_SENSING,
    RateAssignment,
    RegionBoundary,
    SensingThroughputPoint,
)

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["target_sensing", "max_throughput"]


def _significant(value: float, digits: int) -> float:
    return float(f"{value:.{digits}g}")


@dataclass
class RegionTable:
    """
    Table (T_S, v(T_S)) triée par cible croissante, avec les grandeurs de la région.

    Les valeurs sont arrondies à digits chiffres significatifs dès la construction, de
    sorte que la relecture du CSV reproduit la table à l'identique.
    """

    rows: List[Tuple[float, float]]
    name: str = ""
    metadata: Dict[str, Any] = field(default_factory=dict)
    digits: int = CSV_SIGNIFICANT_DIGITS

    def __post_init__(self):
        if self.digits < 1:
            raise ParameterError(f"CSV significant digits must be at least 1 (got {self.digits})")
        self.rows = sorted(
            (_significant(s, self.digits), _significant(f, self.digits)) for s, f in self.rows
        )

    @classmethod
    def from_points(
        cls,
        points: Sequence[SensingThroughputPoint],
        name: str = "",
        boundary: Optional[RegionBoundary] = None,
        digits: int = CSV_SIGNIFICANT_DIGITS,
    ) -> "RegionTable":
        metadata: Dict[str, Any] = {}
        if boundary is not None:
            metadata.update(
                f_star=boundary.breakpoints[-1].throughput,
                s_star=boundary.free_communication_point.sensing,
                f_tilde=boundary.free_communication_point.throughput,
                s_tilde=boundary.free_sensing_point.sensing,
            )
            metadata["segments"] = [
                {
                    "start": boundary.breakpoints[s.start],
                    "end": boundary.breakpoints[s.end],
                    "slope": s.slope,
                    "gradient": s.gradient,
                    "k": s.k,
                    "kind": s.kind,
                }
                for s in boundary.segments
            ]
        return cls(
            rows=[(p.sensing, p.throughput) for p in points],
            name=name,
            metadata=metadata,
            digits=digits,
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=CSV_COLUMNS)

    def to_csv(self) -> str:
        return self.to_frame().to_csv(
            index=False, float_format=f"%.{self.digits}g", lineterminator="\n"
        )

    @classmethod
    def from_csv(
        cls, source: Union[str, Path], name: str = "", digits: int = CSV_SIGNIFICANT_DIGITS
    ) -> "RegionTable":
        """
        Relit une table émise par to_csv (contenu texte ou chemin de fichier).
        """
        if isinstance(source, Path):
            source = source.read_text(encoding="utf-8")
        frame = pd.read_csv(io.StringIO(source), float_precision="round_trip")
        if list(frame.columns) != CSV_COLUMNS:
            raise NetworkParseError(f"expected columns {','.join(CSV_COLUMNS)}")
        rows = zip(frame["target_sensing"].astype(float), frame["max_throughput"].astype(float))
        return cls(rows=[(float(s), float(f)) for s, f in rows], name=name, digits=digits)


def atomic_write(path: Union[str, Path], content: Union[str, bytes]):
    """
    Écrit un fichier par écriture dans un fichier temporaire voisin puis renommage.

    Raises:
        OSError: si le répertoire cible n'est pas accessible en écriture
    """
    path = Path(path)
    data = content.encode("utf-8") if isinstance(content, str) else content
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"Wrote {len(data)} bytes to {path}")


def breakpoint_labels(boundary: RegionBoundary) -> List[str]:
    """
    Étiquettes X (communication libre), Y_1..Y_l (coudes) et Z (détection libre).

    W marque l'extrémité (0, f*) de l'arête de détection libre.
    """
    count = len(boundary.breakpoints)
    if count == 1:
        return ["Z"]
    z_index = count - 1
    for segment in boundary.segments:
        if segment.kind == FREE_SENSING:
            z_index = segment.start
    labels = []
    y = 0
    tail = count - 1 - z_index
    for index in range(count):
        if index == 0:
            labels.append("X")
        elif index == z_index:
            labels.append("Z")
        elif index > z_index:
            labels.append("W" if tail == 1 else f"W{index - z_index}")
        else:
            y += 1
            labels.append(f"Y{y}")
    return labels


def render_svg(
    boundary: RegionBoundary,
    s_star: float,
    table: Optional[RegionTable] = None,
    title: str = "",
) -> str:
    """
    Tracé SVG statique de la région : détection en abscisse, débit en ordonnée.

    La frontière est une seule ligne (gid "region-boundary") et chaque point d'arrêt
    étiqueté un marqueur (gid "breakpoint-<étiquette>").
    """
    points = list(boundary.breakpoints)
    xs = [p.sensing for p in points]
    ys = [p.throughput for p in points]
    if points[0].sensing < s_star or points[0].throughput > 0.0:
        xs.insert(0, s_star)
        ys.insert(0, 0.0)

    fig = Figure(figsize=(6, 4.5))
    ax = fig.add_subplot()
    ax.fill_between(xs, ys, color="tab:blue", alpha=0.15, linewidth=0)
    ax.plot(xs, ys, color="tab:blue", linewidth=2, gid="region-boundary")

    if table is not None and table.rows:
        ax.plot(
            [s for s, _ in table.rows],
            [f for _, f in table.rows],
            linestyle="none",
            marker=".",
            color="tab:gray",
            gid="samples",
        )

    for point, label in zip(points, breakpoint_labels(boundary)):
        ax.plot(
            [point.sensing],
            [point.throughput],
            marker="o",
            color="tab:red",
            gid=f"breakpoint-{label}",
        )
        ax.annotate(
            label,
            (point.sensing, point.throughput),
            textcoords="offset points",
            xytext=(6, 6),
        )

    ax.set_xlabel("sensing fidelity s")
    ax.set_ylabel("throughput f")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)

    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def witness_records(assign: RateAssignment) -> List[Dict[str, Any]]:
    records = []
    for (i, j) in sorted(set(assign.comm) | set(assign.sense)):
        f = assign.comm.get((i, j), 0.0)
        s = assign.sense.get((i, j), 0.0)
        if f == 0.0 and s == 0.0:
            continue
        records.append({"from": i, "to": j, "f": f, "s": s})
    return records


def dump_witness(assign: RateAssignment) -> str:
    return json.dumps(witness_records(assign), indent=2) + "\n"


def write_witness(assign: RateAssignment, path: Union[str, Path]):
    atomic_write(path, dump_witness(assign))


def read_witness(source: Union[str, Path], net: ValidatedNetwork) -> RateAssignment:
    """
    Relit un fichier témoin ; les liens absents ont des débits nuls.

    Raises:
        NetworkParseError: document mal formé ou lien inconnu du réseau
    """
    text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
    try:
        records = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(f"malformed witness file: {e.msg}", line=e.lineno) from e
    if not isinstance(records, list):
        raise NetworkParseError("witness file must contain a list of records")

    comm: Dict[Tuple[int, int], float] = {}
    sense: Dict[Tuple[int, int], float] = {}
    for index, record in enumerate(records):
        try:
            link = (int(record["from"]), int(record["to"]))
            f, s = float(record.get("f", 0.0)), float(record.get("s", 0.0))
        except (KeyError, TypeError, ValueError) as e:
            raise NetworkParseError("expected {from, to, f, s}", field=f"[{index}]") from e
        if link not in net.directed_links:
            raise NetworkParseError(f"unknown link {link[0]}->{link[1]}", field=f"[{index}]")
        if not (math.isfinite(f) and math.isfinite(s)):
            raise NetworkParseError("rates must be finite", field=f"[{index}]")
        comm[link] = f
        sense[link] = s
    return RateAssignment.from_rates(net, comm, sense)
