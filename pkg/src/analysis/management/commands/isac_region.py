"""
Commande Django exposant l'analyse de la région détection-débit.

    manage.py isac_region validate <network-file>
    manage.py isac_region region <network-file> [--samples n | --adaptive] [--csv out] [--svg out]
    manage.py isac_region point <network-file> --sensing T_S [--witness out]
    manage.py isac_region free <network-file> [--delta D]
    manage.py isac_region compare <network-file>

Codes de sortie : 0 succès, 1 entrée/sortie, 2 validation, 3 usage, 4 cohérence interne.
"""

import logging
import sys

import numpy as np
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser

from analysis.reporting import (
    RegionTable,
    atomic_write,
    breakpoint_labels,
    render_svg,
    write_witness,
)
from region.analytic1d import analytic_boundary, classify_path
from region.exceptions import (
    EnumerationBudgetError,
    InternalConsistencyError,
    LinearProgramError,
    NetworkParseError,
    NetworkValidationError,
    ParameterError,
    TargetRangeError,
)
from region.netmodel import ValidatedNetwork, load_network, sensing_link_sets
from region.regioncore import (
    FREE_SENSING,
    check_validity,
    max_sensing,
    max_sensing_at_throughput,
    max_throughput_at_sensing,
    region_summary,
    sample_region,
    trace_region,
)

logger = logging.getLogger(__name__)

EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_USAGE = 3
EXIT_INTERNAL = 4


class UsageParser(CommandParser):
    """Analyseur des sous-commandes : les erreurs d'usage sortent avec le code 3."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _point(label: str, point) -> str:
    return f"{label or '-'} ({_fmt(point.sensing)}, {_fmt(point.throughput)})"


class Command(BaseCommand):
    help = "Analyse la région détection-débit d'un réseau ISAC"

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # Sous-commande inconnue : même code de sortie que les autres erreurs d'usage
        parser.__class__ = UsageParser
        return parser

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(
            dest="subcommand",
            parser_class=UsageParser,
            metavar="{validate,region,point,free,compare}",
        )

        validate = subparsers.add_parser("validate", help="Valide un fichier réseau")
        validate.add_argument("network", help="Fichier réseau (JSON)")

        region = subparsers.add_parser("region", help="Calcule la frontière de la région")
        region.add_argument("network", help="Fichier réseau (JSON)")
        mode = region.add_mutually_exclusive_group()
        mode.add_argument(
            "--samples",
            type=int,
            default=settings.REGION_CONFIG["REGION_SAMPLES"],
            help="Nombre de cibles T_S uniformes dans [0, s*]",
        )
        mode.add_argument(
            "--adaptive",
            action="store_true",
            help="Table des points d'arrêt du tracé adaptatif",
        )
        region.add_argument("--csv", help="Fichier CSV de sortie")
        region.add_argument("--svg", help="Tracé SVG de sortie")
        region.add_argument(
            "--slope-tol",
            type=float,
            default=settings.REGION_CONFIG["SLOPE_TOL"],
            help="Tolérance sur les pentes du tracé adaptatif",
        )
        region.add_argument(
            "--min-interval",
            type=float,
            default=None,
            help="Longueur minimale d'intervalle (défaut s* x MIN_INTERVAL_FACTOR)",
        )

        point = subparsers.add_parser("point", help="Débit maximal pour une cible T_S")
        point.add_argument("network", help="Fichier réseau (JSON)")
        point.add_argument("--sensing", type=float, required=True, help="Cible T_S")
        point.add_argument("--witness", help="Fichier témoin de sortie (JSON)")

        free = subparsers.add_parser("free", help="Communication et détection libres")
        free.add_argument("network", help="Fichier réseau (JSON)")
        free.add_argument(
            "--delta",
            type=float,
            default=None,
            help="Précision de la bisection (défaut s* x DELTA_FACTOR)",
        )

        compare = subparsers.add_parser("compare", help="Compare LP et forme fermée (chemins)")
        compare.add_argument("network", help="Fichier réseau (JSON)")

    def handle(self, *args, **options):
        subcommand = options.get("subcommand")
        if not subcommand:
            raise CommandError(
                "a subcommand is required: validate, region, point, free or compare",
                returncode=EXIT_USAGE,
            )
        if options["verbosity"] >= 3:
            logging.getLogger("region").setLevel(logging.DEBUG)

        handler = getattr(self, f"handle_{subcommand}")
        try:
            handler(options)
        except OSError as e:
            raise CommandError(f"I/O error: {e}", returncode=EXIT_IO) from e
        except (NetworkParseError, NetworkValidationError) as e:
            raise CommandError(f"{options['network']}: {e}", returncode=EXIT_VALIDATION) from e
        except (TargetRangeError, ParameterError, EnumerationBudgetError) as e:
            raise CommandError(str(e), returncode=EXIT_USAGE) from e
        except (LinearProgramError, InternalConsistencyError) as e:
            logger.error(f"Internal consistency failure on {options['network']}: {e}")
            raise CommandError(f"internal error: {e}", returncode=EXIT_INTERNAL) from e

    def _load(self, options) -> ValidatedNetwork:
        net = load_network(options["network"])
        logger.info(f"Loaded network '{net.name}' from {options['network']}")
        self.stdout.write(
            f"📡 Réseau '{net.name}' chargé : {net.node_count} noeuds, {len(net.links)} liens"
        )
        return net

    def handle_validate(self, options):
        net = self._load(options)
        sets = sensing_link_sets(net)
        self.stdout.write(
            f"network '{net.name}': |V|={net.node_count}, |U|={len(net.links)}, "
            f"|U(A)|={len(sets.u_a)}, s*={_fmt(sets.capacity)}"
        )
        self.stdout.write(self.style.SUCCESS("valid"))

    def handle_region(self, options):
        net = self._load(options)
        config = settings.REGION_CONFIG
        s_star = max_sensing(net)
        min_interval = options["min_interval"]
        if min_interval is None and s_star > 0.0:
            min_interval = s_star * config["MIN_INTERVAL_FACTOR"]

        self.stdout.write("🔍 Tracé de la frontière...")
        boundary = trace_region(net, options["slope_tol"], min_interval)
        self.stdout.write(
            f"📊 {len(boundary.breakpoints)} points d'arrêt, {len(boundary.segments)} segments"
        )

        if options["adaptive"]:
            points = sorted(boundary.breakpoints, key=lambda p: p.sensing)
        else:
            points = sample_region(net, options["samples"])
        table = RegionTable.from_points(
            points, name=net.name, boundary=boundary, digits=config["CSV_SIGNIFICANT_DIGITS"]
        )

        meta = table.metadata
        self.stdout.write(
            f"f*={_fmt(meta['f_star'])}, s*={_fmt(meta['s_star'])}, "
            f"f~={_fmt(meta['f_tilde'])}, s~={_fmt(meta['s_tilde'])}"
        )
        if s_star == 0.0:
            self.stdout.write(
                self.style.WARNING("⚠️ degenerate region: empty sensing set, s* = 0")
            )

        labels = breakpoint_labels(boundary)
        for number, segment in enumerate(boundary.segments, start=1):
            start = boundary.breakpoints[segment.start]
            end = boundary.breakpoints[segment.end]
            ends = f"{_point(labels[segment.start], start)} -> {_point(labels[segment.end], end)}"
            if segment.kind == FREE_SENSING:
                self.stdout.write(f"segment {number}: {ends}, free sensing (df/ds=0)")
                continue
            k = f"k={segment.k}" if segment.k is not None else "k=?"
            self.stdout.write(
                f"segment {number}: {ends}, ds/df={_fmt(segment.slope)}, "
                f"df/ds={_fmt(segment.gradient)}, {k}"
            )

        if options["csv"]:
            atomic_write(options["csv"], table.to_csv())
            self.stdout.write(f"wrote {len(table.rows)} rows to {options['csv']}")
        else:
            self.stdout.write(table.to_csv(), ending="")
        if options["svg"]:
            atomic_write(options["svg"], render_svg(boundary, s_star, table, title=net.name))
            self.stdout.write(f"wrote plot to {options['svg']}")
        self.stdout.write(self.style.SUCCESS(f"✅ Région de '{net.name}' calculée"))

    def handle_point(self, options):
        net = self._load(options)
        value, witness = max_throughput_at_sensing(net, options["sensing"])
        if not check_validity(witness, net):
            raise InternalConsistencyError("P1 witness failed the validity check")
        self.stdout.write(f"max throughput = {_fmt(value)}")
        if options["witness"]:
            write_witness(witness, options["witness"])
            self.stdout.write(f"wrote witness to {options['witness']}")
        self.stdout.write(self.style.SUCCESS("✅ Témoin vérifié"))

    def handle_free(self, options):
        net = self._load(options)
        delta = options["delta"]
        if delta is None:
            factor = settings.REGION_CONFIG["DELTA_FACTOR"]
            s_star = max_sensing(net)
            delta = factor * s_star if s_star > 0.0 else factor

        self.stdout.write(f"🔍 Bisection de la détection libre (précision {_fmt(delta)})...")
        summary = region_summary(net, delta)
        self.stdout.write(f"f* = {_fmt(summary.f_star)}")
        self.stdout.write(f"s* = {_fmt(summary.s_star)}")
        self.stdout.write(f"free communication f~ = {_fmt(summary.f_tilde)}")
        self.stdout.write(
            f"free sensing s~ = {_fmt(summary.s_tilde)} (delta {_fmt(summary.delta)})"
        )
        self.stdout.write(f"LP calls = {summary.lp_calls}")
        self.stdout.write(f"avoiding path: {'yes' if summary.avoiding_path else 'no'}")
        self.stdout.write(self.style.SUCCESS("✅ Grandeurs caractéristiques calculées"))

    def handle_compare(self, options):
        net = self._load(options)
        path = classify_path(net)
        if path is None:
            raise CommandError(
                "not a one-dimensional path network; use the region subcommand instead",
                returncode=EXIT_USAGE,
            )

        samples = settings.REGION_CONFIG["COMPARE_SAMPLES"]
        threshold = settings.REGION_CONFIG["COMPARE_MAX_DEVIATION"]
        self.stdout.write(
            f"📐 Chemin à {net.node_count} noeuds, {path.sensing_count} liens de détection, "
            f"c_min = {_fmt(path.c_min)}"
        )
        deviation = 0.0
        for f in np.linspace(0.0, path.c_min, samples):
            f = min(float(f), path.c_min)
            lp_value, _ = max_sensing_at_throughput(net, f)
            deviation = max(deviation, abs(lp_value - analytic_boundary(path, f)))

        self.stdout.write(
            f"max deviation = {deviation:.3e} over {samples} throughput values"
        )
        if deviation > threshold:
            raise CommandError(
                f"analytic and LP boundaries differ by {deviation:.3e} (> {threshold:g})",
                returncode=EXIT_INTERNAL,
            )
        self.stdout.write(self.style.SUCCESS("✅ analytic and LP boundaries agree"))
