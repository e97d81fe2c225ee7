"""
Resource sweeps over the Case I, Case II, vertex and random channel families

Usage:
    python manage.py sweep --n 2 --family case1 --grid 0,0.1,0.2,0.5,1
    python manage.py sweep --n 4 --family random --samples 10000 --seed 7 --out scatter.csv
"""

import logging

from channel.services.schmidt import sample_random_channels, vertex_channel
from cli.management.base import ExperimentCommand
from cli.services.arguments import parse_float_list
from cli.services.csv_rows import render_csv, write_output
from cli.types import SweepConfig
from metrics.services.cases import case1_metrics, case2_metrics
from metrics.services.resources import resource_report

logger = logging.getLogger(__name__)

HEADER = ["n", "family", "param", "channel_entropy", "measurement_entanglement", "classical_bits"]


class Command(ExperimentCommand):
    help = "Tabulate channel entropy, measurement entanglement and classical bits"

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="Channel has n+1 Schmidt coefficients")
        parser.add_argument(
            "--family",
            choices=["case1", "case2", "random", "vertex"],
            required=True,
            help="Channel family to sweep",
        )
        parser.add_argument(
            "--grid",
            type=str,
            default=None,
            help="Comma-separated parameters: x, y or tau (ignored for random)",
        )
        parser.add_argument(
            "--samples",
            type=int,
            default=None,
            help="Number of random channels (family random only)",
        )
        self.add_seed_argument(parser)
        self.add_out_argument(parser)

    def run(self, **options):
        config = SweepConfig(
            n=options["n"],
            family=options["family"],
            param_grid=parse_float_list(options["grid"], "grid") if options["grid"] else None,
            sample_count=options["samples"],
            seed=options["seed"],
            output_path=options["out"],
        )
        rows = list(sweep_rows(config))
        write_output(render_csv(HEADER, rows), config.output_path, self.stdout)
        self.stderr.write(self.style.SUCCESS(f"Swept {len(rows)} {config.family} channels at n={config.n}"))


def sweep_rows(config: SweepConfig):
    """Yield one CSV row per channel in deterministic input order."""
    if config.family == "random":
        channels = sample_random_channels(config.n, config.sample_count, config.seed)
        for index, ch in enumerate(channels):
            yield _row(config, index, resource_report(ch))
    else:
        for param in config.param_grid:
            if config.family == "case1":
                yield _row(config, param, case1_metrics(config.n, param))
            elif config.family == "case2":
                yield _row(config, param, case2_metrics(config.n, param))
            else:
                tau = int(param)
                yield _row(config, tau, resource_report(vertex_channel(config.n, tau)))
    logger.info(f"Sweep {config.family} n={config.n} finished")


def _row(config: SweepConfig, param, report):
    return [
        config.n,
        config.family,
        param,
        report.channel_entropy,
        report.measurement_entanglement,
        report.classical_bits,
    ]
