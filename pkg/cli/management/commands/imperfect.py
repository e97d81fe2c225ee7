"""
Average fidelity of qutrit teleportation through (a_0, a_1, a_1) channels

Usage:
    python manage.py imperfect --grid 0,0.1,0.2,0.3,0.4,0.5,0.5773502691896258
"""

from channel.services.schmidt import qutrit_channel
from cli.management.base import ExperimentCommand
from cli.services.arguments import child_seed, parse_float_list
from cli.services.csv_rows import render_csv, write_output
from cli.types import ImperfectGrid
from extensions.services.imperfect import (
    imperfect_average_fidelity_closed,
    imperfect_average_fidelity_haar,
    imperfect_fidelity_estimate,
)

HEADER = ["a0", "F_closed", "F_haar", "F_mc", "stderr"]


class Command(ExperimentCommand):
    help = "Reference, Haar-averaged and Monte Carlo qutrit fidelities against a_0"

    def add_arguments(self, parser):
        parser.add_argument(
            "--grid",
            type=str,
            required=True,
            help="Comma-separated a_0 values in [0, 1/sqrt(3)]",
        )
        self.add_samples_argument(parser)
        self.add_seed_argument(parser)
        self.add_out_argument(parser)

    def run(self, **options):
        grid = ImperfectGrid(
            a0_grid=parse_float_list(options["grid"], "grid"),
            samples=options["samples"],
            seed=options["seed"],
        )
        rows = []
        for index, a0 in enumerate(grid.a0_grid):
            ch = qutrit_channel(a0)
            mean, stderr = imperfect_fidelity_estimate(ch, grid.samples, child_seed(grid.seed, index))
            rows.append(
                [
                    a0,
                    imperfect_average_fidelity_closed(ch),
                    imperfect_average_fidelity_haar(ch),
                    mean,
                    stderr,
                ]
            )

        write_output(render_csv(HEADER, rows), options["out"], self.stdout)
        self.stderr.write(self.style.SUCCESS(f"Estimated {len(rows)} qutrit fidelities"))
