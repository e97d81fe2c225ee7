"""
Fidelity responses of the qutrit scheme to single-ket dephasing

Usage:
    python manage.py noise --grid 0,0.2,0.3779645,0.5 --q-grid 0.05 --samples 100000
"""

from channel.services.schmidt import qutrit_channel
from cli.management.base import ExperimentCommand
from cli.services.arguments import child_seed, parse_float_list
from cli.services.csv_rows import render_csv, write_output
from cli.types import ImperfectGrid
from corelin.exceptions import RejectedInput
from extensions.services.phase_noise import fit_noise_response, noise_response, standard_noise_response

HEADER = [
    "a0_sq",
    "q",
    "f0_closed",
    "f1_closed",
    "f0_printed",
    "f1_printed",
    "f0_fitted",
    "f1_fitted",
    "f0_stderr",
    "f1_stderr",
    "standard_baseline",
]


class Command(ExperimentCommand):
    help = "Closed-form and Monte Carlo fitted responses f_0, f_1 against a_0^2"

    def add_arguments(self, parser):
        parser.add_argument(
            "--grid",
            type=str,
            required=True,
            help="Comma-separated a_0 values in [0, 1/sqrt(3)]",
        )
        parser.add_argument(
            "--q-grid",
            type=str,
            default="0.05",
            help="Comma-separated dephasing strengths in (0, 1] (default: 0.05)",
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
        strengths = parse_float_list(options["q_grid"], "q-grid")
        if any(not 0.0 < q <= 1.0 for q in strengths):
            raise RejectedInput("dephasing strengths must lie in (0, 1]")

        rows = []
        for a0 in grid.a0_grid:
            ch = qutrit_channel(a0)
            closed = [noise_response(ch, j) for j in (0, 1)]
            printed = [noise_response(ch, j, printed_labels=True) for j in (0, 1)]
            for q in strengths:
                seed = child_seed(grid.seed, len(rows))
                f0, se0 = fit_noise_response(ch, 0, q, grid.samples, seed)
                f1, se1 = fit_noise_response(ch, 1, q, grid.samples, seed)
                rows.append(
                    [a0**2, q, *closed, *printed, f0, f1, se0, se1, standard_noise_response(0)]
                )
                self.stderr.write(f"a0^2={a0**2:.4f} q={q}: f0={f0:.4f} f1={f1:.4f}")

        write_output(render_csv(HEADER, rows), options["out"], self.stdout)
        self.stderr.write(self.style.SUCCESS(f"Fitted {len(rows)} noise rows"))
