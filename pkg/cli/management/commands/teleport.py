"""
Teleport one qubit through a Schmidt channel and report every outcome

Usage:
    python manage.py teleport --coeffs 0,0.70710678,0.70710678 --qubit 0.6,0.8
    python manage.py teleport --coeffs 0.5,0.6123724,0.6123724 --qubit 0.6,0,0,0.8
"""

from channel.serializers import ChannelSchema
from channel.services.schmidt import new_channel
from cli.management.base import ExperimentCommand
from cli.serializers import TeleportReportSchema
from cli.services.arguments import parse_float_list, parse_qubit
from cli.services.csv_rows import write_output
from metrics.serializers import ResourceReportSchema
from metrics.services.resources import resource_report
from protocol.serializers import outcomes_to_schema
from protocol.services.teleport import run_teleportation


class Command(ExperimentCommand):
    help = "Teleport a qubit and print the outcomes and resource report as JSON"

    def add_arguments(self, parser):
        parser.add_argument(
            "--coeffs",
            type=str,
            required=True,
            help="Ascending Schmidt coefficients a_0,...,a_n",
        )
        parser.add_argument(
            "--qubit",
            type=str,
            default="1,0",
            help='Input qubit as "alpha,beta" or "re,im,re,im" (default: 1,0)',
        )
        self.add_out_argument(parser)

    def run(self, **options):
        ch = new_channel(parse_float_list(options["coeffs"], "coeffs"))
        alpha, beta = parse_qubit(options["qubit"])

        outcomes = run_teleportation(ch, alpha, beta)
        report = TeleportReportSchema(
            channel=ChannelSchema.from_channel(ch),
            outcomes=outcomes_to_schema(outcomes),
            resources=ResourceReportSchema.from_report(resource_report(ch)),
        )
        write_output(report.model_dump_json(indent=2) + "\n", options["out"], self.stdout)
        self.stderr.write(self.style.SUCCESS(f"Teleported through n={ch.n}: {len(outcomes)} outcomes"))
