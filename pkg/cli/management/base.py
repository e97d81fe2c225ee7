"""
Shared plumbing for the experiment subcommands: common flags and the mapping
from library failures to exit codes (2 for rejected input, 3 for I/O).
"""

import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from corelin.exceptions import RejectedInput

logger = logging.getLogger(__name__)

INPUT_ERROR = 2
IO_ERROR = 3


class ExperimentCommand(BaseCommand):
    """Base for subcommands that emit JSON or CSV on stdout or to --out"""

    # Configuration - Use settings with fallbacks
    DEFAULT_SEED = getattr(settings, "TELEPORT_DEFAULT_SEED", 42)
    DEFAULT_SAMPLES = getattr(settings, "TELEPORT_MC_SAMPLES", 100000)

    def add_seed_argument(self, parser):
        parser.add_argument(
            "--seed",
            type=int,
            default=self.DEFAULT_SEED,
            help=f"Master random seed (default: {self.DEFAULT_SEED})",
        )

    def add_samples_argument(self, parser):
        parser.add_argument(
            "--samples",
            type=int,
            default=self.DEFAULT_SAMPLES,
            help=f"Monte Carlo samples per grid point (default: {self.DEFAULT_SAMPLES})",
        )

    def add_out_argument(self, parser):
        parser.add_argument(
            "--out",
            type=str,
            default=None,
            help="Output file (default: stdout)",
        )

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except ValidationError as e:
            raise CommandError(f"invalid arguments: {e}", returncode=INPUT_ERROR) from e
        except RejectedInput as e:
            raise CommandError(str(e), returncode=INPUT_ERROR) from e
        except OSError as e:
            raise CommandError(f"could not write output: {e}", returncode=IO_ERROR) from e

    def run(self, **options):
        raise NotImplementedError("subclasses of ExperimentCommand must provide run()")
