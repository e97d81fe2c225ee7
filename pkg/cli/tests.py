import csv
import io
import os
import tempfile

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from channel.services.schmidt import qutrit_channel
from cli.serializers import TeleportReportSchema
from cli.services.arguments import child_seed, parse_float_list, parse_qubit
from cli.services.csv_rows import format_cell, render_csv
from corelin.exceptions import RejectedInput
from extensions.services.imperfect import imperfect_average_fidelity_haar


def run(command, **options):
    """Run a management command and return its stdout."""
    out = io.StringIO()
    call_command(command, stdout=out, stderr=io.StringIO(), **options)
    return out.getvalue()


def read_rows(text):
    rows = list(csv.DictReader(io.StringIO(text, newline="")))
    return [{key: value if key == "family" else float(value) for key, value in row.items()} for row in rows]


class ArgumentParsingTests(SimpleTestCase):
    """Test suite for command-line value parsing"""

    def test_float_list(self):
        """Test comma lists with blanks"""
        self.assertEqual(parse_float_list("0, 0.5,1,", "grid"), [0.0, 0.5, 1.0])

    def test_float_list_rejects_text(self):
        """Test non-numeric entries are rejected"""
        with self.assertRaises(RejectedInput):
            parse_float_list("0,abc", "grid")
        with self.assertRaises(RejectedInput):
            parse_float_list("0,nan", "grid")

    def test_qubit_forms(self):
        """Test real and complex qubit notation"""
        self.assertEqual(parse_qubit("0.6,0.8"), (0.6 + 0j, 0.8 + 0j))
        self.assertEqual(parse_qubit("0.6,0,0,0.8"), (0.6 + 0j, 0.8j))
        with self.assertRaises(RejectedInput):
            parse_qubit("1,0,0")

    def test_child_seeds_differ(self):
        """Test grid points receive distinct reproducible seeds"""
        self.assertEqual(child_seed(42, 3), child_seed(42, 3))
        self.assertNotEqual(child_seed(42, 3), child_seed(42, 4))


class CsvRowsTests(SimpleTestCase):
    """Test suite for CSV rendering"""

    def test_seventeen_digits(self):
        """Test floats keep 17 significant digits"""
        self.assertEqual(format_cell(0.1), "0.10000000000000001")
        self.assertEqual(float(format_cell(1 / 3)), 1 / 3)
        self.assertEqual(format_cell(7), "7")

    def test_line_endings(self):
        """Test header row and CRLF terminators"""
        text = render_csv(["a", "b"], [[1, 0.5]])
        self.assertEqual(text, "a,b\r\n1,0.5\r\n")


class TeleportCommandTests(SimpleTestCase):
    """Test suite for the teleport command"""

    def test_bell_limit_channel(self):
        """Test six outcomes with the a_0 = 0 probability pattern"""
        report = TeleportReportSchema.model_validate_json(
            run("teleport", coeffs="0,0.70710678,0.70710678", qubit="0.6,0.8")
        )
        self.assertEqual(len(report.outcomes), 6)
        expected = [1 / 8, 1 / 8, 1 / 4, 1 / 4, 1 / 8, 1 / 8]
        for outcome, p in zip(report.outcomes, expected):
            self.assertAlmostEqual(outcome.p, p, delta=1e-7)
            self.assertGreaterEqual(outcome.fidelity, 1 - 1e-9)
        self.assertEqual([o.sign for o in report.outcomes[:2]], ["+", "-"])
        self.assertAlmostEqual(report.resources.classical_bits, 2.5, delta=1e-6)

    def test_symmetric_channel(self):
        """Test the maximally entangled qutrit channel gives uniform outcomes"""
        report = TeleportReportSchema.model_validate_json(
            run("teleport", coeffs="0.57735,0.57735,0.57735", qubit="1,0")
        )
        for outcome in report.outcomes:
            self.assertAlmostEqual(outcome.p, 1 / 6, delta=1e-9)

    def test_complex_qubit(self):
        """Test re,im,re,im input teleports perfectly"""
        report = TeleportReportSchema.model_validate_json(
            run("teleport", coeffs="0.5,0.61237243569579458,0.61237243569579458", qubit="0.6,0,0,0.8")
        )
        self.assertEqual(report.channel.n, 2)
        self.assertTrue(all(o.fidelity >= 1 - 1e-9 for o in report.outcomes))

    def test_descending_coefficients_rejected(self):
        """Test exit 2 naming the ascending invariant"""
        with self.assertRaises(CommandError) as ctx:
            run("teleport", coeffs="0.9,0.3,0.3")
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertIn("not ascending", str(ctx.exception))

    def test_unnormalized_qubit_rejected(self):
        """Test exit 2 for an unnormalized qubit"""
        with self.assertRaises(CommandError) as ctx:
            run("teleport", coeffs="0,0.70710678,0.70710678", qubit="1,1")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unwritable_output(self):
        """Test exit 3 when --out cannot be opened"""
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(CommandError) as ctx:
                run("teleport", coeffs="0.57735,0.57735,0.57735", out=os.path.join(tmp, "missing", "r.json"))
        self.assertEqual(ctx.exception.returncode, 3)


class SweepCommandTests(SimpleTestCase):
    """Test suite for the sweep command"""

    def test_case1_grid(self):
        """Test 11 Case I rows with the known x = 0 values"""
        grid = ",".join(str(x / 10) for x in range(11))
        text = run("sweep", n=2, family="case1", grid=grid)
        self.assertTrue(text.startswith("n,family,param,channel_entropy,measurement_entanglement,classical_bits\r\n"))
        rows = read_rows(text)
        self.assertEqual(len(rows), 11)
        self.assertAlmostEqual(rows[0]["measurement_entanglement"], 0.9056, delta=5e-4)
        self.assertAlmostEqual(rows[0]["classical_bits"], 2.5, delta=1e-12)

    def test_random_envelope(self):
        """Test random channels stay in the region entropy >= 1, E12 <= 1"""
        rows = read_rows(run("sweep", n=4, family="random", samples=2000, seed=11))
        self.assertEqual([row["param"] for row in rows], list(range(2000)))
        for row in rows:
            self.assertGreaterEqual(row["channel_entropy"], 1 - 1e-12)
            self.assertLessEqual(row["measurement_entanglement"], 1 + 1e-12)

    def test_case2_entanglement_shape(self):
        """Test Case II E12 rises with entropy up to y = 0.9 and dips after y = 0.96"""
        grid = ",".join([str(y / 10) for y in range(10)] + ["0.96", "1"])
        rows = read_rows(run("sweep", n=6, family="case2", grid=grid))
        entropies = [row["channel_entropy"] for row in rows]
        values = [row["measurement_entanglement"] for row in rows]
        self.assertTrue(np.all(np.diff(entropies) > 0))
        self.assertTrue(np.all(np.diff(values[:10]) >= -1e-12))
        self.assertGreater(values[10], values[11] + 3e-4)
        self.assertTrue(np.all(np.diff([row["classical_bits"] for row in rows]) >= -1e-12))

    def test_vertex_family(self):
        """Test tau is written as an integer parameter"""
        text = run("sweep", n=3, family="vertex", grid="0,1,2")
        self.assertEqual([line.split(",")[2] for line in text.split("\r\n")[1:-1]], ["0", "1", "2"])

    def test_random_deterministic(self):
        """Test identical seeds give byte-identical CSV"""
        first = run("sweep", n=3, family="random", samples=50, seed=5)
        self.assertEqual(first, run("sweep", n=3, family="random", samples=50, seed=5))
        self.assertNotEqual(first, run("sweep", n=3, family="random", samples=50, seed=6))

    def test_out_file_matches_stdout(self):
        """Test --out writes the same bytes as stdout"""
        text = run("sweep", n=2, family="case1", grid="0,0.5")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "sweep.csv")
            self.assertEqual(run("sweep", n=2, family="case1", grid="0,0.5", out=path), "")
            with open(path, newline="", encoding="utf-8") as handle:
                self.assertEqual(handle.read(), text)

    def test_invalid_configs(self):
        """Test out-of-domain sweeps exit 2"""
        for options in (
            {"n": 2, "family": "case2", "grid": "0.5"},
            {"n": 2, "family": "case1", "grid": "1.5"},
            {"n": 2, "family": "vertex", "grid": "2"},
            {"n": 2, "family": "random"},
        ):
            with self.assertRaises(CommandError) as ctx:
                run("sweep", **options)
            self.assertEqual(ctx.exception.returncode, 2)


class NoiseCommandTests(SimpleTestCase):
    """Test suite for the noise command"""

    def setUp(self):
        """Run one small noise sweep"""
        self.a0_grid = [0.0, float(np.sqrt(1 / 7)), float(np.sqrt(0.2))]
        self.text = run("noise", grid=",".join(repr(a0) for a0 in self.a0_grid), samples=20000, seed=3)
        self.rows = read_rows(self.text)

    def test_printed_rows(self):
        """Test the a_0^2 = 0 and 1/7 rows of the printed-label curves"""
        self.assertEqual(len(self.rows), 3)
        self.assertEqual(self.rows[0]["f1_printed"], 0.0)
        self.assertAlmostEqual(self.rows[1]["f0_printed"], 1 / 3, delta=1e-12)
        for row in self.rows:
            self.assertEqual(row["standard_baseline"], 1 / 3)
            self.assertEqual(row["q"], 0.05)

    def test_fitted_columns_track_closed_forms(self):
        """Test fitted responses within 4 standard errors"""
        for row in self.rows:
            for j in (0, 1):
                tolerance = 4 * row[f"f{j}_stderr"] + 1e-12
                self.assertLessEqual(abs(row[f"f{j}_fitted"] - row[f"f{j}_closed"]), tolerance)

    def test_deterministic(self):
        """Test identical seeds give byte-identical CSV"""
        grid = ",".join(repr(a0) for a0 in self.a0_grid)
        self.assertEqual(self.text, run("noise", grid=grid, samples=20000, seed=3))

    def test_out_of_domain(self):
        """Test a_0 above 1/sqrt(3) and q = 0 exit 2"""
        for options in ({"grid": "0.7"}, {"grid": "0.2", "q_grid": "0"}):
            with self.assertRaises(CommandError) as ctx:
                run("noise", samples=100, **options)
            self.assertEqual(ctx.exception.returncode, 2)


class ImperfectCommandTests(SimpleTestCase):
    """Test suite for the imperfect command"""

    def test_curve(self):
        """Test endpoints and Monte Carlo agreement"""
        grid = [0.0, 0.3, float(1 / np.sqrt(3))]
        rows = read_rows(run("imperfect", grid=",".join(repr(a0) for a0 in grid), samples=20000, seed=8))
        self.assertAlmostEqual(rows[0]["F_closed"], 0.25, delta=1e-12)
        self.assertAlmostEqual(rows[2]["F_closed"], 1.0, delta=1e-12)
        for a0, row in zip(grid, rows):
            self.assertEqual(row["F_haar"], imperfect_average_fidelity_haar(qutrit_channel(a0)))
            self.assertLessEqual(abs(row["F_mc"] - row["F_haar"]), 4 * row["stderr"] + 1e-9)

    def test_deterministic(self):
        """Test identical seeds give byte-identical CSV"""
        options = {"grid": "0.1,0.4", "samples": 2000, "seed": 1}
        self.assertEqual(run("imperfect", **options), run("imperfect", **options))

    def test_out_of_domain(self):
        """Test negative a_0 exits 2"""
        with self.assertRaises(CommandError) as ctx:
            run("imperfect", grid="-0.1", samples=100)
        self.assertEqual(ctx.exception.returncode, 2)
