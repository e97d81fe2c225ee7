import numpy as np
from django.test import SimpleTestCase
from scipy.optimize import minimize_scalar
from scipy.stats import entropy

from channel.services.schmidt import (
    case1_channel,
    case2_channel,
    channel_entropy,
    sample_random_channels,
    staircase_channel,
    vertex_channel,
)
from corelin.exceptions import RejectedInput
from corelin.types import StateVec
from metrics.serializers import ResourceReportSchema
from metrics.services.cases import (
    case1_metrics,
    case2_metrics,
    limit_success_probability,
    min_single_measurement_entanglement,
)
from metrics.services.resources import (
    basis_concurrences_closed,
    basis_concurrences_oracle,
    binary_entropy,
    classical_bits,
    concurrence_oracle,
    entropy_from_concurrence,
    measurement_entanglement,
    resource_report,
)
from protocol.services.basis import build_basis_cascade
from protocol.services.oracle import standard_bell_teleport
from protocol.services.teleport import outcome_probabilities

SQRT_HALF = np.sqrt(0.5)
H_3_4 = 0.8112781244591328
CASE1_FLOOR = 0.5 * H_3_4 + 0.5
CASE2_FLOOR = (
    binary_entropy(15 / 16) / 8 + H_3_4 / 4 + binary_entropy(7 / 16) / 8 + 0.5
)


def random_channel_set():
    return [ch for n in range(2, 7) for ch in sample_random_channels(n, 40, 1000 + n)]


def assert_nondecreasing(test, reports, field):
    ordered = sorted(reports, key=lambda r: r.channel_entropy)
    for earlier, later in zip(ordered, ordered[1:]):
        test.assertGreaterEqual(getattr(later, field), getattr(earlier, field) - 1e-9)


class ConcurrenceTests(SimpleTestCase):
    """Test suite for concurrences of measurement vectors"""

    def test_product_state(self):
        """Test |0>|5> has zero concurrence"""
        self.assertAlmostEqual(concurrence_oracle(StateVec.basis(5, 12)), 0.0, places=7)

    def test_bell_pair(self):
        """Test (|0a> + |1b>)/sqrt(2) has unit concurrence"""
        amplitudes = np.zeros(8)
        amplitudes[[1, 4 + 3]] = SQRT_HALF
        self.assertAlmostEqual(concurrence_oracle(StateVec(amplitudes)), 1.0, places=12)

    def test_case1_partial_pair(self):
        """Test psi_0 at Case I n=2 x=0 has concurrence sqrt(3)/2"""
        basis = build_basis_cascade(case1_channel(2, 0))
        self.assertAlmostEqual(concurrence_oracle(basis.vectors[0]), np.sqrt(3) / 2, places=12)

    def test_odd_dimension_rejected(self):
        """Test odd dimensions are rejected"""
        with self.assertRaises(RejectedInput):
            concurrence_oracle(StateVec.basis(0, 5))

    def test_case2_closed_forms(self):
        """Test Case II n=3 concurrences"""
        y = 0.7
        values = basis_concurrences_closed(case2_channel(3, y))
        self.assertAlmostEqual(values[0], np.sqrt(1 - (1 + y**2) ** 2 / 16), places=12)
        self.assertAlmostEqual(values[2], 0.5 * np.sqrt(3 + 2 * y**2 - y**4), places=12)
        self.assertAlmostEqual(values[6], 0.25 * np.sqrt(7 + 6 * y**2 - y**4), places=12)
        self.assertEqual(values[0], values[1])

    def test_maximal_channel(self):
        """Test every vector is maximally entangled for equal coefficients"""
        np.testing.assert_allclose(basis_concurrences_closed(vertex_channel(4, 0)), 1.0)

    def test_closed_matches_oracle(self):
        """Test closed forms against explicit vectors on 200 channels"""
        for ch in random_channel_set():
            closed = basis_concurrences_closed(ch)
            oracle = basis_concurrences_oracle(ch)
            self.assertLess(np.max(np.abs(np.subtract(closed, oracle))), 1e-10)

    def test_case_curves_match_oracle(self):
        """Test printed Case I/II concurrences on their curves"""
        for t in np.linspace(0.01, 1, 12):
            for n in (3, 5):
                for ch, report in (
                    (case1_channel(n, t), case1_metrics(n, t)),
                    (case2_channel(n, t), case2_metrics(n, t)),
                ):
                    oracle = basis_concurrences_oracle(ch)
                    np.testing.assert_allclose(report.concurrences, oracle, atol=1e-10)


class EntropyTests(SimpleTestCase):
    """Test suite for H(t) and entropy from concurrence"""

    def test_endpoints(self):
        """Test C = 1 and C = 0"""
        self.assertAlmostEqual(entropy_from_concurrence(1.0), 1.0, places=12)
        self.assertEqual(entropy_from_concurrence(0.0), 0.0)

    def test_three_quarters(self):
        """Test H(3/4)"""
        self.assertAlmostEqual(entropy_from_concurrence(np.sqrt(0.75)), H_3_4, places=12)

    def test_out_of_range(self):
        """Test concurrence above one is rejected"""
        with self.assertRaises(RejectedInput):
            entropy_from_concurrence(1.5)


class MeasurementEntanglementTests(SimpleTestCase):
    """Test suite for E12 and H12"""

    def test_maximal_channel(self):
        """Test E12 = 1 for maximally entangled channels"""
        for n in range(2, 7):
            self.assertAlmostEqual(measurement_entanglement(vertex_channel(n, 0)), 1.0, places=12)

    def test_case1_floor(self):
        """Test E12 -> H(3/4)/2 + 1/2 for Case I n=2"""
        value = measurement_entanglement(case1_channel(2, 1e-8))
        self.assertAlmostEqual(value, 0.9056, delta=1e-3)
        self.assertAlmostEqual(value, CASE1_FLOOR, delta=1e-6)

    def test_case2_floor(self):
        """Test E12 -> 0.890 for Case II, n = 3..6"""
        for n in range(3, 7):
            value = measurement_entanglement(case2_channel(n, 1e-8))
            self.assertAlmostEqual(value, 0.8901, delta=1e-3)
            self.assertAlmostEqual(value, CASE2_FLOOR, delta=1e-6)

    def test_classical_bit_floor(self):
        """Test H12 -> 5/2 for Case I at any n"""
        for n in range(2, 7):
            self.assertAlmostEqual(classical_bits(case1_channel(n, 1e-8)), 2.5, delta=1e-3)

    def test_classical_bits_examples(self):
        """Test six equiprobable outcomes and the Bell scheme"""
        self.assertAlmostEqual(classical_bits(vertex_channel(2, 0)), np.log2(6), places=12)
        bell = [o.probability for o in standard_bell_teleport(1, 0)]
        self.assertAlmostEqual(float(entropy(bell, base=2)), 2.0, places=12)

    def test_oracle_path_agrees(self):
        """Test E12 from explicit vectors equals the closed-form value"""
        for ch in sample_random_channels(4, 20, 17):
            self.assertAlmostEqual(
                measurement_entanglement(ch), measurement_entanglement(ch, oracle=True), delta=1e-9
            )

    def test_no_entanglement_matching(self):
        """Test E12 <= 1 <= E for random channels, strictly below 1 off the maximum"""
        for ch in random_channel_set():
            report = resource_report(ch)
            self.assertLessEqual(report.measurement_entanglement, 1 + 1e-9)
            self.assertGreaterEqual(report.channel_entropy, 1 - 1e-9)
            if np.ptp(ch.coeffs) > 1e-3:
                self.assertLess(report.measurement_entanglement, 1 - 1e-6)
            self.assertLessEqual(report.classical_bits, np.log2(2 * (ch.n + 1)) + 1e-12)


class CaseMetricsTests(SimpleTestCase):
    """Test suite for Case I and Case II closed-form curves"""

    def test_case1_endpoints(self):
        """Test Case I at x=0 and x=1"""
        low = case1_metrics(2, 0)
        self.assertAlmostEqual(low.measurement_entanglement, CASE1_FLOOR, places=12)
        self.assertAlmostEqual(low.classical_bits, 2.5, places=12)
        high = case1_metrics(4, 1)
        self.assertAlmostEqual(high.measurement_entanglement, 1.0, places=12)
        self.assertAlmostEqual(high.classical_bits, np.log2(10), places=12)

    def test_case2_zero_probabilities(self):
        """Test Case II n=3 at y=0 has probabilities (1/16, 1/8, 1/4, 1/16) per sign"""
        report = case2_metrics(3, 0)
        expected = np.repeat([1 / 16, 1 / 8, 1 / 4, 1 / 16], 2)
        np.testing.assert_allclose(report.probabilities, expected, atol=1e-15)
        self.assertAlmostEqual(report.classical_bits, 2.75, places=12)

    def test_case2_matches_vertex_at_one(self):
        """Test Case II at y=1 equals the vertex channel pipeline"""
        for n in (3, 5):
            report = case2_metrics(n, 1)
            pipeline = resource_report(vertex_channel(n, n - 2))
            self.assertAlmostEqual(
                report.measurement_entanglement, pipeline.measurement_entanglement, delta=1e-10
            )
            self.assertAlmostEqual(report.classical_bits, pipeline.classical_bits, delta=1e-10)

    def test_closed_forms_match_pipeline(self):
        """Test Case I/II curves against the general pipeline"""
        points = [(case1_metrics, case1_channel, 3, 0.5), (case2_metrics, case2_channel, 5, 0.3)]
        for grid in (np.linspace(0, 1, 11), np.linspace(0.05, 1, 11)):
            for n in (2, 3, 6):
                points += [(case1_metrics, case1_channel, n, x) for x in grid]
            for n in (3, 4, 6):
                points += [(case2_metrics, case2_channel, n, y) for y in grid[1:]]
        for closed, family, n, t in points:
            report = closed(n, t)
            pipeline = resource_report(family(n, t))
            self.assertAlmostEqual(
                report.measurement_entanglement, pipeline.measurement_entanglement, delta=1e-10
            )
            self.assertAlmostEqual(report.classical_bits, pipeline.classical_bits, delta=1e-10)
            np.testing.assert_allclose(report.probabilities, pipeline.probabilities, atol=1e-12)

    def test_case1_curves_are_monotone(self):
        """Test E12 and H12 grow with channel entropy along Case I"""
        grid = np.linspace(0, 1, 100)
        for n in (2, 3, 4, 6):
            reports = [case1_metrics(n, x) for x in grid]
            assert_nondecreasing(self, reports, "measurement_entanglement")
            assert_nondecreasing(self, reports, "classical_bits")

    def test_case2_classical_bits_monotone(self):
        """Test H12 grows with channel entropy along Case II"""
        grid = np.linspace(0, 1, 100)
        for n in (3, 4, 6):
            assert_nondecreasing(self, [case2_metrics(n, y) for y in grid], "classical_bits")

    def test_case2_entanglement_peaks_inside(self):
        """Test Case II E12 rises to an interior maximum near y = 0.96, then dips"""
        for n in (3, 4, 6):
            peak = minimize_scalar(
                lambda y: -case2_metrics(n, y).measurement_entanglement,
                bounds=(0.5, 1.0),
                method="bounded",
                options={"xatol": 1e-10},
            )
            self.assertGreater(peak.x, 0.93)
            self.assertLess(peak.x, 0.99)
            self.assertAlmostEqual(-peak.fun, 0.93745, delta=2e-5)

            at_one = case2_metrics(n, 1.0).measurement_entanglement
            self.assertAlmostEqual(at_one, 0.93709271, delta=1e-7)
            self.assertGreater(-peak.fun - at_one, 3e-4)

            rising = [case2_metrics(n, y) for y in np.linspace(0, 0.9, 91)]
            assert_nondecreasing(self, rising, "measurement_entanglement")
            falling = [case2_metrics(n, y).measurement_entanglement for y in np.linspace(peak.x, 1.0, 20)]
            self.assertTrue(np.all(np.diff(falling) <= 1e-12))


class LimitTests(SimpleTestCase):
    """Test suite for the staircase limits"""

    def test_single_measurement_values(self):
        """Test the limit entanglement at d=3 and d=6"""
        self.assertAlmostEqual(min_single_measurement_entanglement(3), H_3_4, places=12)
        self.assertAlmostEqual(
            min_single_measurement_entanglement(6), binary_entropy(0.12109375), places=15
        )

    def test_single_measurement_limit_from_pipeline(self):
        """Test the psi_{n+-} entanglement of a steep staircase"""
        for d in range(3, 8):
            ch = staircase_channel(d - 1, 1e-4)
            top = entropy_from_concurrence(basis_concurrences_closed(ch)[-1])
            self.assertAlmostEqual(top, min_single_measurement_entanglement(d), delta=1e-3)

    def test_success_probability_limit(self):
        """Test P_{n+} + P_{n-} at ratio 1e-6 for d = 3..6"""
        for d in range(3, 7):
            probabilities = outcome_probabilities(staircase_channel(d - 1, 1e-6))
            self.assertAlmostEqual(
                probabilities[-2] + probabilities[-1], limit_success_probability(d), delta=1e-4
            )

    def test_small_dimension_rejected(self):
        """Test d < 3 is rejected"""
        with self.assertRaises(RejectedInput):
            min_single_measurement_entanglement(2)


class ScatterEnvelopeTests(SimpleTestCase):
    """Test suite for the random-channel scatter envelope"""

    def test_ten_thousand_channels(self):
        """Test E >= 1 and E12 <= 1 for 10000 channels at n = 2, 4, 6"""
        for n in (2, 4, 6):
            for ch in sample_random_channels(n, 10000, 500 + n):
                self.assertGreaterEqual(channel_entropy(ch), 1 - 1e-9)
                self.assertLessEqual(measurement_entanglement(ch), 1 + 1e-9)


class ResourceSerializerTests(SimpleTestCase):
    """Test suite for resource report JSON"""

    def test_flat_object(self):
        """Test report fields are serialized flat"""
        payload = ResourceReportSchema.from_report(resource_report(vertex_channel(2, 1))).model_dump()
        self.assertEqual(
            set(payload),
            {"channel_entropy", "measurement_entanglement", "classical_bits", "concurrences"},
        )
        self.assertEqual(len(payload["concurrences"]), 6)
