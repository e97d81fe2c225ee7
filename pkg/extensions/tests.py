import numpy as np
from django.test import SimpleTestCase
from pydantic import ValidationError

from channel.services.schmidt import qutrit_channel, vertex_channel
from corelin.exceptions import RejectedInput
from corelin.services.linalg import gram_matrix
from corelin.services.random_states import haar_states
from corelin.types import StateVec
from extensions.services.imperfect import (
    OMEGA,
    imperfect_average_fidelity_closed,
    imperfect_average_fidelity_haar,
    imperfect_basis,
    imperfect_collapsed_states,
    imperfect_corrections,
    imperfect_fidelity_estimate,
    imperfect_outcome_fidelities,
    imperfect_outcomes,
    imperfect_teleport_mc,
)
from extensions.services.phase_noise import (
    apply_phase_noise,
    fit_noise_response,
    fit_standard_noise_response,
    noise_fidelity_mc,
    noise_fidelity_samples,
    noise_response,
    standard_noise_fidelity_mc,
    standard_noise_response,
)
from extensions.types import NoiseSpec, QutritInput
from protocol.services.teleport import protocol_branches

THIRD = 1 / np.sqrt(3)
SQRT_HALF = np.sqrt(0.5)


def within_mc(test, estimate, stderr, expected):
    test.assertLessEqual(abs(estimate - expected), 4 * stderr + 1e-12)


class ImperfectBasisTests(SimpleTestCase):
    """Test suite for the nine-vector qutrit measurement"""

    def test_maximal_channel_gives_generalized_bell_states(self):
        """Test u_0 = I leaves sum_k omega^{jk}|k+m, k>/sqrt(3)"""
        vectors = imperfect_basis(vertex_channel(2, 0))
        expected = np.zeros(9, dtype=complex)
        for k in range(3):
            expected[3 * ((k + 1) % 3) + k] = OMEGA ** (2 * k) / np.sqrt(3)
        np.testing.assert_allclose(vectors[5].amplitudes, expected, atol=1e-15)

    def test_bell_limit_first_vector(self):
        """Test psi_00 = (|00> + (|11> - |02>)/sqrt(2) + |22>)/sqrt(3) at a_0 = 0"""
        expected = np.zeros(9)
        expected[[0, 8]] = 1
        expected[4] = SQRT_HALF
        expected[2] = -SQRT_HALF
        np.testing.assert_allclose(
            imperfect_basis(vertex_channel(2, 1))[0].amplitudes, expected / np.sqrt(3), atol=1e-15
        )

    def test_orthonormal_for_all_channels(self):
        """Test the Gram matrix is the identity across a_0"""
        for a0 in np.linspace(0, THIRD, 25):
            gram = gram_matrix(imperfect_basis(qutrit_channel(a0)))
            self.assertLess(np.max(np.abs(gram - np.eye(9))), 1e-10)

    def test_requires_qutrit_channel(self):
        """Test n != 2 is rejected"""
        with self.assertRaises(RejectedInput):
            imperfect_basis(vertex_channel(3, 0))


class ImperfectCollapseTests(SimpleTestCase):
    """Test suite for collapsed states and corrections"""

    def test_alpha_beta_branches_balanced(self):
        """Test alpha- and beta-branches are orthogonal with equal magnitude"""
        for a0 in np.linspace(0, THIRD, 15):
            for outcome in imperfect_outcomes(qutrit_channel(a0)):
                zero, one = outcome.branches[:, 0], outcome.branches[:, 1]
                self.assertLess(abs(np.vdot(zero, one)), 1e-12)
                self.assertAlmostEqual(np.linalg.norm(zero), np.linalg.norm(one), delta=1e-12)

    def test_collapsed_states_follow_branches(self):
        """Test projection equals the probe-branch superposition"""
        ch = qutrit_channel(0.35)
        amps = haar_states(np.random.default_rng(4), 1, 3)[0]
        for state, outcome in zip(imperfect_collapsed_states(ch, amps), imperfect_outcomes(ch)):
            np.testing.assert_allclose(state.amplitudes, outcome.branches @ amps, atol=1e-12)

    def test_qubit_inputs_arrive_perfectly(self):
        """Test gamma = 0 inputs give fidelity 1 on every outcome"""
        ch = qutrit_channel(0.25)
        for alpha, beta in haar_states(np.random.default_rng(9), 10, 2):
            results = imperfect_outcome_fidelities(ch, (alpha, beta, 0j))
            self.assertAlmostEqual(sum(p for p, _ in results), 1.0, delta=1e-10)
            for _, outcome_fidelity in results:
                self.assertGreaterEqual(outcome_fidelity, 1 - 1e-9)

    def test_corrections_unitary(self):
        """Test all nine corrections are unitary"""
        for correction in imperfect_corrections(qutrit_channel(0.1)):
            self.assertTrue(correction.is_unitary)

    def test_unnormalized_input_rejected(self):
        """Test qutrit normalization is enforced"""
        with self.assertRaises(RejectedInput):
            imperfect_collapsed_states(qutrit_channel(0.2), (1 + 0j, 1 + 0j, 0j))


class ImperfectFidelityTests(SimpleTestCase):
    """Test suite for average qutrit fidelity"""

    def test_reference_endpoints(self):
        """Test the reference curve rises from 1/4 to 1"""
        self.assertAlmostEqual(imperfect_average_fidelity_closed(qutrit_channel(0)), 0.25, delta=1e-12)
        self.assertAlmostEqual(
            imperfect_average_fidelity_closed(qutrit_channel(THIRD)), 1.0, delta=1e-12
        )

    def test_haar_endpoints(self):
        """Test the Haar average rises from 7/12 to 1"""
        self.assertAlmostEqual(imperfect_average_fidelity_haar(qutrit_channel(0)), 7 / 12, delta=1e-12)
        self.assertAlmostEqual(imperfect_average_fidelity_haar(qutrit_channel(THIRD)), 1.0, delta=1e-12)

    def test_monotone_in_a0(self):
        """Test both curves increase on 1000 points"""
        grid = np.linspace(0, THIRD, 1000)
        for curve in (imperfect_average_fidelity_closed, imperfect_average_fidelity_haar):
            values = [curve(qutrit_channel(a0)) for a0 in grid]
            self.assertTrue(np.all(np.diff(values) > -1e-12))

    def test_monte_carlo_matches_haar_average(self):
        """Test 1e5-sample estimates at five channels"""
        for a0 in np.linspace(0, THIRD, 5):
            ch = qutrit_channel(a0)
            mean, stderr = imperfect_fidelity_estimate(ch, 100000, 42)
            self.assertAlmostEqual(mean, imperfect_average_fidelity_haar(ch), delta=5e-3)
            self.assertLess(stderr, 2e-3)

    def test_monte_carlo_at_maximal_channel(self):
        """Test the maximally entangled channel teleports qutrits perfectly"""
        self.assertAlmostEqual(imperfect_teleport_mc(qutrit_channel(THIRD), 100000, 7), 1.0, delta=5e-3)

    def test_monte_carlo_reproducible(self):
        """Test a fixed seed reproduces the estimate"""
        ch = qutrit_channel(0.4)
        self.assertEqual(imperfect_teleport_mc(ch, 5000, 3), imperfect_teleport_mc(ch, 5000, 3))


class PhaseNoiseTests(SimpleTestCase):
    """Test suite for the dephasing channel"""

    def test_noiseless_identity(self):
        """Test q = 0 leaves the state unchanged"""
        state = StateVec(haar_states(np.random.default_rng(1), 1, 3)[0])
        rho = apply_phase_noise(state, NoiseSpec(q=(0, 0, 0)))
        np.testing.assert_allclose(rho, np.outer(state.amplitudes, state.amplitudes.conj()))

    def test_full_dephasing_of_one_ket(self):
        """Test q_1 = 1 removes the 0-1 coherence"""
        rho = apply_phase_noise(StateVec([SQRT_HALF, SQRT_HALF, 0]), NoiseSpec(q=(0, 1, 0)))
        np.testing.assert_allclose(rho, np.diag([0.5, 0.5, 0]), atol=1e-15)

    def test_trace_and_positivity(self):
        """Test the map preserves trace and positivity"""
        rng = np.random.default_rng(2)
        for amplitudes, q in zip(haar_states(rng, 50, 3), rng.uniform(0, 1, (50, 3))):
            rho = apply_phase_noise(StateVec(amplitudes), NoiseSpec(q=tuple(q)))
            self.assertAlmostEqual(np.trace(rho).real, 1.0, delta=1e-12)
            self.assertGreaterEqual(np.min(np.linalg.eigvalsh(rho)), -1e-12)

    def test_idempotent_at_full_strength(self):
        """Test applying q = 1 twice equals applying it once"""
        noise = NoiseSpec(q=(1, 0, 0))
        once = apply_phase_noise(StateVec(haar_states(np.random.default_rng(3), 1, 3)[0]), noise)
        np.testing.assert_allclose(apply_phase_noise(once, noise), once, atol=1e-15)

    def test_malformed_density_rejected(self):
        """Test non-unit-trace input is rejected"""
        with self.assertRaises(RejectedInput):
            apply_phase_noise(np.eye(3), NoiseSpec(q=(0.1, 0, 0)))

    def test_strength_out_of_range(self):
        """Test q outside [0, 1] fails validation"""
        with self.assertRaises(ValidationError):
            NoiseSpec(q=(0, 1.5, 0))

    def test_qutrit_input_validation(self):
        """Test unnormalized qutrit input fails validation"""
        with self.assertRaises(ValidationError):
            QutritInput(amps=(1 + 0j, 1 + 0j, 0j))


class NoiseResponseTests(SimpleTestCase):
    """Test suite for linear fidelity responses"""

    def test_printed_crossing(self):
        """Test the printed f_0 meets the Bell baseline at a_0^2 = 1/7"""
        ch = qutrit_channel(np.sqrt(1 / 7))
        self.assertAlmostEqual(noise_response(ch, 0, printed_labels=True), 1 / 3, delta=1e-12)

    def test_printed_values(self):
        """Test printed-label values at a_0 = 0 and a_0 = 1/sqrt(3)"""
        self.assertAlmostEqual(noise_response(qutrit_channel(0), 1, printed_labels=True), 0.0)
        for j in (0, 1):
            value = noise_response(qutrit_channel(THIRD), j, printed_labels=True)
            self.assertAlmostEqual(value, 2 / 9, delta=1e-12)

    def test_unpopulated_ket_has_no_response(self):
        """Test ket 0 is immune when a_0 = 0"""
        self.assertEqual(noise_response(qutrit_channel(0), 0), 0.0)
        self.assertAlmostEqual(noise_response(qutrit_channel(0), 1), 1 / 3, delta=1e-12)
        self.assertEqual(noise_response(qutrit_channel(0.3), 1), noise_response(qutrit_channel(0.3), 2))

    def test_more_robust_than_bell_scheme(self):
        """Test the populated-ket response stays below 1/3"""
        for t in np.linspace(0, 1 / 3, 50):
            ch = qutrit_channel(np.sqrt(t))
            self.assertLess(noise_response(ch, 1, printed_labels=True), 1 / 3)

    def test_standard_responses(self):
        """Test the Bell-scheme responses"""
        self.assertEqual(standard_noise_response(0), 1 / 3)
        self.assertEqual(standard_noise_response(1), 1 / 3)
        self.assertEqual(standard_noise_response(2), 0.0)


class NoiseMonteCarloTests(SimpleTestCase):
    """Test suite for noisy teleportation estimates"""

    def test_noiseless_fidelity(self):
        """Test q = 0 gives fidelity 1"""
        value = noise_fidelity_mc(qutrit_channel(0.3), NoiseSpec(q=(0, 0, 0)), 2000, 1)
        self.assertAlmostEqual(value, 1.0, delta=1e-9)

    def test_single_ket_slope(self):
        """Test q_1 = 0.1 at a_0 = 0.3 against the linear response"""
        ch = qutrit_channel(0.3)
        value = noise_fidelity_mc(ch, NoiseSpec.single(1, 0.1), 100000, 42)
        self.assertAlmostEqual(value, 1 - 0.1 * noise_response(ch, 1), delta=5e-3)

    def test_fitted_responses(self):
        """Test fitted f_0, f_1 at q = 0.05 across a_0^2"""
        for index, t in enumerate((0.0, 0.1, 0.2, 1 / 3)):
            ch = qutrit_channel(np.sqrt(t))
            for j in (0, 1):
                fitted, stderr = fit_noise_response(ch, j, 0.05, 100000, 100 + index)
                within_mc(self, fitted, stderr, noise_response(ch, j))

    def test_standard_baseline(self):
        """Test the Bell scheme loses q/3 under ket-0 noise"""
        mean, _ = standard_noise_fidelity_mc(NoiseSpec.single(0, 0.1), 100000, 42)
        self.assertAlmostEqual(mean, 1 - 0.1 / 3, delta=5e-3)
        for j in (0, 1, 2):
            fitted, stderr = fit_standard_noise_response(j, 0.05, 100000, 5)
            within_mc(self, fitted, stderr, standard_noise_response(j))

    def test_samples_match_density_route(self):
        """Test per-sample fidelities against the dephased density operator"""
        ch = qutrit_channel(0.3)
        noise = NoiseSpec(q=(0.2, 0.1, 0.05))
        branches = protocol_branches(ch)
        qubits = haar_states(np.random.default_rng(12), 5, 2)
        expected = []
        for alpha, beta in qubits:
            total = 0.0
            for branch in branches:
                if branch.vanished:
                    continue
                collapsed = StateVec(alpha * branch.zero_branch + beta * branch.one_branch)
                ideal = collapsed.normalized()
                rho = apply_phase_noise(ideal, noise)
                overlap = np.vdot(ideal.amplitudes, rho @ ideal.amplitudes).real
                total += collapsed.norm**2 * overlap
            expected.append(total)
        np.testing.assert_allclose(noise_fidelity_samples(branches, noise, qubits), expected, atol=1e-12)
