import numpy as np
from django.test import SimpleTestCase

from channel.services.schmidt import (
    case2_channel,
    channel_state,
    qutrit_channel,
    sample_random_channel,
    sample_random_channels,
    staircase_channel,
    vertex_channel,
)
from corelin.exceptions import RejectedInput
from corelin.services.linalg import project_sender, tensor
from corelin.services.random_states import haar_states
from corelin.types import StateVec
from protocol.serializers import outcomes_to_schema
from protocol.services.basis import (
    basis_index,
    build_basis_cascade,
    build_basis_closed_form,
    cascade_params,
    extreme_basis,
)
from protocol.services.oracle import oracle_teleport, standard_bell_teleport
from protocol.services.teleport import (
    bob_corrections,
    collapsed_states,
    outcome_probabilities,
    protocol_branches,
    run_teleportation,
    teleport_with_branches,
)
from protocol.types import OutcomeLabel

SQRT_HALF = np.sqrt(0.5)
THIRD = 1 / np.sqrt(3)


def random_channel_set():
    """200 channels spread over n = 2..6."""
    return [ch for n in range(2, 7) for ch in sample_random_channels(n, 40, 1000 + n)]


class CascadeParamsTests(SimpleTestCase):
    """Test suite for rotation parameters"""

    def test_maximally_entangled(self):
        """Test all rotations are trivial for equal coefficients"""
        params = cascade_params(vertex_channel(2, 0))
        np.testing.assert_allclose(params.c, [1, 1])
        np.testing.assert_allclose(params.s, [0, 0])

    def test_bell_like_qutrit(self):
        """Test a_0 = 0 gives c_0 = s_0 = 1/sqrt(2)"""
        params = cascade_params(vertex_channel(2, 1))
        np.testing.assert_allclose(params.c, [SQRT_HALF, 1])
        np.testing.assert_allclose(params.s, [SQRT_HALF, 0])

    def test_case2_parameters(self):
        """Test Case II at n=3 gives c_0 = s_0 = 1/sqrt(2)"""
        y = 0.4
        params = cascade_params(case2_channel(3, y))
        self.assertAlmostEqual(params.c[0], SQRT_HALF, places=15)
        self.assertAlmostEqual(params.s[0], SQRT_HALF, places=15)
        self.assertAlmostEqual(params.c[1], np.sqrt((1 + y**2) / 2), places=14)

    def test_zero_neighbour_convention(self):
        """Test c_k = 1, s_k = 0 when a_{k+1} = 0"""
        params = cascade_params(vertex_channel(4, 3))
        np.testing.assert_allclose(params.c[:2], [1, 1])
        np.testing.assert_allclose(params.s[:2], [0, 0])

    def test_unit_circle(self):
        """Test c^2 + s^2 = 1 and the last pair is (1, 0)"""
        for ch in sample_random_channels(6, 20, 3):
            params = cascade_params(ch)
            np.testing.assert_allclose(params.c**2 + params.s**2, 1, atol=1e-12)
            self.assertEqual((params.c[-1], params.s[-1]), (1.0, 0.0))


class ExtremeBasisTests(SimpleTestCase):
    """Test suite for translation-strategy bases"""

    def test_qutrit_tau_zero(self):
        """Test the six Bell-type states of the maximally entangled qutrit"""
        basis = extreme_basis(2, 0)
        expected = {
            (0, "+"): [(0, 0, 1), (1, 1, 1)],
            (1, "-"): [(0, 1, 1), (1, 2, -1)],
            (2, "+"): [(0, 2, 1), (1, 0, 1)],
        }
        for (j, sign), terms in expected.items():
            amplitudes = np.zeros(6)
            for q, k, weight in terms:
                amplitudes[basis_index(q, k, 2)] = weight * SQRT_HALF
            np.testing.assert_allclose(basis.vector(j, sign).amplitudes, amplitudes)

    def test_qutrit_tau_one_vanished_kets(self):
        """Test tau=1 contains |00> and |10> as vanished vectors"""
        basis = extreme_basis(2, 1)
        np.testing.assert_allclose(basis.vector(0, "+").amplitudes, np.eye(6)[0])
        np.testing.assert_allclose(basis.vector(0, "-").amplitudes, np.eye(6)[3])
        pair = basis.vector(2, "-").amplitudes
        self.assertAlmostEqual(pair[basis_index(1, 1, 2)].real, -SQRT_HALF)

    def test_gram_for_all_vertices(self):
        """Test every translation-strategy basis is orthonormal"""
        for n in range(2, 7):
            for tau in range(n):
                self.assertTrue(extreme_basis(n, tau).is_orthonormal)

    def test_tau_out_of_range(self):
        """Test tau = n is rejected"""
        with self.assertRaises(RejectedInput):
            extreme_basis(3, 3)


class BasisBuilderTests(SimpleTestCase):
    """Test suite for cascade and closed-form bases"""

    def test_cascade_trivial_for_maximal_channel(self):
        """Test the cascade leaves the tau=0 basis unchanged"""
        for n in (2, 4):
            cascade = build_basis_cascade(vertex_channel(n, 0)).matrix
            np.testing.assert_allclose(cascade, extreme_basis(n, 0).matrix, atol=1e-15)

    def test_cascade_qutrit_bell_limit(self):
        """Test psi_{2+-} = ((c|02> + s|11>) +- |10>)/sqrt(2) with c = s = 1/sqrt(2)"""
        basis = build_basis_cascade(vertex_channel(2, 1))
        for sign, parity in (("+", 1), ("-", -1)):
            amplitudes = np.zeros(6)
            amplitudes[basis_index(0, 2, 2)] = 0.5
            amplitudes[basis_index(1, 1, 2)] = 0.5
            amplitudes[basis_index(1, 0, 2)] = parity * SQRT_HALF
            np.testing.assert_allclose(basis.vector(2, sign).amplitudes, amplitudes, atol=1e-15)

    def test_closed_form_matches_cascade(self):
        """Test both builders agree entrywise and are orthonormal on 200 channels"""
        for ch in random_channel_set():
            cascade = build_basis_cascade(ch)
            closed = build_basis_closed_form(ch)
            self.assertLess(np.max(np.abs(cascade.matrix - closed.matrix)), 1e-12)
            self.assertTrue(cascade.is_orthonormal)
            self.assertTrue(closed.is_orthonormal)

    def test_closed_form_qutrit(self):
        """Test the qutrit closed form with a_0 = 0.2"""
        basis = build_basis_closed_form(qutrit_channel(0.2))
        params = cascade_params(qutrit_channel(0.2))
        c, s = params.c[0], params.s[0]
        amplitudes = np.zeros(6)
        amplitudes[basis_index(0, 0, 2)] = SQRT_HALF
        amplitudes[basis_index(1, 1, 2)] = -SQRT_HALF * c
        amplitudes[basis_index(0, 2, 2)] = SQRT_HALF * s
        np.testing.assert_allclose(basis.vector(0, "-").amplitudes, amplitudes, atol=1e-15)

    def test_bell_limit_reduces_to_translation_pair(self):
        """Test vertex(n, n-1) keeps the Bell pair and kills low outcomes"""
        for n in range(3, 7):
            ch = vertex_channel(n, n - 1)
            closed = build_basis_closed_form(ch)
            extreme = extreme_basis(n, n - 1)
            for sign in ("+", "-"):
                np.testing.assert_allclose(
                    closed.vector(n - 1, sign).amplitudes,
                    extreme.vector(n - 1, sign).amplitudes,
                    atol=1e-15,
                )
            probabilities = outcome_probabilities(ch)
            np.testing.assert_array_equal(probabilities[: 2 * (n - 2)], 0.0)


class CollapsedStateTests(SimpleTestCase):
    """Test suite for closed-form collapsed states"""

    def test_qutrit_middle_outcome(self):
        """Test phi_{1+-} = (alpha a_1|1> +- beta a_1|2>)/sqrt(2)"""
        ch = qutrit_channel(0.3)
        a1 = ch.coeffs[1]
        alpha, beta = 0.6, 0.8j
        states = collapsed_states(ch, alpha, beta)
        for index, parity in ((2, 1), (3, -1)):
            expected = SQRT_HALF * np.array([0, alpha * a1, parity * beta * a1])
            np.testing.assert_allclose(states[index].amplitudes, expected, atol=1e-15)

    def test_basis_input_keeps_zero_branch(self):
        """Test (1,0) collapses onto the alpha-branch of every outcome"""
        ch = sample_random_channel(4, 8)
        branches = protocol_branches(ch)
        for state, branch in zip(collapsed_states(ch, 1, 0), branches):
            np.testing.assert_allclose(state.amplitudes, branch.zero_branch)

    def test_closed_form_matches_projection(self):
        """Test closed forms equal explicit projections"""
        rng = np.random.default_rng(21)
        for ch in sample_random_channels(5, 20, 4):
            alpha, beta = haar_states(rng, 1, 2)[0]
            psi = tensor(StateVec([alpha, beta]), channel_state(ch))
            basis = build_basis_closed_form(ch)
            for bra, state in zip(basis.vectors, collapsed_states(ch, alpha, beta)):
                projected = project_sender(bra, psi, ch.dim).amplitudes
                self.assertLess(np.max(np.abs(projected - state.amplitudes)), 1e-12)

    def test_unnormalized_qubit_rejected(self):
        """Test input normalization is enforced"""
        with self.assertRaises(RejectedInput):
            collapsed_states(vertex_channel(2, 0), 1, 1)

    def test_branches_orthogonal_and_equal_norm(self):
        """Test alpha- and beta-branches are orthogonal with equal norms"""
        for ch in random_channel_set():
            for branch in protocol_branches(ch):
                overlap = np.vdot(branch.zero_branch, branch.one_branch)
                self.assertLess(abs(overlap), 1e-12)
                difference = np.linalg.norm(branch.zero_branch) ** 2 - np.linalg.norm(
                    branch.one_branch
                ) ** 2
                self.assertLess(abs(difference), 1e-12)

    def test_amplitude_identity(self):
        """Test the amplitude balance that makes perfect teleportation possible"""
        for ch in random_channel_set():
            a, n = ch.coeffs, ch.n
            params = cascade_params(ch)
            c, s = params.c, params.s
            for j in range(n):
                left = a[j] ** 2 + s[j] ** 2 * np.prod(c[j + 1 : n - 1] ** 2) * a[n] ** 2
                tail = sum(
                    np.prod(c[j + 1 : l] ** 2) * s[l] ** 2 * a[l + 1] ** 2
                    for l in range(j + 1, n - 1)
                )
                right = c[j] ** 2 * a[j + 1] ** 2 + s[j] ** 2 * tail
                self.assertAlmostEqual(left, right, delta=1e-12)
            left = np.prod(c[: n - 1] ** 2) * a[n] ** 2
            right = a[0] ** 2 + sum(
                np.prod(c[:l] ** 2) * s[l] ** 2 * a[l + 1] ** 2 for l in range(n - 1)
            )
            self.assertAlmostEqual(left, right, delta=1e-12)


class OutcomeProbabilityTests(SimpleTestCase):
    """Test suite for outcome probabilities"""

    def test_qutrit_pattern(self):
        """Test the qutrit pattern on 50 random channels against the oracle"""
        rng = np.random.default_rng(2)
        for a0 in rng.uniform(0, THIRD, 50):
            ch = qutrit_channel(a0)
            a1 = ch.coeffs[1]
            side = (a0**2 + a1**2) / 4
            expected = [side, side, a1**2 / 2, a1**2 / 2, side, side]
            probabilities = outcome_probabilities(ch)
            np.testing.assert_allclose(probabilities, expected, atol=1e-12, rtol=0)
            oracle = [o.probability for o in oracle_teleport(ch, 0.6, 0.8)]
            np.testing.assert_allclose(probabilities, oracle, atol=1e-12, rtol=0)

    def test_uniform_qutrit(self):
        """Test the maximally entangled qutrit gives 1/6 everywhere"""
        np.testing.assert_allclose(outcome_probabilities(vertex_channel(2, 0)), 1 / 6)

    def test_case2_small_y(self):
        """Test Case II n=3 approaches (1/16, 1/8, 1/4, 1/16) as y -> 0"""
        probabilities = outcome_probabilities(case2_channel(3, 1e-8))
        expected = np.repeat([1 / 16, 1 / 8, 1 / 4, 1 / 16], 2)
        np.testing.assert_allclose(probabilities, expected, atol=1e-12)

    def test_sum_to_one(self):
        """Test completeness on random channels"""
        for ch in random_channel_set():
            self.assertAlmostEqual(float(np.sum(outcome_probabilities(ch))), 1.0, delta=1e-10)

    def test_staircase_limit(self):
        """Test P_{n+} + P_{n-} -> 2^-n for ratio 1e-6"""
        for n in range(2, 7):
            probabilities = outcome_probabilities(staircase_channel(n, 1e-6))
            self.assertAlmostEqual(probabilities[-2] + probabilities[-1], 2.0**-n, delta=1e-4)


class CorrectionTests(SimpleTestCase):
    """Test suite for Bob's corrections"""

    def test_uniform_qutrit_middle_outcome(self):
        """Test outcome (1,+) maps |1> -> |0> and |2> -> |1>"""
        correction = bob_corrections(vertex_channel(2, 0))[2]
        np.testing.assert_allclose(correction.apply(StateVec.basis(1, 3)).amplitudes, [1, 0, 0])
        np.testing.assert_allclose(correction.apply(StateVec.basis(2, 3)).amplitudes, [0, 1, 0])

    def test_corrections_unitary(self):
        """Test every correction is unitary"""
        for ch in sample_random_channels(5, 10, 6):
            for correction in bob_corrections(ch):
                self.assertTrue(correction.is_unitary)

    def test_state_independence(self):
        """Test probe-built corrections restore a complex input"""
        ch = sample_random_channel(4, 77)
        for outcome in run_teleportation(ch, 0.6, 0.8j):
            self.assertGreaterEqual(outcome.fidelity, 1 - 1e-9)

    def test_vanished_outcomes_use_identity(self):
        """Test vanished outcomes keep identity corrections"""
        branches = protocol_branches(vertex_channel(4, 3))
        vanished = [b for b in branches if b.vanished]
        self.assertEqual(len(vanished), 4)
        for branch in vanished:
            np.testing.assert_array_equal(branch.correction.entries, np.eye(5))


class RunTeleportationTests(SimpleTestCase):
    """Test suite for the end-to-end pipeline"""

    def test_basis_input(self):
        """Test |0> is teleported perfectly through any channel"""
        for outcome in run_teleportation(sample_random_channel(3, 5), 1, 0):
            self.assertAlmostEqual(outcome.fidelity, 1.0, delta=1e-9)

    def test_qutrit_example(self):
        """Test the a_0 = 0.2 qutrit channel with (0.6, 0.8)"""
        ch = qutrit_channel(0.2)
        outcomes = run_teleportation(ch, 0.6, 0.8)
        self.assertEqual(len(outcomes), 6)
        np.testing.assert_allclose(
            [o.probability for o in outcomes], outcome_probabilities(ch), atol=1e-12
        )
        for outcome in outcomes:
            self.assertGreaterEqual(outcome.fidelity, 1 - 1e-9)

    def test_vanished_outcome_reporting(self):
        """Test vanished outcomes carry zero probability and fidelity"""
        outcomes = run_teleportation(vertex_channel(3, 2), 0.6, 0.8)
        vanished = [o for o in outcomes if o.vanished]
        self.assertEqual(len(vanished), 2)
        for outcome in vanished:
            self.assertEqual((outcome.probability, outcome.fidelity), (0.0, 0.0))
            self.assertEqual(outcome.collapsed.norm, 0.0)

    def test_perfect_teleportation_sweep(self):
        """Test 100 random channels x 50 Haar qubits for n = 2..6"""
        rng = np.random.default_rng(2024)
        for n in range(2, 7):
            for ch in sample_random_channels(n, 100, n):
                branches = protocol_branches(ch)
                for alpha, beta in haar_states(rng, 50, 2):
                    outcomes = teleport_with_branches(branches, alpha, beta)
                    total = sum(o.probability for o in outcomes)
                    self.assertAlmostEqual(total, 1.0, delta=1e-10)
                    worst = min(o.fidelity for o in outcomes if not o.vanished)
                    self.assertGreaterEqual(worst, 1 - 1e-9)

    def test_probabilities_independent_of_input(self):
        """Test two inputs give the same outcome distribution"""
        ch = sample_random_channel(5, 31)
        first = [o.probability for o in run_teleportation(ch, 1, 0)]
        second = [o.probability for o in run_teleportation(ch, SQRT_HALF, -1j * SQRT_HALF)]
        np.testing.assert_allclose(first, second, atol=1e-12)


class OracleTests(SimpleTestCase):
    """Test suite for the projection-only oracle"""

    def test_oracle_agrees_with_pipeline(self):
        """Test probabilities and collapsed states up to global phase"""
        rng = np.random.default_rng(8)
        for ch in sample_random_channels(4, 20, 12):
            alpha, beta = haar_states(rng, 1, 2)[0]
            fast = run_teleportation(ch, alpha, beta)
            slow = oracle_teleport(ch, alpha, beta, build_basis_cascade(ch))
            self.assertAlmostEqual(sum(o.probability for o in slow), 1.0, delta=1e-10)
            for a, b in zip(fast, slow):
                self.assertEqual(a.label, b.label)
                self.assertAlmostEqual(a.probability, b.probability, delta=1e-12)
                if not a.vanished:
                    overlap = abs(np.vdot(a.collapsed.amplitudes, b.collapsed.amplitudes))
                    self.assertAlmostEqual(overlap, 1.0, delta=1e-12)
                    self.assertGreaterEqual(b.fidelity, 1 - 1e-9)


class StandardBellTests(SimpleTestCase):
    """Test suite for the standard Bell-state scheme"""

    def test_four_equiprobable_perfect_outcomes(self):
        """Test P = 1/4 and fidelity 1 with qutrit receiver support on |0>, |1>"""
        outcomes = standard_bell_teleport(1, 0)
        self.assertEqual(len(outcomes), 4)
        for outcome in outcomes:
            self.assertAlmostEqual(outcome.probability, 0.25, places=12)
            self.assertAlmostEqual(outcome.fidelity, 1.0, delta=1e-9)
            self.assertEqual(outcome.collapsed.dim, 3)
            self.assertEqual(outcome.collapsed.amplitudes[2], 0)

    def test_complex_input(self):
        """Test a complex qubit is teleported perfectly"""
        for outcome in standard_bell_teleport(0.6, 0.8j):
            self.assertAlmostEqual(outcome.fidelity, 1.0, delta=1e-9)


class OutcomeSerializerTests(SimpleTestCase):
    """Test suite for outcome JSON"""

    def test_schema_fields(self):
        """Test serialized outcome keys and label mapping"""
        outcomes = run_teleportation(vertex_channel(2, 1), 0.6, 0.8)
        payload = [schema.model_dump() for schema in outcomes_to_schema(outcomes)]
        self.assertEqual(set(payload[0]), {"j", "sign", "p", "fidelity", "vanished"})
        self.assertEqual((payload[1]["j"], payload[1]["sign"]), (0, "-"))
        self.assertEqual(OutcomeLabel(0, "-"), outcomes[1].label)
        self.assertAlmostEqual(payload[4]["p"], 0.125, places=12)
