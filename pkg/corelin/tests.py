import numpy as np
from django.test import SimpleTestCase

from corelin.exceptions import DimensionMismatch, RejectedInput
from corelin.services.linalg import (
    complete_orthonormal,
    correction_operator,
    fidelity,
    gram_matrix,
    project_sender,
    tensor,
)
from corelin.services.random_states import (
    HaarMonteCarlo,
    haar_states,
    sample_mean,
    shard_generators,
)
from corelin.types import Operator, StateVec

SQRT_HALF = np.sqrt(0.5)


class StateVecTests(SimpleTestCase):
    """Test suite for StateVec and Operator values"""

    def test_amplitudes_are_read_only(self):
        """Test that amplitudes cannot be mutated after construction"""
        state = StateVec([1, 0])
        with self.assertRaises(ValueError):
            state.amplitudes[0] = 0

    def test_dim_and_normalization(self):
        """Test dim and normalization checks"""
        state = StateVec([0.6, 0.8j])
        self.assertEqual(state.dim, 2)
        self.assertTrue(state.is_normalized)
        self.assertFalse(StateVec([1, 1]).is_normalized)

    def test_normalizing_zero_vector_is_rejected(self):
        """Test that the zero vector cannot be normalized"""
        with self.assertRaises(RejectedInput):
            StateVec.zeros(3).normalized()

    def test_operator_must_be_square(self):
        """Test that non-square operators are rejected"""
        with self.assertRaises(DimensionMismatch):
            Operator(np.zeros((2, 3)))

    def test_identity_is_unitary(self):
        """Test unitarity check on identity and a non-unitary matrix"""
        self.assertTrue(Operator.identity(4).is_unitary)
        self.assertFalse(Operator(2 * np.eye(2)).is_unitary)


class TensorTests(SimpleTestCase):
    """Test suite for tensor products"""

    def test_basis_product(self):
        """Test |0>|0> is the first basis vector of dim 4"""
        product = tensor(StateVec.basis(0, 2), StateVec.basis(0, 2))
        np.testing.assert_array_equal(product.amplitudes, [1, 0, 0, 0])

    def test_qubit_with_maximally_correlated_vector(self):
        """Test entry placement for a qubit times a two-ended vector"""
        alpha, beta, d = 0.6, 0.8j, 4
        pair = np.zeros(d)
        pair[0] = pair[-1] = SQRT_HALF
        product = tensor(StateVec([alpha, beta]), StateVec(pair)).amplitudes
        expected = np.zeros(2 * d, dtype=complex)
        expected[[0, d - 1]] = alpha * SQRT_HALF
        expected[[d, 2 * d - 1]] = beta * SQRT_HALF
        np.testing.assert_allclose(product, expected, atol=1e-15)

    def test_associativity_and_norm(self):
        """Test associativity and norm multiplicativity on random states"""
        rng = np.random.default_rng(7)
        a, b, c = (StateVec(v) for v in (haar_states(rng, 1, d)[0] for d in (2, 3, 4)))
        left = tensor(tensor(a, b), c).amplitudes
        right = tensor(a, tensor(b, c)).amplitudes
        self.assertLess(np.max(np.abs(left - right)), 1e-14)
        self.assertTrue(tensor(a, b).is_normalized)


class ProjectSenderTests(SimpleTestCase):
    """Test suite for partial projection onto the receiver"""

    def test_product_state(self):
        """Test projection of a product state leaves the receiver factor"""
        psi = tensor(StateVec.basis(0, 4), StateVec([0.6, 0.8]))
        result = project_sender(StateVec.basis(0, 4), psi, 2)
        np.testing.assert_allclose(result.amplitudes, [0.6, 0.8])

    def test_orthogonal_bra_gives_zero(self):
        """Test a bra outside the sender support gives the zero vector"""
        psi = tensor(StateVec.basis(0, 4), StateVec([0.6, 0.8]))
        result = project_sender(StateVec.basis(3, 4), psi, 2)
        self.assertEqual(result.norm, 0.0)

    def test_dimension_mismatch(self):
        """Test mismatched dimensions are rejected"""
        with self.assertRaises(DimensionMismatch):
            project_sender(StateVec.basis(0, 4), StateVec.basis(0, 6), 2)

    def test_completeness(self):
        """Test outcome probabilities over any basis sum to one"""
        rng = np.random.default_rng(11)
        psi = StateVec(haar_states(rng, 1, 18)[0])
        unitary, _ = np.linalg.qr(haar_states(rng, 6, 6))
        basis = [StateVec(unitary[:, k]) for k in range(6)]
        total = sum(project_sender(b, psi, 3).norm ** 2 for b in basis)
        self.assertAlmostEqual(total, 1.0, delta=1e-10)


class FidelityTests(SimpleTestCase):
    """Test suite for the squared-overlap fidelity"""

    def test_known_values(self):
        """Test identical, orthogonal and half-overlap pairs"""
        plus = StateVec([SQRT_HALF, SQRT_HALF])
        self.assertAlmostEqual(fidelity(plus, plus), 1.0, places=12)
        self.assertEqual(fidelity(StateVec.basis(0, 2), StateVec.basis(1, 2)), 0.0)
        self.assertAlmostEqual(fidelity(StateVec.basis(0, 2), plus), 0.5, places=12)

    def test_unnormalized_input_is_rejected(self):
        """Test fidelity rejects unnormalized states"""
        with self.assertRaises(RejectedInput):
            fidelity(StateVec([1, 1]), StateVec.basis(0, 2))


class CompleteOrthonormalTests(SimpleTestCase):
    """Test suite for Gram-Schmidt completion"""

    def test_single_seed_in_dim_two(self):
        """Test {|0>} completes to the standard basis"""
        basis = complete_orthonormal([StateVec.basis(0, 2)])
        np.testing.assert_allclose(basis[1].amplitudes, [0, 1])

    def test_superposition_seed(self):
        """Test completion of a superposition seed is orthonormal"""
        basis = complete_orthonormal([StateVec([SQRT_HALF, SQRT_HALF, 0])])
        self.assertEqual(len(basis), 3)
        gram = gram_matrix(basis)
        self.assertLess(np.max(np.abs(gram - np.eye(3))), 1e-10)

    def test_empty_seed_list(self):
        """Test no seeds yields the standard basis"""
        basis = complete_orthonormal([], dim=4)
        np.testing.assert_allclose(np.stack([v.amplitudes for v in basis]), np.eye(4))

    def test_non_orthonormal_seeds_are_rejected(self):
        """Test overlapping seeds are rejected"""
        with self.assertRaises(RejectedInput):
            complete_orthonormal([StateVec.basis(0, 2), StateVec([SQRT_HALF, SQRT_HALF])])

    def test_correction_operator_maps_basis_to_standard(self):
        """Test the correction sends each basis vector to its index ket"""
        basis = complete_orthonormal([StateVec([SQRT_HALF, 1j * SQRT_HALF, 0])])
        correction = correction_operator(basis)
        self.assertTrue(correction.is_unitary)
        for index, vector in enumerate(basis):
            image = correction.apply(vector).amplitudes
            np.testing.assert_allclose(image, np.eye(3)[index], atol=1e-12)


class RandomStateTests(SimpleTestCase):
    """Test suite for Haar sampling helpers"""

    def test_haar_rows_are_unit_vectors(self):
        """Test every sampled row is normalized"""
        states = haar_states(np.random.default_rng(3), 100, 3)
        np.testing.assert_allclose(np.linalg.norm(states, axis=1), 1.0, atol=1e-12)

    def test_haar_fourth_moment(self):
        """Test E|alpha|^4 = 1/6 for qutrit Haar states"""
        states = haar_states(np.random.default_rng(5), 200000, 3)
        moment = np.mean(np.abs(states[:, 0]) ** 4)
        self.assertAlmostEqual(moment, 1 / 6, delta=3e-3)

    def test_shards_are_reproducible(self):
        """Test shard sizes and determinism for a fixed seed"""
        shards = shard_generators(42, 25, shard_size=10)
        self.assertEqual([size for _, size in shards], [10, 10, 5])
        first = [rng.random() for rng, _ in shard_generators(42, 25, shard_size=10)]
        second = [rng.random() for rng, _ in shards]
        self.assertEqual(first, second)

    def test_zero_samples_rejected(self):
        """Test an empty sample budget is rejected"""
        with self.assertRaises(RejectedInput):
            shard_generators(1, 0)

    def test_sample_mean(self):
        """Test mean and standard error of a small sample"""
        mean, stderr = sample_mean(np.array([1.0, 3.0]))
        self.assertEqual(mean, 2.0)
        self.assertAlmostEqual(stderr, 1.0)


class HaarMonteCarloTests(SimpleTestCase):
    """Test suite for the sharded Monte Carlo helper"""

    def test_reproducible_estimate(self):
        """Test the same seed reproduces the same estimate bit for bit"""
        first = HaarMonteCarlo(dim=2, seed=42, samples=2500).estimate(
            lambda states: np.abs(states[:, 0]) ** 2
        )
        second = HaarMonteCarlo(dim=2, seed=42, samples=2500).estimate(
            lambda states: np.abs(states[:, 0]) ** 2
        )
        self.assertEqual(first, second)

    def test_qubit_population_mean(self):
        """Test E|alpha|^2 = 1/2 for Haar qubits"""
        mean, stderr = HaarMonteCarlo(dim=2, seed=1, samples=40000).estimate(
            lambda states: np.abs(states[:, 0]) ** 2
        )
        self.assertAlmostEqual(mean, 0.5, delta=5 * stderr)

    def test_default_sample_count_from_settings(self):
        """Test the sample count falls back to the configured default"""
        self.assertEqual(HaarMonteCarlo(dim=3, seed=0).samples, HaarMonteCarlo.DEFAULT_SAMPLES)
