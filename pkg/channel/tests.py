import json

import numpy as np
from django.test import SimpleTestCase

from channel.serializers import channel_from_json, channel_to_json
from channel.services.schmidt import (
    case1_channel,
    case2_channel,
    channel_entropy,
    channel_state,
    new_channel,
    qutrit_channel,
    sample_random_channel,
    sample_random_channels,
    staircase_channel,
    vertex_channel,
)
from channel.validators import validate_schmidt_coeffs
from corelin.exceptions import RejectedInput

THIRD = 1 / np.sqrt(3)
HALF = np.sqrt(0.5)


class ValidatorTests(SimpleTestCase):
    """Test suite for Schmidt coefficient validation"""

    def test_valid_uniform(self):
        """Test uniform coefficients are accepted"""
        self.assertEqual(validate_schmidt_coeffs([0.5] * 4), (True, ""))

    def test_error_messages_name_the_invariant(self):
        """Test each violation produces its own message"""
        cases = {
            (0.5, 0.5): "n >= 2",
            (-0.1, 0.7, 0.7): "non-negative",
            (0.9, 0.3, 0.3): "not ascending",
            (0.0, 0.6, 0.8): "not equal",
            (0.0, 0.0, 0.0): "positive",
            (0.0, 0.5, 0.5): "sum to one",
        }
        for coeffs, fragment in cases.items():
            is_valid, message = validate_schmidt_coeffs(coeffs)
            self.assertFalse(is_valid)
            self.assertIn(fragment, message)


class NewChannelTests(SimpleTestCase):
    """Test suite for channel construction"""

    def test_maximally_entangled_qutrit(self):
        """Test (1/sqrt3, 1/sqrt3, 1/sqrt3) gives n=2"""
        ch = new_channel([THIRD] * 3)
        self.assertEqual(ch.n, 2)

    def test_uniform_ququart(self):
        """Test (0.5, 0.5, 0.5, 0.5) gives n=3"""
        self.assertEqual(new_channel([0.5] * 4).n, 3)

    def test_descending_rejected(self):
        """Test descending input names the ordering invariant"""
        with self.assertRaisesMessage(RejectedInput, "not ascending"):
            new_channel([0.9, 0.3, 0.3])

    def test_small_normalization_error_is_repaired(self):
        """Test hand-typed coefficients are renormalized"""
        ch = new_channel([0.0, 0.70710678, 0.70710678])
        self.assertAlmostEqual(float(np.sum(ch.coeffs**2)), 1.0, delta=1e-12)
        self.assertEqual(ch.coeffs[1], ch.coeffs[2])

    def test_large_normalization_error_rejected(self):
        """Test coefficients far from unit norm are rejected"""
        with self.assertRaisesMessage(RejectedInput, "sum to one"):
            new_channel([0.0, 0.7, 0.7])

    def test_non_numeric_rejected(self):
        """Test non-numeric input is rejected"""
        with self.assertRaises(RejectedInput):
            new_channel(["a", "b", "c"])


class FamilyTests(SimpleTestCase):
    """Test suite for vertex, Case I, Case II, staircase and qutrit families"""

    def test_vertex_examples(self):
        """Test the documented vertex channels"""
        np.testing.assert_allclose(vertex_channel(2, 0).coeffs, [THIRD] * 3)
        np.testing.assert_allclose(vertex_channel(2, 1).coeffs, [0, HALF, HALF])
        np.testing.assert_allclose(vertex_channel(3, 2).coeffs, [0, 0, HALF, HALF])

    def test_vertex_tau_out_of_range(self):
        """Test tau = n is rejected"""
        with self.assertRaises(RejectedInput):
            vertex_channel(2, 2)

    def test_case1_examples(self):
        """Test Case I endpoints and an interior point"""
        self.assertTrue(case1_channel(2, 1).is_close(vertex_channel(2, 0)))
        self.assertTrue(case1_channel(2, 0).is_close(vertex_channel(2, 1)))
        ch = case1_channel(4, 0.5)
        top = 1 / np.sqrt(2.75)
        np.testing.assert_allclose(ch.coeffs, [top / 2] * 3 + [top, top], atol=1e-15)
        self.assertAlmostEqual(float(np.sum(ch.coeffs**2)), 1.0, delta=1e-12)

    def test_case1_out_of_domain(self):
        """Test x outside [0, 1] is rejected"""
        with self.assertRaises(RejectedInput):
            case1_channel(3, 1.5)

    def test_case2_examples(self):
        """Test Case II endpoints and an interior point"""
        np.testing.assert_allclose(case2_channel(3, 1).coeffs, [0] + [THIRD] * 3)
        np.testing.assert_allclose(case2_channel(3, 0).coeffs, [0, 0, HALF, HALF])
        ch = case2_channel(5, 0.6)
        top = 1 / np.sqrt(2.36)
        np.testing.assert_allclose(ch.coeffs, [0, 0, 0, 0.6 * top, top, top], atol=1e-15)

    def test_case2_requires_n_three(self):
        """Test Case II rejects n = 2"""
        with self.assertRaises(RejectedInput):
            case2_channel(2, 0.5)

    def test_family_vertex_identities(self):
        """Test the family endpoints coincide with vertex channels"""
        for n in range(3, 7):
            self.assertTrue(case1_channel(n, 1).is_close(vertex_channel(n, 0)))
            self.assertTrue(case1_channel(n, 0).is_close(vertex_channel(n, n - 1)))
            self.assertTrue(case2_channel(n, 1).is_close(vertex_channel(n, n - 2)))
            self.assertTrue(case2_channel(n, 0).is_close(vertex_channel(n, n - 1)))

    def test_staircase_ratio(self):
        """Test staircase coefficients shrink geometrically"""
        ch = staircase_channel(4, 0.1)
        ratios = ch.coeffs[:-2] / ch.coeffs[1:-1]
        np.testing.assert_allclose(ratios, 0.1, rtol=1e-12)
        self.assertEqual(ch.coeffs[-2], ch.coeffs[-1])

    def test_qutrit_channel(self):
        """Test qutrit channel endpoints"""
        np.testing.assert_allclose(qutrit_channel(0.0).coeffs, [0, HALF, HALF], atol=1e-15)
        np.testing.assert_allclose(qutrit_channel(THIRD).coeffs, [THIRD] * 3, atol=1e-15)


class RandomChannelTests(SimpleTestCase):
    """Test suite for random channel sampling"""

    def test_determinism(self):
        """Test a fixed seed reproduces the same channel"""
        self.assertEqual(sample_random_channel(5, 123), sample_random_channel(5, 123))

    def test_batch_is_valid_and_reproducible(self):
        """Test batches satisfy the invariants and repeat for the same seed"""
        batch = sample_random_channels(3, 50, 9)
        self.assertEqual(batch, sample_random_channels(3, 50, 9))
        for ch in batch:
            self.assertEqual(ch.coeffs[-2], ch.coeffs[-1])
            self.assertTrue(np.all(np.diff(ch.coeffs) >= -1e-12))

    def test_entropy_range(self):
        """Test 10000 channels at n=4 have entropy in [1, log2 5]"""
        entropies = [channel_entropy(ch) for ch in sample_random_channels(4, 10000, 42)]
        self.assertGreaterEqual(min(entropies), 1 - 1e-9)
        self.assertLessEqual(max(entropies), np.log2(5) + 1e-9)


class ChannelEntropyTests(SimpleTestCase):
    """Test suite for entanglement entropy"""

    def test_known_values(self):
        """Test Bell-like and uniform channels"""
        self.assertAlmostEqual(channel_entropy(vertex_channel(2, 1)), 1.0, places=12)
        self.assertAlmostEqual(channel_entropy(vertex_channel(2, 0)), np.log2(3), places=12)
        self.assertAlmostEqual(channel_entropy(vertex_channel(3, 2)), 1.0, places=12)

    def test_maximum_at_uniform_channel(self):
        """Test no sampled channel exceeds the uniform channel entropy"""
        ceiling = channel_entropy(vertex_channel(5, 0))
        for ch in sample_random_channels(5, 200, 1):
            self.assertLessEqual(channel_entropy(ch), ceiling + 1e-12)

    def test_channel_state_norm(self):
        """Test the joint channel state is normalized with diagonal support"""
        state = channel_state(case1_channel(3, 0.4))
        self.assertTrue(state.is_normalized)
        self.assertEqual(np.count_nonzero(state.amplitudes), 4)


class ChannelSerializerTests(SimpleTestCase):
    """Test suite for channel JSON"""

    def test_json_shape(self):
        """Test the JSON object carries n and coeffs exactly"""
        ch = case2_channel(4, 0.3)
        payload = json.loads(channel_to_json(ch))
        self.assertEqual(payload["n"], 4)
        self.assertEqual(payload["coeffs"], [float(a) for a in ch.coeffs])
        self.assertEqual(channel_from_json(channel_to_json(ch)), ch)

    def test_inconsistent_n_rejected(self):
        """Test mismatch between n and the coefficient count"""
        with self.assertRaises(RejectedInput):
            channel_from_json('{"n": 3, "coeffs": [0.0, 0.7071067811865476, 0.7071067811865476]}')
