"""
Tests for projective parity measurements and the outcome policies.
"""

# Standard library imports ...
import unittest

# Third party library imports ...
import numpy as np

# Local imports ...
from majsim.fock import FockSpace, Operator, creator
from majsim.gates import braid
from majsim.measurement import (
    MeasurementError, OutcomePolicy, ZeroProbabilityError, branch_probabilities,
    measure, pair_observable, quad_observable, rng_stream,
)
from . import fixtures


class TestRngStream(fixtures.TestCommon):
    """
    Per-shot random streams.
    """

    def test_reproducible(self):
        """
        SCENARIO:  draw twice from the stream of (seed, shot) = (5, 3)

        EXPECTED RESULT:  the same variates; another shot gives others
        """
        first = rng_stream(5, 3).random(8)
        second = rng_stream(5, 3).random(8)
        np.testing.assert_array_equal(first, second)

        other = rng_stream(5, 4).random(8)
        self.assertFalse(np.array_equal(first, other))

    def test_seed_and_shot_are_not_interchangeable(self):
        """
        SCENARIO:  swap the seed and the shot number

        EXPECTED RESULT:  different streams
        """
        a = rng_stream(1, 2).random(4)
        b = rng_stream(2, 1).random(4)
        self.assertFalse(np.array_equal(a, b))

    def test_out_of_range(self):
        """
        SCENARIO:  a negative seed, a shot beyond 64 bits

        EXPECTED RESULT:  ValueError
        """
        with self.assertRaises(ValueError):
            rng_stream(-1)
        with self.assertRaises(ValueError):
            rng_stream(0, 2 ** 64)


class TestMeasure(fixtures.TestCommon):
    """
    Projective measurements of pair and quad parities.
    """

    def setUp(self):
        super().setUp()
        self.space = FockSpace(4)
        # B45 on the vacuum gives Pi(4,5) = +1 and -1 with probability 1/2.
        self.entangled = braid(self.space, 4, 5) @ self.space.basis_state('0000')

    def test_empty_pair(self):
        """
        SCENARIO:  measure Pi(3,4) on the vacuum

        EXPECTED RESULT:  +1 with certainty, raw eigenvalue -1, even parity
        """
        policy = OutcomePolicy.sampled(seed=0)
        record, state = measure(
            self.space.basis_state('0000'), pair_observable(self.space, 3, 4),
            policy, label='M1',
        )
        self.assertEqual(record.outcome, 1)
        self.assertEqual(record.raw, -1)
        self.assertEqual(record.parity, 'even')
        self.assertAlmostEqual(record.probability, 1)
        self.assertEqual(record.label, 'M1')
        self.assertEqual(record.observable, 'Pi(3,4)')
        self.assertEqual(policy.consumed, 1)
        self.assertAlmostEqual(state.norm, 1)

    def test_quad_parity_on_vacuum(self):
        """
        SCENARIO:  measure gamma_5 gamma_6 gamma_7 gamma_8 on the vacuum

        EXPECTED RESULT:  -1, which signals even parity
        """
        policy = OutcomePolicy.sampled(seed=0)
        record, _ = measure(
            self.space.basis_state('0000'),
            quad_observable(self.space, 5, 6, 7, 8), policy,
        )
        self.assertEqual(record.outcome, -1)
        self.assertEqual(record.raw, -1)
        self.assertEqual(record.parity, 'even')

    def test_branch_probabilities(self):
        """
        SCENARIO:  split B45|0000> by Pi(4,5)

        EXPECTED RESULT:  two halves that sum back to the state
        """
        p_plus, p_minus, v_plus, v_minus = branch_probabilities(
            self.entangled, pair_observable(self.space, 4, 5)
        )
        self.assertAlmostEqual(p_plus, 0.5)
        self.assertAlmostEqual(p_minus, 0.5)
        np.testing.assert_allclose(
            v_plus + v_minus, self.entangled.amplitudes, atol=1e-12
        )

    def test_forced_outcomes_collapse(self):
        """
        SCENARIO:  force each outcome of Pi(4,5) on B45|0000>

        EXPECTED RESULT:  a normalized eigenstate with the forced eigenvalue
        """
        observable = pair_observable(self.space, 4, 5)
        for outcome in (1, -1):
            with self.subTest(outcome=outcome):
                policy = OutcomePolicy.forced([outcome])
                record, state = measure(self.entangled, observable, policy)
                self.assertEqual(record.outcome, outcome)
                self.assertAlmostEqual(record.probability, 0.5)
                self.assertAlmostEqual(state.norm, 1)
                self.assertTrue(state.is_eigenstate(observable.operator, outcome))

    def test_forced_by_label(self):
        """
        SCENARIO:  force M2 by name and leave M1 to the stream

        EXPECTED RESULT:  M2 takes the forced value
        """
        observable = pair_observable(self.space, 4, 5)
        policy = OutcomePolicy.forced({'M2': -1}, seed=3)
        record, _ = measure(self.entangled, observable, policy, label='M1')
        self.assertIn(record.outcome, (1, -1))
        record, _ = measure(self.entangled, observable, policy, label='M2')
        self.assertEqual(record.outcome, -1)

    def test_forced_zero_probability(self):
        """
        SCENARIO:  force Pi(3,4) = -1 on the vacuum

        EXPECTED RESULT:  ZeroProbabilityError with probability zero
        """
        policy = OutcomePolicy.forced([-1])
        with self.assertRaises(ZeroProbabilityError) as cm:
            measure(
                self.space.basis_state('0000'),
                pair_observable(self.space, 3, 4), policy,
            )
        self.assertAlmostEqual(cm.exception.probability, 0)

    def test_forced_queue_exhausted(self):
        """
        SCENARIO:  measure twice with one forced outcome and no seed

        EXPECTED RESULT:  MeasurementError on the second measurement
        """
        observable = pair_observable(self.space, 4, 5)
        policy = OutcomePolicy.forced([1])
        measure(self.entangled, observable, policy)
        with self.assertRaisesRegex(MeasurementError, 'No forced outcome'):
            measure(self.entangled, observable, policy)

    def test_bad_forced_value(self):
        """
        SCENARIO:  force an outcome of 2

        EXPECTED RESULT:  MeasurementError
        """
        with self.assertRaises(MeasurementError):
            OutcomePolicy.forced([2])

    def test_enumerate(self):
        """
        SCENARIO:  enumerate Pi(4,5) on B45|0000> and Pi(3,4) on the vacuum

        EXPECTED RESULT:  both branches in the first case, +1 first; only
        the possible one in the second
        """
        branches = measure(
            self.entangled, pair_observable(self.space, 4, 5),
            OutcomePolicy.enumerate(),
        )
        self.assertEqual([r.outcome for r, _ in branches], [1, -1])

        branches = measure(
            self.space.basis_state('0000'), pair_observable(self.space, 3, 4),
            OutcomePolicy.enumerate(),
        )
        self.assertEqual([r.outcome for r, _ in branches], [1])

    def test_sampled_frequencies(self):
        """
        SCENARIO:  sample Pi(4,5) on B45|0000> over 400 shots

        EXPECTED RESULT:  about half the outcomes are +1
        """
        observable = pair_observable(self.space, 4, 5)
        plus = 0
        for shot in range(400):
            policy = OutcomePolicy.sampled(seed=11, shot=shot)
            record, _ = measure(self.entangled, observable, policy)
            plus += record.outcome == 1
        # Three standard deviations are 30 shots.
        self.assertLess(abs(plus - 200), 40)

    def test_sampling_is_reproducible(self):
        """
        SCENARIO:  sample the same shot twice

        EXPECTED RESULT:  the same outcome
        """
        observable = pair_observable(self.space, 4, 5)
        outcomes = [
            measure(self.entangled, observable, OutcomePolicy.sampled(7, 9))[0].outcome
            for _ in range(2)
        ]
        self.assertEqual(outcomes[0], outcomes[1])

    def test_observable_must_be_an_involution(self):
        """
        SCENARIO:  measure twice the identity, and a fermion creator

        EXPECTED RESULT:  MeasurementError
        """
        doubled = Operator(self.space, 2 * np.eye(self.space.dim), 'twice')
        with self.assertRaisesRegex(MeasurementError, 'Hermitian involution'):
            measure(self.entangled, doubled, OutcomePolicy.forced([1]))
        with self.assertRaises(MeasurementError):
            measure(
                self.entangled, creator(self.space, (1, 2)),
                OutcomePolicy.forced([1]),
            )
        with self.assertRaises(MeasurementError):
            measure(self.entangled, 'Pi(4,5)', OutcomePolicy.forced([1]))


if __name__ == '__main__':
    unittest.main()
