"""
Tests for the encoded bases and the logical encode/decode maps.
"""

# Standard library imports ...
import unittest

# Third party library imports ...
import numpy as np

# Local imports ...
import majsim
from majsim.encoding import (
    BASES, EncodingError, LogicalTwoQubit, basis_modes, decode_logical,
    dense_basis, encode_logical, ket_sum, named_basis, relabeled_pairing,
    sp_basis, sp_printed_basis, sparse_even_basis,
)
from majsim.fock import FockSpace, best_phase, quad_parity_op
from majsim.gates import SectorLeakageError, braid
from . import fixtures


class TestLogicalTwoQubit(fixtures.TestCommon):
    """
    Normalized two-qubit states.
    """

    def test_from_label(self):
        """
        SCENARIO:  build |01>

        EXPECTED RESULT:  a unit amplitude in the second slot, printed with
        its label
        """
        state = LogicalTwoQubit.from_label('01')
        np.testing.assert_array_equal(state.amplitudes, [0, 1, 0, 0])
        self.assertEqual(state.label(), '01')
        self.assertEqual(str(state), '1+0i|01>')

    def test_superposition_has_no_label(self):
        """
        SCENARIO:  a superposition of |00> and |11>

        EXPECTED RESULT:  label() returns None
        """
        state = LogicalTwoQubit([0.6, 0, 0, 0.8])
        self.assertIsNone(state.label())

    def test_malformed(self):
        """
        SCENARIO:  three amplitudes, an unnormalized vector, a bad label

        EXPECTED RESULT:  EncodingError
        """
        with self.assertRaises(EncodingError):
            LogicalTwoQubit([1, 0, 0])
        with self.assertRaisesRegex(EncodingError, 'norm'):
            LogicalTwoQubit([1, 1, 0, 0])
        with self.assertRaises(EncodingError):
            LogicalTwoQubit.from_label('12')


class TestEncodeDecode(fixtures.TestCommon):
    """
    The sparse computational encoding of two logical qubits.
    """

    def test_encode_basis_state(self):
        """
        SCENARIO:  encode |10>

        EXPECTED RESULT:  |1100> on four modes
        """
        state = encode_logical('10')
        self.assertEqual(state.space.n_modes, 4)
        self.assertEqual(state.amplitudes[0b1100], 1)
        self.assertAlmostEqual(state.norm, 1)

    def test_decode_superposition(self):
        """
        SCENARIO:  encode and decode 0.6|00> + 0.8i|11>

        EXPECTED RESULT:  the same logical amplitudes
        """
        amplitudes = np.array([0.6, 0, 0, 0.8j])
        state = encode_logical(amplitudes)
        self.assertAlmostEqual(abs(state.amplitudes[0b1111]), 0.8)
        decoded = decode_logical(state)
        np.testing.assert_allclose(decoded.amplitudes, amplitudes, atol=1e-12)

    def test_decode_leakage(self):
        """
        SCENARIO:  decode the non-computational state |0101>

        EXPECTED RESULT:  SectorLeakageError with leakage one
        """
        state = FockSpace(4).basis_state('0101')
        with self.assertRaises(SectorLeakageError) as cm:
            decode_logical(state)
        self.assertAlmostEqual(cm.exception.leakage, 1)

    def test_wrong_space(self):
        """
        SCENARIO:  encode onto three modes, decode a three-mode state

        EXPECTED RESULT:  EncodingError
        """
        with self.assertRaisesRegex(EncodingError, 'needs 4 modes'):
            encode_logical('00', FockSpace(3))
        with self.assertRaises(EncodingError):
            decode_logical(FockSpace(3).basis_state('000'))


class TestBases(fixtures.TestCommon):
    """
    Named encoded bases.
    """

    def test_every_named_basis_is_orthonormal(self):
        """
        SCENARIO:  build every named basis

        EXPECTED RESULT:  four orthonormal vectors on the advertised number
        of modes
        """
        for name in BASES:
            with self.subTest(name=name):
                basis = named_basis(name)
                self.assertEqual(len(basis), 4)
                self.assertEqual(basis.space.n_modes, basis_modes(name))
                v = basis.matrix()
                np.testing.assert_allclose(v.conj().T @ v, np.eye(4), atol=1e-12)

    def test_unknown_basis(self):
        """
        SCENARIO:  ask for an unknown basis

        EXPECTED RESULT:  EncodingError listing the known names
        """
        with self.assertRaisesRegex(EncodingError, 'sparse-even'):
            named_basis('bell')
        with self.assertRaises(EncodingError):
            basis_modes('bell')

    def test_labels(self):
        """
        SCENARIO:  read the labels of the dense and superposition bases

        EXPECTED RESULT:  occupation strings, superpositions joined by '+'
        """
        self.assertEqual(
            named_basis('dense-plus').labels, ('000', '011', '101', '110')
        )
        self.assertEqual(
            named_basis('dense-minus').labels, ('001', '010', '100', '111')
        )
        self.assertEqual(named_basis('sp').labels[0], '0000+0110')

    def test_dense_parity_argument(self):
        """
        SCENARIO:  ask for a dense basis of parity 'both'

        EXPECTED RESULT:  EncodingError
        """
        with self.assertRaises(EncodingError):
            dense_basis(parity='both')

    def test_sparse_quad_parities(self):
        """
        SCENARIO:  the two quad parities of the computational basis

        EXPECTED RESULT:  -1 for every vector
        """
        space = FockSpace(4)
        for _, vec in sparse_even_basis(space):
            for indices in ((1, 2, 3, 4), (5, 6, 7, 8)):
                q = quad_parity_op(space, *indices)
                self.assertTrue(vec.is_eigenstate(q, -1))

    def test_corrected_spans_even_collapse(self):
        """
        SCENARIO:  compare the projectors of the corrected and the even
        collapsed bases

        EXPECTED RESULT:  the same span
        """
        corrected = named_basis('corrected').projector()
        collapsed = named_basis('dense-collapsed-even').projector()
        np.testing.assert_allclose(corrected, collapsed, atol=1e-12)

    def test_sp_is_the_braid_image(self):
        """
        SCENARIO:  apply B45 to the sparse computational basis in each braid
        convention

        EXPECTED RESULT:  every image lies in the span of the superposition
        basis and matches its column up to one phase
        """
        for convention in ('mem', 'ivanov'):
            with self.subTest(convention=convention):
                majsim.set_option('braid.convention', convention)
                space = FockSpace(4)
                b45 = braid(space, 4, 5)
                sp = sp_basis(space)
                for (_, ket), (_, ref) in zip(sparse_even_basis(space), sp):
                    image = b45 @ ket
                    _, deviation = best_phase(ref, image)
                    self.assertLess(deviation, 1e-12)
                    leakage = image.amplitudes - sp.projector() @ image.amplitudes
                    self.assertLess(np.max(np.abs(leakage)), 1e-12)

    def test_sp_against_printed(self):
        """
        SCENARIO:  read the first superposition vector next to the printed
        one in the relabeled frame

        EXPECTED RESULT:  the same support and moduli, the same empty-pair
        term, the occupied-pair term turned by a quarter phase
        """
        pairing = relabeled_pairing()
        actual = sp_basis().vectors[0].components(pairing)
        printed = sp_printed_basis().vectors[0].components(pairing)
        for label, amplitude in printed.items():
            self.assertAlmostEqual(abs(actual[label]), abs(amplitude))
        self.assertAlmostEqual(actual['0000'], 1j / np.sqrt(2))
        self.assertAlmostEqual(printed['0000'], 1j / np.sqrt(2))
        relative = actual['0110'] / printed['0110']
        self.assertAlmostEqual(abs(relative.imag), 1)
        self.assertEqual(sp_printed_basis().labels, sp_basis().labels)

    def test_ket_sum(self):
        """
        SCENARIO:  sum |00> and |11> with a bad label in the mix

        EXPECTED RESULT:  a normalized superposition, EncodingError for the
        bad label
        """
        space = FockSpace(2)
        state = ket_sum(space, {'00': 1, '11': 1j})
        self.assertAlmostEqual(state.norm, 1)
        self.assertAlmostEqual(state.amplitudes[3], 1j / np.sqrt(2))

        space = FockSpace(4)
        with self.assertRaises(EncodingError):
            ket_sum(space, {'0000': 1, '00x0': 1}, relabeled_pairing())


if __name__ == '__main__':
    unittest.main()
