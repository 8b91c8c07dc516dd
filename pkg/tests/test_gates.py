"""
Tests for braid and phase unitaries and the named gate library.
"""

# Standard library imports ...
import importlib.resources as ir
import unittest

# Third party library imports ...
import numpy as np

# Local imports ...
from majsim import core
from majsim.fock import FockSpace, majorana
from majsim.gates import (
    BraidConvention, GateError, PhaseConventionWarning, R, SectorLeakageError,
    WORDS, Word, appendix_c_check, braid, canonical_name, duality_check,
    gate_word, is_parity_independent, named_gate, phase_gate, sector_basis,
    sector_matrix,
)
from . import fixtures


def load_reference_matrices():
    """Read the printed matrices from the test data file.

    Returns
    -------
    dict
        Name to complex array.
    """
    text = ir.files('tests.data').joinpath('reference_matrices.txt').read_text()
    matrices = {}
    name, scale, rows = None, 1, []
    for line in text.splitlines() + ['']:
        line = line.strip()
        if line.startswith('#'):
            continue
        if line.startswith('['):
            name, scale = line[1:].split(']')
            scale, rows = float(scale), []
        elif line and name is not None:
            rows.append([complex(item) for item in line.split()])
        elif name is not None and rows:
            matrices[name] = scale * np.array(rows)
            name = None
    return matrices


class TestReferenceData(fixtures.TestCommon):
    """
    The stored reference matrices.
    """

    def test_stored_matrices_match_data_file(self):
        """
        SCENARIO:  compare the constants of majsim.core with an independent
        transcription

        EXPECTED RESULT:  identical entries
        """
        printed = load_reference_matrices()
        expected = {
            'B23': core.B23_MEM,
            'H': core.H,
            'CNOT': core.CNOT,
            'CY': core.CY,
            'CiZ': core.CIZ,
            'Y2': core.Y2,
            'B45B56': core.B45B56_PRINTED,
            'B65B54': core.B65B54_PRINTED,
        }
        self.assertEqual(set(printed), set(expected))
        for name, matrix in expected.items():
            with self.subTest(name=name):
                np.testing.assert_allclose(printed[name], matrix, atol=1e-15)


class TestBraidAndPhase(fixtures.TestCommon):
    """
    Elementary unitaries.
    """

    def test_b23_on_both_sectors(self):
        """
        SCENARIO:  restrict B23 to the even and the odd sector of two modes

        EXPECTED RESULT:  the printed matrix exactly, in the edge-mode
        convention; the ivanov convention differs by -i
        """
        space = FockSpace(2)
        for sector in ('even', 'odd'):
            with self.subTest(sector=sector):
                basis = sector_basis(space, sector)
                gm = sector_matrix(braid(space, 2, 3, 'mem'), basis)
                np.testing.assert_allclose(gm.matrix, core.B23_MEM, atol=1e-12)

                gm = sector_matrix(braid(space, 2, 3, 'ivanov'), basis)
                np.testing.assert_allclose(gm.matrix, core.B23_IVANOV, atol=1e-12)

    def test_phase_gate_witnesses_parity(self):
        """
        SCENARIO:  R(-pi/4) on the second mode, even and odd sector

        EXPECTED RESULT:  diag(1, i) and diag(i, 1)
        """
        space = FockSpace(2)
        op = phase_gate(space, (3, 4), -np.pi / 4)
        even = sector_matrix(op, sector_basis(space, 'even'))
        odd = sector_matrix(op, sector_basis(space, 'odd'))
        np.testing.assert_allclose(even.matrix, core.R34_EVEN, atol=1e-12)
        np.testing.assert_allclose(odd.matrix, core.R34_ODD, atol=1e-12)

    def test_braid_errors(self):
        """
        SCENARIO:  braid a Majorana with itself, use an unknown convention

        EXPECTED RESULT:  GateError
        """
        space = FockSpace(2)
        with self.assertRaises(GateError):
            braid(space, 4, 4)
        with self.assertRaises(GateError):
            braid(space, 1, 2, 'majorana')
        with self.assertRaises(GateError):
            BraidConvention.resolve('bogus')

    def test_phase_gate_errors(self):
        """
        SCENARIO:  a phase gate on a repeated index and on a bare integer

        EXPECTED RESULT:  GateError
        """
        space = FockSpace(2)
        with self.assertRaises(GateError):
            phase_gate(space, (3, 3), -np.pi / 4)
        with self.assertRaises(GateError):
            phase_gate(space, 3, -np.pi / 4)

    def test_sector_leakage(self):
        """
        SCENARIO:  restrict a single Majorana to the even sector

        EXPECTED RESULT:  SectorLeakageError carrying a leakage of one
        """
        space = FockSpace(2)
        with self.assertRaises(SectorLeakageError) as cm:
            sector_matrix(majorana(space, 1), sector_basis(space, 'even'))
        self.assertAlmostEqual(cm.exception.leakage, 1)


class TestWords(fixtures.TestCommon):
    """
    Braid words of the gate library.
    """

    def test_step_counts(self):
        """
        SCENARIO:  count the braids and phase elements of the dense words

        EXPECTED RESULT:  each inverse phase element counts as three steps
        """
        self.assertEqual(WORDS['CNOT+'].braid_count, 2)
        self.assertEqual(WORDS['CNOT+'].phase_count, 7)
        self.assertEqual(WORDS['CNOT-'].braid_count, 2)
        self.assertEqual(WORDS['CNOT-'].phase_count, 9)
        self.assertEqual(WORDS['Y2'].braid_count, 2)
        self.assertEqual(WORDS['Y2'].phase_count, 2)
        self.assertEqual(WORDS['H'].braid_count, 1)

    def test_word_text(self):
        """
        SCENARIO:  print words with and without a scalar

        EXPECTED RESULT:  factors in operator order, the scalar in front
        """
        self.assertEqual(str(WORDS['SWAP']), 'B32 B21 B43 B32')
        self.assertEqual(str(WORDS['H']), '(0-1i) R12(-pi/4) B23 R12(-pi/4)')

    def test_local_to_global(self):
        """
        SCENARIO:  map the local indices of a dense word onto the relabeled
        frame

        EXPECTED RESULT:  local 3 and 4 land on gamma_3 and gamma_6
        """
        mapping = WORDS['CNOT+'].local_to_global(core.DENSE_FRAME)
        self.assertEqual(mapping, {1: 1, 2: 2, 3: 3, 4: 6, 5: 7, 6: 8})

    def test_local_to_global_errors(self):
        """
        SCENARIO:  give a dense word two modes, or modes sharing an index

        EXPECTED RESULT:  GateError
        """
        with self.assertRaises(GateError):
            WORDS['CNOT+'].local_to_global([(1, 2), (3, 4)])
        with self.assertRaises(GateError):
            WORDS['CNOT+'].local_to_global([(1, 2), (2, 3), (5, 6)])

    def test_words_on_different_mode_counts(self):
        """
        SCENARIO:  compose a one-qubit word with a dense one

        EXPECTED RESULT:  GateError
        """
        with self.assertRaises(GateError):
            WORDS['H'].then(WORDS['CNOT+'])

    def test_gate_word_sectors(self):
        """
        SCENARIO:  ask for the words of two-qubit gates in each sector

        EXPECTED RESULT:  CNOT- is odd by default, CNOT+ has no odd word, CY
        switches word with the sector
        """
        self.assertIs(gate_word('CNOT-'), WORDS['CNOT-'])
        self.assertIs(gate_word('CY', 'odd'), WORDS['CY-'])
        self.assertIs(gate_word('CY'), WORDS['CY+'])
        with self.assertRaisesRegex(GateError, 'odd sector'):
            gate_word('CNOT+', 'odd')

    def test_parity_independence(self):
        """
        SCENARIO:  compare even and odd sector matrices of words

        EXPECTED RESULT:  braids and the mode-A phase gate act alike, the
        phase gate of mode B does not
        """
        self.assertTrue(is_parity_independent('B23'))
        self.assertTrue(is_parity_independent('H'))
        self.assertTrue(is_parity_independent('Z'))
        witness = Word('R34', (R(3, 4),), 2)
        self.assertFalse(is_parity_independent(witness))


class TestNamedGates(fixtures.TestCommon):
    """
    Named gates against their printed references.
    """

    def test_named_gates_match_printed(self):
        """
        SCENARIO:  build the library gates in both conventions

        EXPECTED RESULT:  each equals its printed reference up to the
        recorded phase
        """
        printed = load_reference_matrices()
        names = {
            'B23': 'B23', 'H': 'H', 'CNOT+': 'CNOT', 'CNOT-': 'CNOT',
            'CY': 'CY', 'CiZ': 'CiZ', 'Y2': 'Y2',
        }
        for convention in ('mem', 'ivanov'):
            for name, reference in names.items():
                with self.subTest(name=name, convention=convention):
                    gm = named_gate(name, convention=convention)
                    self.assertAlmostEqual(abs(gm.phase), 1)
                    np.testing.assert_allclose(
                        gm.normalized(), printed[reference], atol=1e-9
                    )

    def test_cy_and_ciz_in_odd_sector(self):
        """
        SCENARIO:  build CY and CiZ from their odd words

        EXPECTED RESULT:  the same printed matrices
        """
        np.testing.assert_allclose(
            named_gate('CY', 'odd').normalized(), core.CY, atol=1e-9
        )
        np.testing.assert_allclose(
            named_gate('CiZ', 'odd').normalized(), core.CIZ, atol=1e-9
        )

    def test_recorded_phases(self):
        """
        SCENARIO:  read the phases of B23 and H in both conventions

        EXPECTED RESULT:  1 in the edge-mode convention, -i per braid in
        the ivanov convention
        """
        self.assertAlmostEqual(named_gate('B23', convention='mem').phase, 1)
        self.assertAlmostEqual(named_gate('B23', convention='ivanov').phase, -1j)
        self.assertAlmostEqual(named_gate('H', convention='mem').phase, 1)
        self.assertAlmostEqual(named_gate('H', convention='ivanov').phase, -1j)

    def test_not_from_braid_is_exact(self):
        """
        SCENARIO:  -i B23^2 in the edge-mode convention

        EXPECTED RESULT:  X without any phase
        """
        gm = named_gate('X', 'even', 'mem')
        np.testing.assert_allclose(gm.matrix, core.X, atol=1e-12)

    def test_phase_gates_are_exact(self):
        """
        SCENARIO:  the three library phase gates

        EXPECTED RESULT:  diag(1, exp(-2i theta)) with unit phase
        """
        expected = {
            'R(-pi/4)': np.diag([1, 1j]),
            'R(-pi/10)': np.diag([1, np.exp(1j * np.pi / 5)]),
            'R(-2pi/5)': np.diag([1, np.exp(4j * np.pi / 5)]),
        }
        for name, matrix in expected.items():
            with self.subTest(name=name):
                gm = named_gate(name)
                self.assertEqual(gm.phase, 1)
                np.testing.assert_allclose(gm.matrix, matrix, atol=1e-12)

    def test_swap_matched_by_moduli(self):
        """
        SCENARIO:  build SWAP and SWAP'

        EXPECTED RESULT:  a PhaseConventionWarning, and the entry moduli of
        the printed matrices
        """
        for name, printed in (
            ('SWAP', core.SWAP_PRINTED), ("SWAP'", core.SWAP_PRIME_PRINTED)
        ):
            with self.subTest(name=name):
                with self.assertWarns(PhaseConventionWarning):
                    gm = named_gate(name)
                np.testing.assert_allclose(
                    np.abs(gm.matrix), np.abs(printed), atol=1e-9
                )

    def test_unicode_spellings(self):
        """
        SCENARIO:  spell CNOT- with a minus sign and R with pi

        EXPECTED RESULT:  the ascii gates
        """
        self.assertEqual(canonical_name('CNOT−'), 'CNOT-')
        self.assertEqual(canonical_name('R(-π/4)'), 'R(-pi/4)')
        np.testing.assert_allclose(
            named_gate('CNOT−').matrix, named_gate('CNOT-').matrix
        )

    def test_unknown_gates(self):
        """
        SCENARIO:  ask for an unknown gate and for a bare sector word

        EXPECTED RESULT:  GateError
        """
        with self.assertRaisesRegex(GateError, 'Unknown gate'):
            named_gate('TOFFOLI')
        with self.assertRaisesRegex(GateError, 'no reference matrix'):
            named_gate('CY+')


class TestIdentities(fixtures.TestCommon):
    """
    Duality and the four-mode braid products.
    """

    def test_duality(self):
        """
        SCENARIO:  run the duality checks in both conventions

        EXPECTED RESULT:  every identity holds up to a unit phase
        """
        for convention in ('mem', 'ivanov'):
            for check in duality_check(convention):
                with self.subTest(check=check.name, convention=convention):
                    self.assertTrue(check.passed)
                    self.assertAlmostEqual(abs(check.phase), 1)

    def test_duality_with_a_wrong_hadamard(self):
        """
        SCENARIO:  substitute the identity for the Hadamard

        EXPECTED RESULT:  the braid duality fails
        """
        checks = {c.name: c for c in duality_check('mem', hadamard=np.eye(2))}
        self.assertFalse(checks['duality-braid'].passed)

    def test_even_sector_products(self):
        """
        SCENARIO:  compare the products of B45, B56 and their inverses with
        the printed 8x8 matrices

        EXPECTED RESULT:  every check passes
        """
        checks = appendix_c_check('mem')
        self.assertEqual(
            [c.name for c in checks],
            ['even-sector-B45B56', 'even-sector-B65B54', 'even-sector-inverse'],
        )
        for check in checks:
            with self.subTest(check=check.name):
                self.assertTrue(check.passed)

    def test_even_sector_products_with_a_flipped_braid(self):
        """
        SCENARIO:  replace B45 by B54

        EXPECTED RESULT:  the B45 B56 product fails by at least one entry
        """
        checks = {c.name: c for c in appendix_c_check('mem', flip_b45=True)}
        check = checks['even-sector-B45B56']
        self.assertFalse(check.passed)
        self.assertGreater(check.deviation, 0.9)


if __name__ == '__main__':
    unittest.main()
