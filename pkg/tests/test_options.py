"""
Tests for the run-time options.
"""

# Standard library imports ...
import unittest

# Local imports ...
import majsim
from majsim.core import format_complex
from . import fixtures


class TestSuite(fixtures.TestCommon):
    """
    set_option, get_option and reset_option.
    """

    def test_defaults(self):
        """
        SCENARIO:  read the options of a fresh session

        EXPECTED RESULT:  the documented defaults
        """
        self.assertEqual(majsim.get_option('braid.convention'), 'mem')
        self.assertEqual(majsim.get_option('print.precision'), 12)
        self.assertEqual(majsim.get_option('run.num_threads'), 1)
        self.assertEqual(majsim.get_option('run.seed'), 0)
        self.assertEqual(majsim.get_option('tolerance.sequence'), 1e-9)

    def test_reset_one_and_all(self):
        """
        SCENARIO:  change two options, reset one, then all

        EXPECTED RESULT:  the defaults come back
        """
        majsim.set_option('braid.convention', 'ivanov')
        majsim.set_option('run.seed', 5)
        majsim.reset_option('run.seed')
        self.assertEqual(majsim.get_option('run.seed'), 0)
        self.assertEqual(majsim.get_option('braid.convention'), 'ivanov')
        majsim.reset_option('all')
        self.assertEqual(majsim.get_option('braid.convention'), 'mem')

    def test_unknown_key(self):
        """
        SCENARIO:  use an option that does not exist

        EXPECTED RESULT:  KeyError from each of the three functions
        """
        with self.assertRaises(KeyError):
            majsim.set_option('print.short', True)
        with self.assertRaises(KeyError):
            majsim.get_option('print.short')
        with self.assertRaises(KeyError):
            majsim.reset_option('print.short')

    def test_bad_values(self):
        """
        SCENARIO:  set options to values outside their range

        EXPECTED RESULT:  ValueError, the option keeps its value
        """
        cases = (
            ('braid.convention', 'abelian'),
            ('tolerance.algebra', 0),
            ('tolerance.forced', -1e-3),
            ('print.precision', 0),
            ('run.num_threads', 2.5),
            ('run.seed', -1),
            ('run.seed', 2 ** 64),
        )
        for key, value in cases:
            with self.subTest(key=key, value=value):
                with self.assertRaises(ValueError):
                    majsim.set_option(key, value)
        self.assertEqual(majsim.get_option('run.seed'), 0)

    def test_print_precision(self):
        """
        SCENARIO:  lower the print precision

        EXPECTED RESULT:  complex numbers are rendered with fewer digits
        """
        z = (1 + 1j) / 2 ** 0.5
        self.assertEqual(format_complex(z), '0.707106781187+0.707106781187i')
        majsim.set_option('print.precision', 3)
        self.assertEqual(format_complex(z), '0.707+0.707i')


if __name__ == '__main__':
    unittest.main()
