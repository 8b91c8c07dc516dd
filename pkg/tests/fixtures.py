"""
Test fixtures common to more than one test point.
"""

# Standard library imports
import pathlib
import shutil
import tempfile
import unittest

# Local imports
import majsim


class TestCommon(unittest.TestCase):
    """
    Common setup for many if not all tests.
    """

    def setUp(self):
        # Supply paths to the shipping scripts.
        self.process1 = majsim.data.process1()
        self.process2 = majsim.data.process2()
        self.discard = majsim.data.discard()

        # Create a temporary directory to be cleaned up following each test,
        # as well as a name for a circuit script.
        self.test_dir = tempfile.mkdtemp()
        self.test_dir_path = pathlib.Path(self.test_dir)
        self.temp_mbc_filename = self.test_dir_path / "test.mbc"

        majsim.reset_option('all')

    def tearDown(self):
        shutil.rmtree(self.test_dir)
        majsim.reset_option('all')

    def write_circuit(self, text):
        """Write circuit text into the temporary script, return its path."""
        self.temp_mbc_filename.write_text(text, encoding='utf-8')
        return str(self.temp_mbc_filename)
