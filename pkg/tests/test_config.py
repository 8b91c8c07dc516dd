"""These tests cover the configuration file and the seed lookup."""

# Standard library imports ...
import contextlib
import os
import unittest
from unittest.mock import patch
import warnings

# Local imports ...
import majsim
from majsim import config
from .fixtures import TestCommon


@contextlib.contextmanager
def chdir(dirname=None):
    """
    This context manager restores the value of the current working directory
    (cwd) after the enclosed code block completes or raises an exception.  If a
    directory name is supplied to the context manager then the cwd is changed
    prior to running the code block.
    """
    curdir = os.getcwd()
    try:
        if dirname is not None:
            os.chdir(dirname)
        yield
    finally:
        os.chdir(curdir)


class TestSuiteConfigFile(TestCommon):
    """
    Locating and reading majsimrc.
    """

    def setUp(self):
        super().setUp()
        patcher = patch.dict(os.environ)
        patcher.start()
        self.addCleanup(patcher.stop)
        os.environ.pop('MAJSIM_SEED', None)

    def write_config(self, text, dirname=None):
        dirname = self.test_dir_path if dirname is None else dirname
        dirname.mkdir(parents=True, exist_ok=True)
        path = dirname / 'majsimrc'
        path.write_text(text)
        return path

    def test_xdg_config_home(self):
        """
        SCENARIO:  XDG_CONFIG_HOME holds majsim/majsimrc

        EXPECTED RESULT:  that file is found and read
        """
        path = self.write_config(
            '[run]\nseed = 99\n', self.test_dir_path / 'majsim'
        )
        os.environ['XDG_CONFIG_HOME'] = self.test_dir
        empty = self.test_dir_path / 'empty'
        empty.mkdir()
        with chdir(empty):
            self.assertEqual(config.get_configdir(), self.test_dir_path / 'majsim')
            self.assertEqual(config.majsimrc_fname(), path)
            self.assertEqual(config.read_config_file('run', 'seed'), '99')

    def test_current_directory_first(self):
        """
        SCENARIO:  a majsimrc in the working directory and another under
        XDG_CONFIG_HOME

        EXPECTED RESULT:  the working directory wins
        """
        self.write_config('[run]\nseed = 1\n', self.test_dir_path / 'majsim')
        local = self.test_dir_path / 'cwd'
        path = self.write_config('[run]\nseed = 2\n', local)
        os.environ['XDG_CONFIG_HOME'] = self.test_dir
        with chdir(local):
            self.assertEqual(config.majsimrc_fname().resolve(), path.resolve())
            self.assertEqual(config.default_seed(), 2)

    def test_home_directory(self):
        """
        SCENARIO:  no XDG_CONFIG_HOME on a POSIX system

        EXPECTED RESULT:  the configuration directory is under HOME
        """
        os.environ.pop('XDG_CONFIG_HOME', None)
        os.environ['HOME'] = self.test_dir
        with patch('majsim.config.platform.system', return_value='Linux'):
            actual = config.get_configdir()
        self.assertEqual(actual, self.test_dir_path / '.config' / 'majsim')

    def test_missing_section_or_key(self):
        """
        SCENARIO:  ask for settings the file does not carry

        EXPECTED RESULT:  None
        """
        path = self.write_config('[braid]\nconvention = ivanov\n')
        with patch('majsim.config.majsimrc_fname', return_value=path):
            self.assertIsNone(config.read_config_file('run', 'seed'))
            self.assertIsNone(config.read_config_file('braid', 'phase'))
            self.assertEqual(
                config.read_config_file('braid', 'convention'), 'ivanov'
            )

    def test_load_options(self):
        """
        SCENARIO:  the file sets the convention and the thread count

        EXPECTED RESULT:  both options are applied
        """
        path = self.write_config(
            '[braid]\nconvention = ivanov\n[run]\nnum_threads = 3\n'
        )
        with patch('majsim.config.majsimrc_fname', return_value=path):
            config.load_options()
        self.assertEqual(majsim.get_option('braid.convention'), 'ivanov')
        self.assertEqual(majsim.get_option('run.num_threads'), 3)

    def test_load_bad_options(self):
        """
        SCENARIO:  the file sets an unknown convention and zero threads

        EXPECTED RESULT:  a warning for each, the options keep their defaults
        """
        path = self.write_config(
            '[braid]\nconvention = abelian\n[run]\nnum_threads = 0\n'
        )
        with patch('majsim.config.majsimrc_fname', return_value=path):
            with warnings.catch_warnings(record=True) as w:
                warnings.simplefilter('always')
                config.load_options()
        self.assertEqual(len(w), 2)
        self.assertEqual(majsim.get_option('braid.convention'), 'mem')
        self.assertEqual(majsim.get_option('run.num_threads'), 1)


@patch("majsim.config.majsimrc_fname", lambda: None)
class TestSuiteSeed(TestCommon):
    """
    The seed used when none is given on the command line.

    This suite assumes NO rc config file, so we have to force that code path
    to not run in case we are actively using it.
    """

    def setUp(self):
        super().setUp()
        patcher = patch.dict(os.environ)
        patcher.start()
        self.addCleanup(patcher.stop)
        os.environ.pop('MAJSIM_SEED', None)

    def test_option(self):
        """
        SCENARIO:  neither the environment nor a file provide a seed

        EXPECTED RESULT:  the run.seed option
        """
        self.assertEqual(config.default_seed(), 0)
        majsim.set_option('run.seed', 8)
        self.assertEqual(config.default_seed(), 8)

    def test_environment(self):
        """
        SCENARIO:  MAJSIM_SEED is set

        EXPECTED RESULT:  it takes precedence over the option
        """
        os.environ['MAJSIM_SEED'] = '123'
        majsim.set_option('run.seed', 8)
        self.assertEqual(config.default_seed(), 123)

    def test_bad_environment(self):
        """
        SCENARIO:  MAJSIM_SEED is negative, then not a number

        EXPECTED RESULT:  a warning and the option seed
        """
        for value in ('-4', 'lots'):
            with self.subTest(value=value):
                os.environ['MAJSIM_SEED'] = value
                with self.assertWarns(UserWarning):
                    seed = config.default_seed()
                self.assertEqual(seed, 0)

    def test_file_seed(self):
        """
        SCENARIO:  the configuration file carries a seed

        EXPECTED RESULT:  it is used when MAJSIM_SEED is unset
        """
        with patch('majsim.config.read_config_file', return_value='31'):
            self.assertEqual(config.default_seed(), 31)


if __name__ == '__main__':
    unittest.main()
