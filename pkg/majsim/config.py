"""
Locate and read the majsim configuration file.
"""

from configparser import ConfigParser, NoOptionError, NoSectionError
import os
import pathlib
import platform
import warnings

from . import options


def majsimrc_fname():
    """Return the path to the configuration file.

    Search order:
        1) current working directory
        2) environ var XDG_CONFIG_HOME
        3) $HOME/.config/majsim/majsimrc
    """

    # Current directory.
    path = pathlib.Path.cwd() / "majsimrc"
    if path.exists():
        return path

    confdir_path = get_configdir()
    if confdir_path is not None:
        path = confdir_path / "majsimrc"
        if path.exists():
            return path

    # didn't find a configuration file.
    return None


def read_config_file(section, key):
    """
    Extract a single setting from the configuration file.

    Parameters
    ----------
    section : str
        INI section, e.g. 'run' or 'braid'
    key : str
        Setting within the section, e.g. 'seed'

    Returns
    -------
    value : None or str
        None if there is no configuration file or it does not carry the
        setting, otherwise the raw string value.
    """
    filename = majsimrc_fname()
    if filename is None:
        return None

    parser = ConfigParser()
    parser.read(filename)
    try:
        value = parser.get(section, key)
    except (NoOptionError, NoSectionError):
        value = None
    return value


def _parse_seed(value, source):
    """Turn a seed string into an int, or warn and return None."""
    try:
        seed = int(value)
    except (TypeError, ValueError):
        seed = -1
    if not 0 <= seed < 2 ** 64:
        msg = (
            f"Ignoring the seed {value!r} from {source}, it is not a "
            f"non-negative 64-bit integer."
        )
        warnings.warn(msg, UserWarning)
        return None
    return seed


def default_seed():
    """
    Determine the seed to use when none is given explicitly.

    The MAJSIM_SEED environment variable has precedence, then the [run] seed
    setting of the configuration file, then the run.seed option.

    Returns
    -------
    int
    """
    if "MAJSIM_SEED" in os.environ:
        seed = _parse_seed(os.environ["MAJSIM_SEED"], "MAJSIM_SEED")
        if seed is not None:
            return seed

    value = read_config_file("run", "seed")
    if value is not None:
        seed = _parse_seed(value, "majsimrc")
        if seed is not None:
            return seed

    return options.get_option("run.seed")


def load_options():
    """
    Apply the [braid] and [run] settings of the configuration file to the
    run-time options.  Bad values are reported with a warning and skipped.
    """
    settings = (
        ("braid", "convention", "braid.convention", str),
        ("run", "num_threads", "run.num_threads", int),
    )
    for section, key, option, cast in settings:
        value = read_config_file(section, key)
        if value is None:
            continue
        try:
            options.set_option(option, cast(value.strip()))
        except ValueError as e:
            msg = f"Ignoring [{section}] {key} = {value!r} in majsimrc:  {e}"
            warnings.warn(msg, UserWarning)


def get_configdir():
    """Return string representing the configuration directory.

    Default is $HOME/.config/majsim.  You can override this with the
    XDG_CONFIG_HOME environment variable.
    """
    if "XDG_CONFIG_HOME" in os.environ:
        return pathlib.Path(os.environ["XDG_CONFIG_HOME"]) / "majsim"

    if "HOME" in os.environ and platform.system() != "Windows":
        # HOME is set by WinPython to something unusual, so we don't
        # necessarily want that.
        return pathlib.Path(os.environ["HOME"]) / ".config" / "majsim"

    # Last stand.  Should handle windows... others?
    return pathlib.Path.home() / "majsim"
