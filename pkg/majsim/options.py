"""Manage majsim run-time settings."""

# Standard library imports
import copy


_original_options = {
    "braid.convention": "mem",
    "print.precision": 12,
    "run.num_threads": 1,
    "run.seed": 0,
    "tolerance.algebra": 1e-12,
    "tolerance.forced": 1e-12,
    "tolerance.sequence": 1e-9,
}
_options = copy.deepcopy(_original_options)

_CONVENTIONS = ("mem", "ivanov")


def set_option(key, value):
    """Set the value of the specified option.

    Available options:

        braid.convention
        print.precision
        run.num_threads
        run.seed
        tolerance.algebra
        tolerance.forced
        tolerance.sequence

    Parameters
    ----------
    key : str
        Name of a single option.
    value :
        New value of option.

    Option Descriptions
    -------------------
    braid.convention : str
        Phase convention of an elementary exchange, either "mem" (edge modes)
        or "ivanov".  The two differ by a factor of i per braid.
        [default: "mem"]
    print.precision : int
        Number of significant digits used when rendering complex numbers in
        reports. [default: 12]
    run.num_threads : int
        Number of worker threads used to run independent shots.
        [default: 1]
    run.seed : int
        Seed used when neither the command line, the MAJSIM_SEED environment
        variable nor the majsimrc file provide one. [default: 0]
    tolerance.algebra : float
        Entrywise tolerance for algebraic identities such as the Majorana
        anticommutators. [default: 1e-12]
    tolerance.forced : float
        A forced measurement outcome whose Born probability falls below this
        value is rejected as unreachable. [default: 1e-12]
    tolerance.sequence : float
        Tolerance for composed braid sequences, unitarity and sector
        leakage. [default: 1e-9]

    Examples
    --------
    >>> majsim.set_option('braid.convention', 'ivanov')
    >>> majsim.reset_option('all')

    See also
    --------
    get_option
    """
    if key not in _options.keys():
        raise KeyError(f"{key} not valid.")

    if key == "braid.convention" and value not in _CONVENTIONS:
        msg = (
            f"Braid convention must be one of {', '.join(_CONVENTIONS)}, "
            f"not {value!r}."
        )
        raise ValueError(msg)

    if key.startswith("tolerance.") and not value > 0:
        raise ValueError(f"{key} must be positive, not {value!r}.")

    if key in ("print.precision", "run.num_threads"):
        if not isinstance(value, int) or value < 1:
            raise ValueError(f"{key} must be a positive integer.")

    if key == "run.seed" and not (0 <= value < 2 ** 64):
        raise ValueError("run.seed must be a non-negative 64-bit integer.")

    _options[key] = value


def get_option(key):
    """Return the value of the specified option

    Parameter
    ---------
    key : str
        Name of a single option.

    Returns
    -------
    result : the value of the option.

    See also
    --------
    set_option
    """
    if key not in _options.keys():
        raise KeyError(f"{key} not valid.")
    return _options[key]


def reset_option(key):
    """Reset one or more options to their default value.

    Pass "all" as argument to reset all options.

    Parameter
    ---------
    key : str
        Name of a single option.
    """
    global _options
    if key == "all":
        _options = copy.deepcopy(_original_options)
    else:
        if key not in _options.keys():
            raise KeyError(f"{key} not valid.")
        _options[key] = _original_options[key]
