"""Core definitions to be shared amongst the modules.

Reference matrices and kets are stored exactly as printed in the literature
on the sparse-dense mixed encoding, so that constructed gates can be checked
against them.  Kets are keyed by occupation strings; those of the relabeled
frame refer to the pairing RELABELED_PAIRING below.
"""

# Third party library imports ...
import numpy as np

# Local imports ...
from .options import get_option

_S = 1 / np.sqrt(2)

# Pairings of the four-mode pipeline.  The relabeled frame pairs gamma_6 with
# gamma_3 and gamma_4 with gamma_5.
CANONICAL_PAIRS = ((1, 2), (3, 4), (5, 6), (7, 8))
RELABELED_PAIRS = ((1, 2), (3, 6), (4, 5), (7, 8))

# Modes (A, B', D) of the relabeled frame that carry the two dense qubits.
DENSE_FRAME = ((1, 2), (3, 6), (7, 8))

MODE_NAMES = ("A", "B", "C", "D")

# One-qubit references.
H = _S * np.array([[1, 1], [1, -1]], dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
B23_MEM = _S * np.array([[1j, 1], [1, 1j]])
B23_IVANOV = _S * np.array([[1, -1j], [-1j, 1]])

# Phase gate of the second mode restricted to the even and the odd one-qubit
# basis.
R34_EVEN = np.diag([1, 1j])
R34_ODD = np.diag([1j, 1])

# Two-qubit references over the logical order |00>, |01>, |10>, |11>.
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CIZ = np.diag([1, 1, 1j, -1j])
CY = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]], dtype=complex
)
Y2 = np.block([[Y, np.zeros((2, 2))], [np.zeros((2, 2)), Y.T]])

# Dense two-qubit gates over the even dense basis |000>, |011>, |101>, |110>.
R12_DENSE = np.diag([1, 1, 1j, 1j])
R34_DENSE = np.diag([1, 1j, 1, 1j])
R56_DENSE = np.diag([1, 1j, 1j, 1])
B45_DENSE = _S * np.array(
    [[1j, 1, 0, 0], [1, 1j, 0, 0], [0, 0, 1j, 1], [0, 0, 1, 1j]]
)

# The two-mode SWAP family as printed, without and with the printed 1/sqrt(2)
# prefactor.
SWAP_PRINTED = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
SWAP_PRIME_PRINTED = np.array(
    [[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
SWAP_PREFACTOR = _S

# The two 8x8 braid products of the even four-mode sector.
EVEN_SECTOR_LABELS = (
    "0000", "0011", "0101", "0110", "1001", "1010", "1100", "1111",
)
_B45B56_BLOCK = np.array(
    [[1j, 0, 0, 1], [0, -1, 1j, 0], [0, 1, 1j, 0], [1j, 0, 0, -1]]
)
_B65B54_BLOCK = np.array(
    [[-1, 0, 0, -1], [0, 1j, -1j, 0], [0, -1, -1, 0], [-1j, 0, 0, 1j]]
)
B45B56_PRINTED = _S * np.kron(np.eye(2), _B45B56_BLOCK)
B65B54_PRINTED = _S * np.kron(np.eye(2), _B65B54_BLOCK)

# Kets of the four-mode pipeline, unnormalized as printed.
SPARSE_EVEN_KETS = ("0000", "0011", "1100", "1111")
SPARSE_NONCOMP_KETS = ("0101", "0110", "1001", "1010")
DENSE_EVEN_KETS = ("000", "011", "101", "110")
DENSE_ODD_KETS = ("001", "010", "100", "111")

# Superposition produced by the entangling braid, relabeled frame.
SP_KETS = (
    {"0000": 1j, "0110": 1},
    {"0011": -1, "0101": 1j},
    {"1010": 1, "1100": 1j},
    {"1001": 1j, "1111": -1},
)
# Collapse on an empty pair C', relabeled frame.
COLLAPSED_EVEN_KETS = (
    {"0000": 1}, {"0101": 1}, {"1100": 1}, {"1001": 1},
)
# Collapse on an occupied pair C', relabeled frame.
COLLAPSED_ODD_KETS = (
    {"0110": 1}, {"0011": -1}, {"1010": 1}, {"1111": -1},
)
# The occupied collapse after X_C (x) X_D, relabeled frame.
CORRECTED_KETS = (
    {"0101": 1}, {"0000": -1}, {"1001": 1}, {"1100": -1},
)


def format_complex(z, precision=None):
    """
    Render a complex number as 're+imi' with a fixed number of significant
    digits.  Negative zero is printed as zero.

    Parameters
    ----------
    z : complex
    precision : int, optional
        Significant digits, defaults to the print.precision option.

    Examples
    --------
    >>> from majsim.core import format_complex
    >>> format_complex(0.5 - 1j, precision=3)
    '0.5-1i'
    """
    if precision is None:
        precision = get_option("print.precision")
    z = complex(z)
    re = z.real + 0.0
    im = z.imag + 0.0
    re_text = format_real(re, precision)
    im_text = format_real(abs(im), precision)
    sign = "-" if im < 0 and im_text != "0" else "+"
    return f"{re_text}{sign}{im_text}i"


def format_real(x, precision):
    if abs(x) < 10.0 ** (-precision):
        return "0"
    text = f"{x:.{precision}g}"
    if text in ("-0", "0", "-0.0"):
        return "0"
    return text
