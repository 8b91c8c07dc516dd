"""Sparse, dense and intermediate bases of the mixed encoding, and the
logical encode/decode maps of two logical qubits.

Four-mode bases are stated over the modes A, B, C, D.  The bases produced
after the entangling braid are read in the relabeled frame that pairs
(gamma_1, gamma_2), (gamma_3, gamma_6), (gamma_4, gamma_5), (gamma_7, gamma_8).
"""

# Standard library imports ...
from dataclasses import dataclass
from functools import cache
import logging

# Third party library imports ...
import numpy as np

# Local imports ...
from . import core
from .fock import FockSpace, Pairing, StateVector, pairing_basis
from .gates import SectorLeakageError, braid
from .options import get_option

logger = logging.getLogger(__name__)

LOGICAL_LABELS = ("00", "01", "10", "11")


class EncodingError(ValueError):
    """Raise this exception for a space of the wrong size or a malformed
    logical vector.
    """

    pass


def relabeled_pairing():
    """The pairing of the dense stage of the mixed encoding."""
    return Pairing(core.RELABELED_PAIRS)


@dataclass(frozen=True, eq=False)
class LogicalTwoQubit:
    """Normalized state of two logical qubits over |00>, |01>, |10>, |11>."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape != (4,):
            raise EncodingError(
                f"A two-qubit state has 4 amplitudes, not {amplitudes.size}."
            )
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > get_option("tolerance.sequence"):
            raise EncodingError(f"Logical state has norm {norm}, not 1.")
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def from_label(cls, label):
        """Computational basis state such as '10'."""
        if label not in LOGICAL_LABELS:
            raise EncodingError(f"'{label}' is not a two-qubit label.")
        amplitudes = np.zeros(4, dtype=complex)
        amplitudes[LOGICAL_LABELS.index(label)] = 1
        return cls(amplitudes)

    def __str__(self):
        terms = [
            f"{core.format_complex(a, precision=6)}|{label}>"
            for label, a in zip(LOGICAL_LABELS, self.amplitudes)
            if abs(a) > get_option("tolerance.sequence")
        ]
        return " + ".join(terms)

    def label(self):
        """The basis label if the state is a basis state up to phase."""
        k = int(np.argmax(np.abs(self.amplitudes)))
        if abs(abs(self.amplitudes[k]) - 1) <= get_option("tolerance.sequence"):
            return LOGICAL_LABELS[k]
        return None


@dataclass(frozen=True, eq=False)
class EncodedBasis:
    """A named, ordered set of orthonormal states.

    Attributes
    ----------
    name : str
    labels : tuple
        One label per vector; for kets of the relabeled frame the labels
        refer to that frame.
    vectors : tuple
        StateVector per label.
    pairing : Pairing
        Frame in which the labels are read.
    provenance : str
        The printed, possibly unnormalized, form.
    """

    name: str
    labels: tuple
    vectors: tuple
    pairing: Pairing
    provenance: str = ""

    def __post_init__(self):
        v = self.matrix()
        tol = get_option("tolerance.sequence")
        if np.max(np.abs(v.conj().T @ v - np.eye(v.shape[1]))) > tol:
            raise EncodingError(f"Basis {self.name} is not orthonormal.")

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(zip(self.labels, self.vectors))

    @property
    def space(self):
        return self.vectors[0].space

    def matrix(self):
        """Columns are the basis vectors over the canonical basis."""
        return np.column_stack([v.amplitudes for v in self.vectors])

    def projector(self):
        v = self.matrix()
        return v @ v.conj().T

    def coefficients(self, state):
        """Expansion coefficients of a state in this basis."""
        return self.matrix().conj().T @ state.amplitudes


def _require(space, n_modes, what):
    if space is None:
        return FockSpace(n_modes)
    if space.n_modes != n_modes:
        raise EncodingError(
            f"The {what} needs {n_modes} modes, the space has {space.n_modes}."
        )
    return space


def ket_sum(space, terms, pairing=None):
    """
    Normalized superposition of occupation kets of a pairing.

    Parameters
    ----------
    space : FockSpace
    terms : dict
        Occupation label to (unnormalized) amplitude.
    pairing : Pairing, optional
        Frame of the labels, canonical by default.
    """
    pairing = space.canonical_pairing if pairing is None else pairing
    if pairing == space.canonical_pairing:
        kets = {label: space.basis_state(label) for label in terms}
    else:
        kets = dict(pairing_basis(space, pairing))
    amplitudes = np.zeros(space.dim, dtype=complex)
    for label, amp in terms.items():
        if label not in kets:
            raise EncodingError(f"'{label}' is not an occupation string.")
        amplitudes += amp * kets[label].amplitudes
    return StateVector(space, amplitudes, pairing, normalize=True)


def _ket_basis(name, space, kets, pairing=None, provenance=""):
    pairing = space.canonical_pairing if pairing is None else pairing
    vectors = tuple(ket_sum(space, terms, pairing) for terms in kets)
    labels = tuple(
        "+".join(terms) if len(terms) > 1 else next(iter(terms))
        for terms in kets
    )
    logger.debug(f"Built basis {name}.")
    return EncodedBasis(name, labels, vectors, pairing, provenance)


def _printed(kets):
    """Unnormalized printed form of a list of ket superpositions."""
    rows = []
    for terms in kets:
        rows.append(" ".join(
            f"({core.format_complex(a, precision=3)})|{label}>"
            for label, a in terms.items()
        ))
    return "; ".join(rows)


def sparse_even_basis(space=None):
    """
    Computational two-qubit basis of the sparse encoding.

    (|0000>, |0011>, |1100>, |1111>), every vector with
    gamma_1 gamma_2 gamma_3 gamma_4 = gamma_5 gamma_6 gamma_7 gamma_8 = -1.
    """
    space = _require(space, 4, "sparse encoding")
    kets = [{label: 1} for label in core.SPARSE_EVEN_KETS]
    return _ket_basis("sparse-even", space, kets, provenance=_printed(kets))


def sparse_noncomp_basis(space=None):
    """Non-computational even states (|0101>, |0110>, |1001>, |1010>)."""
    space = _require(space, 4, "sparse encoding")
    kets = [{label: 1} for label in core.SPARSE_NONCOMP_KETS]
    return _ket_basis("sparse-noncomp", space, kets, provenance=_printed(kets))


def dense_basis(space=None, parity="even"):
    """
    Two-qubit basis of the dense encoding over three modes.

    Parameters
    ----------
    space : FockSpace, optional
        Three-mode space.
    parity : str
        'even' for (|000>, |011>, |101>, |110>), 'odd' for
        (|001>, |010>, |100>, |111>).
    """
    space = _require(space, 3, "dense encoding")
    if parity not in ("even", "odd"):
        raise EncodingError(f"Parity must be 'even' or 'odd', not {parity!r}.")
    labels = core.DENSE_EVEN_KETS if parity == "even" else core.DENSE_ODD_KETS
    kets = [{label: 1} for label in labels]
    name = "dense-plus" if parity == "even" else "dense-minus"
    return _ket_basis(name, space, kets, provenance=_printed(kets))


def sp_printed_basis(space=None):
    """
    The printed superpositions in the relabeled frame, normalized.

    Their support, moduli and Pi(4,5) probabilities are those of the
    entangling braid on the sparse basis; the relative phase between the
    Pi(4,5) = +1 and -1 terms is not, see `sp_basis`.
    """
    space = _require(space, 4, "superposition basis")
    return _ket_basis(
        "sp-printed", space, core.SP_KETS, relabeled_pairing(),
        _printed(core.SP_KETS)
    )


def sp_basis(space=None):
    """
    Superposition of computational and non-computational states reached by
    the entangling braid, read in the relabeled frame.

    Vector k is B45 applied to sparse computational vector k.  Its phase is
    fixed so that the Pi(4,5) = +1 term carries the printed amplitude; the
    Pi(4,5) = -1 term then differs from the printed one by the relative
    phase of the braid.  The labels name the printed support.
    """
    space = _require(space, 4, "superposition basis")
    pairing = relabeled_pairing()
    slot = core.RELABELED_PAIRS.index((4, 5))
    b45 = braid(space, 4, 5)

    vectors = []
    for terms, (_, ket) in zip(core.SP_KETS, sparse_even_basis(space)):
        image = b45 @ ket
        components = image.components(pairing)
        anchor = next(label for label in terms if label[slot] == "0")
        phase = terms[anchor] / components[anchor]
        phase /= abs(phase)
        vectors.append(StateVector(space, image.amplitudes * phase, pairing))

    labels = tuple("+".join(terms) for terms in core.SP_KETS)
    provenance = _printed(core.SP_KETS)
    logger.debug("Built basis sp.")
    return EncodedBasis("sp", labels, tuple(vectors), pairing, provenance)


def collapsed_even_basis(space=None):
    """Dense-encoded basis left by an empty pair C' (relabeled frame)."""
    space = _require(space, 4, "collapsed basis")
    kets = core.COLLAPSED_EVEN_KETS
    return _ket_basis(
        "dense-collapsed-even", space, kets, relabeled_pairing(), _printed(kets)
    )


def collapsed_odd_basis(space=None):
    """Basis left by an occupied pair C', with its printed signs."""
    space = _require(space, 4, "collapsed basis")
    kets = core.COLLAPSED_ODD_KETS
    return _ket_basis(
        "dense-collapsed-odd", space, kets, relabeled_pairing(), _printed(kets)
    )


def corrected_basis(space=None):
    """
    The occupied collapse after flipping the pairs C' and D.

    It spans the same dense-encoded states as the even collapse, with the
    first two and the last two vectors exchanged up to sign.
    """
    space = _require(space, 4, "corrected basis")
    kets = core.CORRECTED_KETS
    return _ket_basis(
        "corrected", space, kets, relabeled_pairing(), _printed(kets)
    )


@cache
def _computational_basis(space):
    return sparse_even_basis(space)


BASES = {
    "sparse-even": sparse_even_basis,
    "sparse-noncomp": sparse_noncomp_basis,
    "dense-plus": lambda space=None: dense_basis(space, "even"),
    "dense-minus": lambda space=None: dense_basis(space, "odd"),
    "sp": sp_basis,
    "sp-printed": sp_printed_basis,
    "dense-collapsed-even": collapsed_even_basis,
    "dense-collapsed-odd": collapsed_odd_basis,
    "corrected": corrected_basis,
}


def basis_modes(name):
    """Number of fermion modes a named basis lives on."""
    if name not in BASES:
        raise EncodingError(f"Unknown basis '{name}'.")
    return 3 if name in ("dense-plus", "dense-minus") else 4


def named_basis(name, space=None):
    """Look up an encoded basis by name."""
    try:
        factory = BASES[name]
    except KeyError:
        msg = f"Unknown basis '{name}'.  Known bases:  {', '.join(BASES)}."
        raise EncodingError(msg) from None
    return factory(space)


def encode_logical(logical, space=None):
    """
    Map a two-qubit state onto the sparse computational basis.

    |00>, |01>, |10>, |11> go to |0000>, |0011>, |1100>, |1111>.

    Parameters
    ----------
    logical : LogicalTwoQubit, label or 4-vector
    space : FockSpace, optional
        Four-mode space.

    Returns
    -------
    StateVector
    """
    if isinstance(logical, str):
        logical = LogicalTwoQubit.from_label(logical)
    elif not isinstance(logical, LogicalTwoQubit):
        logical = LogicalTwoQubit(logical)
    basis = _computational_basis(_require(space, 4, "sparse encoding"))
    amplitudes = basis.matrix() @ logical.amplitudes
    return StateVector(basis.space, amplitudes)


def decode_logical(state):
    """
    Read a state of the sparse computational span as two logical qubits.

    Raises
    ------
    SectorLeakageError
        If the state has weight outside the computational span.
    """
    basis = _computational_basis(_require(state.space, 4, "sparse encoding"))
    coefficients = basis.coefficients(state)
    residual = state.amplitudes - basis.matrix() @ coefficients
    leakage = float(np.linalg.norm(residual))
    if leakage > get_option("tolerance.sequence"):
        msg = (
            f"State leaks out of the computational span "
            f"(leakage {leakage:.3g})."
        )
        raise SectorLeakageError(msg, leakage)
    return LogicalTwoQubit(coefficients)
