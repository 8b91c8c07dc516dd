"""Fermionic Fock space, Majorana operators and fermion parity observables.

The Majorana operators follow the Jordan-Wigner construction

    gamma_{2k-1} = Z_1 ... Z_{k-1} X_k
    gamma_{2k}   = Z_1 ... Z_{k-1} Y_k

with |0> = (1, 0) on every mode and mode 1 the most significant bit of a
basis index.  Psi_k = (gamma_{2k-1} + i gamma_{2k}) / 2 then annihilates mode
k and every parity operator of the canonical pairing is diagonal.
"""

# Standard library imports ...
from dataclasses import dataclass
from functools import cache
import logging

# Third party library imports ...
import numpy as np
from scipy import sparse

# Local imports ...
from .options import get_option

logger = logging.getLogger(__name__)

# Desk-scale cap on the number of fermion modes.
MAX_MODES = 12

_I2 = sparse.identity(2, dtype=complex, format="csr")
_X = sparse.csr_matrix([[0, 1], [1, 0]], dtype=complex)
_Y = sparse.csr_matrix([[0, -1j], [1j, 0]], dtype=complex)
_Z = sparse.csr_matrix([[1, 0], [0, -1]], dtype=complex)


class FockSpaceError(ValueError):
    """Raise this exception for a bad mode count, Majorana index, pairing,
    dimension or amplitude vector.
    """

    pass


@dataclass(frozen=True)
class Pairing:
    """A perfect matching of Majorana indices into ordered pairs.

    Pair k = (a, b) defines the fermion mode Psi_k = (gamma_a + i gamma_b)/2,
    so the order within a pair is significant.

    Attributes
    ----------
    pairs : tuple
        Ordered tuple of (a, b) Majorana index pairs, 1-based.
    """

    pairs: tuple

    def __post_init__(self):
        try:
            pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        except (TypeError, ValueError) as e:
            raise FockSpaceError(f"Malformed pairing {self.pairs!r}.") from e
        object.__setattr__(self, "pairs", pairs)

        indices = sorted(idx for pair in pairs for idx in pair)
        expected = list(range(1, 2 * len(pairs) + 1))
        if len(pairs) == 0 or indices != expected:
            msg = (
                f"{list(pairs)} is not a perfect matching of the Majorana "
                f"indices 1..{2 * len(pairs)}."
            )
            raise FockSpaceError(msg)

    @classmethod
    def canonical(cls, n_modes):
        """Pairing with mode k = (gamma_{2k-1}, gamma_{2k})."""
        return cls(tuple((2 * k + 1, 2 * k + 2) for k in range(n_modes)))

    @property
    def n_modes(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, idx):
        return self.pairs[idx]

    def __str__(self):
        return "[" + ", ".join(f"({a},{b})" for a, b in self.pairs) + "]"


@dataclass(frozen=True)
class FockSpace:
    """The 2**n_modes dimensional state space over n_modes fermion modes.

    Basis states are ordered lexicographically by occupation bit-string
    n_1 n_2 ... n_m, vacuum first.
    """

    n_modes: int

    def __post_init__(self):
        n = self.n_modes
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise FockSpaceError(f"The mode count must be an integer, not {n!r}.")
        if n < 1:
            raise FockSpaceError(f"The mode count must be positive, not {n}.")
        if n > MAX_MODES:
            msg = f"The mode count {n} exceeds cap of {MAX_MODES} modes."
            raise FockSpaceError(msg)

    @property
    def n_majoranas(self):
        return 2 * self.n_modes

    @property
    def dim(self):
        return 2 ** self.n_modes

    @property
    def canonical_pairing(self):
        return Pairing.canonical(self.n_modes)

    def labels(self):
        """Occupation bit-strings of the canonical basis, in basis order."""
        return [format(k, f"0{self.n_modes}b") for k in range(self.dim)]

    def basis_state(self, label):
        """Return the canonical basis state with the given occupation string.

        Parameters
        ----------
        label : str
            Occupation bit-string such as '0110', one bit per mode.
        """
        if len(label) != self.n_modes or set(label) - {"0", "1"}:
            msg = (
                f"'{label}' is not an occupation string for "
                f"{self.n_modes} modes."
            )
            raise FockSpaceError(msg)
        amplitudes = np.zeros(self.dim, dtype=complex)
        amplitudes[int(label, 2)] = 1
        return StateVector(self, amplitudes)

    def identity(self):
        return Operator(self, sparse.identity(self.dim, format="csr"), "I")

    def check_index(self, i):
        """Verify that i is a Majorana index of this space."""
        if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
            raise FockSpaceError(f"Majorana index {i!r} is not an integer.")
        if not 1 <= i <= self.n_majoranas:
            msg = (
                f"Majorana index {i} is out of range 1..{self.n_majoranas}."
            )
            raise FockSpaceError(msg)

    def check_distinct(self, *indices):
        """Verify that the indices are valid and pairwise distinct."""
        for i in indices:
            self.check_index(i)
        if len(set(indices)) != len(indices):
            msg = f"Majorana indices {indices} must be distinct."
            raise FockSpaceError(msg)


def _max_abs(m):
    """Largest entry modulus of a sparse or dense matrix."""
    if sparse.issparse(m):
        return float(abs(m).max()) if m.nnz else 0.0
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


class Operator:
    """A complex matrix acting on a whole Fock space.

    The matrix is held in compressed sparse row form since braids, parity
    observables and their short products are sparse.

    Attributes
    ----------
    space : FockSpace
        Space acted upon.
    description : str
        How the operator was built, e.g. 'B45' or '-i gamma_4 gamma_5'.
    """

    def __init__(self, space, matrix, description=""):
        m = sparse.csr_matrix(matrix, dtype=complex)
        if m.shape != (space.dim, space.dim):
            msg = (
                f"A {m.shape[0]}x{m.shape[1]} matrix cannot act on a space of "
                f"dimension {space.dim}."
            )
            raise FockSpaceError(msg)
        self.space = space
        self.sparse = m
        self.description = description

    def __repr__(self):
        return f"Operator({self.description or 'unnamed'}, dim={self.space.dim})"

    @property
    def matrix(self):
        """Dense copy of the matrix."""
        return self.sparse.toarray()

    def _check_space(self, other):
        if other.space != self.space:
            msg = (
                f"Operator on {self.space.n_modes} modes cannot be combined "
                f"with an object on {other.space.n_modes} modes."
            )
            raise FockSpaceError(msg)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            self._check_space(other)
            desc = f"{self.description} {other.description}".strip()
            return Operator(self.space, self.sparse @ other.sparse, desc)
        if isinstance(other, StateVector):
            self._check_space(other)
            return StateVector(
                self.space, self.sparse @ other.amplitudes, other.pairing
            )
        return NotImplemented

    def __mul__(self, scalar):
        return Operator(self.space, scalar * self.sparse, self.description)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Operator(self.space, self.sparse / scalar, self.description)

    def __neg__(self):
        return Operator(self.space, -self.sparse, f"-{self.description}")

    def __add__(self, other):
        self._check_space(other)
        return Operator(self.space, self.sparse + other.sparse)

    def __sub__(self, other):
        self._check_space(other)
        return Operator(self.space, self.sparse - other.sparse)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self.space.identity()
        for _ in range(exponent):
            result = self @ result
        result.description = f"({self.description})^{exponent}"
        return result

    def adjoint(self):
        return Operator(
            self.space, self.sparse.conj().T, f"({self.description})^dag"
        )

    def apply(self, amplitudes):
        """Act on a raw amplitude vector; no normalization is enforced."""
        return self.sparse @ np.asarray(amplitudes, dtype=complex)

    def deviation(self, other):
        """Largest entrywise difference from another operator."""
        self._check_space(other)
        return _max_abs(self.sparse - other.sparse)

    def is_hermitian(self, tol=None):
        tol = get_option("tolerance.algebra") if tol is None else tol
        return _max_abs(self.sparse - self.sparse.conj().T) <= tol

    def is_unitary(self, tol=None):
        tol = get_option("tolerance.sequence") if tol is None else tol
        product = self.sparse.conj().T @ self.sparse
        identity = sparse.identity(self.space.dim, format="csr")
        return _max_abs(product - identity) <= tol

    def is_involution(self, tol=None):
        """True if the operator squares to the identity."""
        tol = get_option("tolerance.sequence") if tol is None else tol
        identity = sparse.identity(self.space.dim, format="csr")
        return _max_abs(self.sparse @ self.sparse - identity) <= tol

    def commutes_with(self, other, tol=None):
        tol = get_option("tolerance.algebra") if tol is None else tol
        self._check_space(other)
        commutator = self.sparse @ other.sparse - other.sparse @ self.sparse
        return _max_abs(commutator) <= tol


class StateVector:
    """A normalized state of a Fock space.

    The amplitudes are always stored over the canonical occupation basis;
    the pairing records the frame in which the state is meant to be read,
    see `components`.

    Attributes
    ----------
    space : FockSpace
    amplitudes : np.ndarray
        Read-only complex vector of length space.dim.
    pairing : Pairing
        Frame used for labels.
    """

    def __init__(self, space, amplitudes, pairing=None, normalize=False):
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape != (space.dim,):
            msg = (
                f"Expected {space.dim} amplitudes for {space.n_modes} modes, "
                f"got {amplitudes.size}."
            )
            raise FockSpaceError(msg)

        norm = np.linalg.norm(amplitudes)
        if normalize:
            if norm <= get_option("tolerance.forced"):
                raise FockSpaceError("Cannot normalize a zero vector.")
            amplitudes = amplitudes / norm
        elif abs(norm - 1) > get_option("tolerance.sequence"):
            raise FockSpaceError(f"State vector has norm {norm}, not 1.")

        amplitudes.setflags(write=False)
        self.space = space
        self.amplitudes = amplitudes
        self.pairing = space.canonical_pairing if pairing is None else pairing

    def __repr__(self):
        return f"StateVector(n_modes={self.space.n_modes}, pairing={self.pairing})"

    def __str__(self):
        lines = []
        for label, amp in self.components().items():
            if abs(amp) > get_option("tolerance.sequence"):
                lines.append(f"|{label}>  {amp.real:+.6f}{amp.imag:+.6f}i")
        return "\n".join(lines)

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def inner(self, other):
        """Return <self|other>."""
        if other.space != self.space:
            raise FockSpaceError("States live on different spaces.")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other):
        """Return |<self|other>|."""
        return abs(self.inner(other))

    def expectation(self, operator):
        return complex(np.vdot(self.amplitudes, operator.apply(self.amplitudes)))

    def is_eigenstate(self, operator, eigenvalue, tol=None):
        tol = get_option("tolerance.sequence") if tol is None else tol
        residual = operator.apply(self.amplitudes) - eigenvalue * self.amplitudes
        return float(np.linalg.norm(residual)) <= tol

    def with_pairing(self, pairing):
        """Same state, read in another frame."""
        return StateVector(self.space, self.amplitudes, pairing)

    def components(self, pairing=None):
        """Amplitudes over the occupation basis of a pairing.

        Parameters
        ----------
        pairing : Pairing, optional
            Frame to expand in; defaults to the state's own pairing.

        Returns
        -------
        dict
            Occupation label to complex amplitude, in basis order.
        """
        pairing = self.pairing if pairing is None else pairing
        if pairing == self.space.canonical_pairing:
            return dict(zip(self.space.labels(), self.amplitudes))
        basis = pairing_basis(self.space, pairing)
        return {
            label: complex(np.vdot(vec.amplitudes, self.amplitudes))
            for label, vec in basis
        }


@cache
def _majorana_matrices(n_modes):
    """Sparse Jordan-Wigner matrices of gamma_1 .. gamma_{2 n_modes}."""
    matrices = []
    for k in range(n_modes):
        for local in (_X, _Y):
            m = sparse.identity(1, dtype=complex, format="csr")
            for j in range(n_modes):
                if j < k:
                    factor = _Z
                elif j == k:
                    factor = local
                else:
                    factor = _I2
                m = sparse.kron(m, factor, format="csr")
            m.eliminate_zeros()
            matrices.append(m)
    return tuple(matrices)


def build_space(n_modes):
    """
    Construct the Fock space over n_modes fermion modes.

    Parameters
    ----------
    n_modes : int
        Number of fermion modes, 1 through 12.

    Returns
    -------
    FockSpace

    Examples
    --------
    >>> space = majsim.build_space(4)
    >>> space.dim
    16
    >>> print(space.canonical_pairing)
    [(1,2), (3,4), (5,6), (7,8)]
    """
    space = FockSpace(n_modes)
    logger.debug(f"Built Fock space with {n_modes} modes, dim {space.dim}.")
    return space


def majorana(space, i):
    """Return the Majorana operator gamma_i of the space."""
    space.check_index(i)
    return Operator(space, _majorana_matrices(space.n_modes)[i - 1], f"g{i}")


def pair_parity_op(space, a, b):
    """
    Return the normalized pair parity Pi(a, b) = -i gamma_a gamma_b.

    On a mode of the canonical pairing, Pi(2k-1, 2k) = (-1)^{n_k}, i.e. +1 on
    an empty mode.  The operator i gamma_a gamma_b is its negative.
    """
    space.check_distinct(a, b)
    op = -1j * (majorana(space, a) @ majorana(space, b))
    op.description = f"Pi({a},{b})"
    return op


def quad_parity_op(space, a, b, c, d):
    """
    Return gamma_a gamma_b gamma_c gamma_d.

    For two canonical modes j, k the product of their four Majoranas in
    ascending order equals -(-1)^(n_j + n_k), so -1 marks an even joint
    parity.
    """
    space.check_distinct(a, b, c, d)
    op = (
        majorana(space, a) @ majorana(space, b)
        @ majorana(space, c) @ majorana(space, d)
    )
    op.description = f"g{a}g{b}g{c}g{d}"
    return op


def total_parity_op(space):
    """Return (-1)^F over all modes."""
    signs = [(-1) ** label.count("1") for label in space.labels()]
    return Operator(space, sparse.diags(signs, format="csr"), "(-1)^F")


def annihilator(space, pair):
    """Psi = (gamma_a + i gamma_b) / 2 for the ordered pair (a, b)."""
    a, b = pair
    return (majorana(space, a) + 1j * majorana(space, b)) / 2


def creator(space, pair):
    """Psi^dag = (gamma_a - i gamma_b) / 2 for the ordered pair (a, b)."""
    a, b = pair
    return (majorana(space, a) - 1j * majorana(space, b)) / 2


def _check_pairing(space, pairing):
    if not isinstance(pairing, Pairing):
        pairing = Pairing(tuple(pairing))
    if pairing.n_modes != space.n_modes:
        msg = (
            f"Pairing {pairing} has {pairing.n_modes} modes, the space has "
            f"{space.n_modes}."
        )
        raise FockSpaceError(msg)
    return pairing


def pairing_basis(space, pairing):
    """
    Occupation basis of an arbitrary pairing.

    The vacuum is the joint +1 eigenvector of every pair parity Pi(a_k, b_k),
    obtained by projecting the first canonical basis state it overlaps with,
    which makes that overlap real and positive.  The state with occupations
    n_1 .. n_m is (Psi_1^dag)^{n_1} ... (Psi_m^dag)^{n_m} applied to the
    vacuum, so the canonical pairing returns the canonical basis unchanged.

    Parameters
    ----------
    space : FockSpace
    pairing : Pairing or sequence of pairs

    Returns
    -------
    list
        (label, StateVector) tuples in lexicographic label order.
    """
    pairing = _check_pairing(space, pairing)

    projector = space.identity()
    for a, b in pairing:
        projector = projector @ ((space.identity() + pair_parity_op(space, a, b)) / 2)

    tol = get_option("tolerance.sequence")
    vacuum = None
    for j in range(space.dim):
        column = projector.sparse[:, [j]].toarray().ravel()
        if np.linalg.norm(column) > tol:
            vacuum = column / np.linalg.norm(column)
            break

    creators = [creator(space, pair) for pair in pairing]
    basis = []
    for label in space.labels():
        vec = vacuum
        for k in reversed(range(space.n_modes)):
            if label[k] == "1":
                vec = creators[k].apply(vec)
        basis.append((label, StateVector(space, vec, pairing, normalize=True)))

    logger.debug(f"Constructed the occupation basis of pairing {pairing}.")
    return basis


def pairing_matrix(space, pairing):
    """Unitary whose columns are the pairing_basis states."""
    basis = pairing_basis(space, pairing)
    return np.column_stack([vec.amplitudes for _, vec in basis])


def pairing_state(space, pairing, label):
    """The basis state with the given occupation label under a pairing."""
    pairing = _check_pairing(space, pairing)
    for lbl, vec in pairing_basis(space, pairing):
        if lbl == label:
            return vec
    raise FockSpaceError(f"'{label}' is not an occupation string of {pairing}.")


def _as_array(obj):
    if isinstance(obj, StateVector):
        return obj.amplitudes
    if hasattr(obj, "matrix"):
        return np.asarray(obj.matrix)
    return np.asarray(obj, dtype=complex)


def best_phase(a, b):
    """
    The unit phase that best maps a onto b, and the remaining deviation.

    Parameters
    ----------
    a, b : Operator, StateVector, GateMatrix or array
        Objects of identical shape.

    Returns
    -------
    (phase, deviation) : tuple
        phase is the unit complex number aligning a with b in the least
        squares sense, deviation = max |b - phase a|.
    """
    a = _as_array(a)
    b = _as_array(b)
    if a.shape != b.shape:
        raise FockSpaceError(f"Shape mismatch:  {a.shape} versus {b.shape}.")
    overlap = np.vdot(a, b)
    if abs(overlap) <= np.finfo(float).eps:
        phase = 1 + 0j
    else:
        phase = complex(overlap / abs(overlap))
    deviation = float(np.max(np.abs(b - phase * a))) if a.size else 0.0
    return phase, deviation


def phase_match(a, b, tol=None):
    """
    Return the unit phase p with b = p * a entrywise, or None.

    Parameters
    ----------
    a, b : Operator, StateVector, GateMatrix or array
    tol : float, optional
        Entrywise tolerance, defaults to the tolerance.sequence option.

    Examples
    --------
    >>> import numpy as np
    >>> majsim.phase_match(np.eye(2), 1j * np.eye(2))
    1j
    """
    tol = get_option("tolerance.sequence") if tol is None else tol
    phase, deviation = best_phase(a, b)
    if deviation > tol:
        return None
    return phase
