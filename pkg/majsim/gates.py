"""Braid and phase unitaries, parity-sector matrices and the named gate
library.

Every named gate is a word over local Majorana indices: 1..4 for gates on two
fermion modes (one-qubit gates and the SWAP family) and 1..6 for two-qubit
gates on three modes in the dense encoding.  A word is instantiated on any
list of modes of a Fock space, and its matrix in a parity sector is obtained
by restricting the resulting operator.

Printed products are operator products: the leftmost factor acts last.
"""

# Standard library imports ...
from dataclasses import dataclass, field
import enum
import logging
import warnings

# Third party library imports ...
import numpy as np

# Local imports ...
from . import core
from .fock import (
    FockSpace, Operator, StateVector, best_phase, majorana, pair_parity_op,
    phase_match,
)
from .options import get_option

logger = logging.getLogger(__name__)


class GateError(ValueError):
    """Raise this exception for an unknown gate, an undefined sector or an
    index clash.
    """

    pass


class SectorLeakageError(RuntimeError):
    """Raise this exception when an operator does not preserve a basis span.

    Attributes
    ----------
    leakage : float
        Largest norm of the component leaving the span.
    """

    def __init__(self, msg, leakage):
        super().__init__(msg)
        self.leakage = leakage


class PhaseConventionWarning(UserWarning):
    """Issue this warning when a printed reference can only be matched up to
    its entry moduli.
    """

    pass


class BraidConvention(enum.Enum):
    """Phase convention of an elementary exchange.

    The edge-mode convention ("mem") carries an extra factor of i per braid
    relative to Ivanov's.
    """

    IVANOV = "ivanov"
    MEM = "mem"

    @property
    def phase(self):
        return 1j if self is BraidConvention.MEM else 1 + 0j

    @classmethod
    def resolve(cls, convention=None):
        """Turn None, a string or a member into a member."""
        if convention is None:
            convention = get_option("braid.convention")
        if isinstance(convention, cls):
            return convention
        try:
            return cls(str(convention).lower())
        except ValueError:
            msg = f"Unknown braid convention {convention!r}."
            raise GateError(msg) from None


def braid(space, i, j, convention=None):
    """
    Exchange of gamma_i and gamma_j.

    B_ij = phase * exp(pi/4 gamma_j gamma_i) = phase * (1 + gamma_j gamma_i)
    / sqrt(2), the closed form following from (gamma_j gamma_i)^2 = -1.

    Parameters
    ----------
    space : FockSpace
    i, j : int
        Distinct Majorana indices.
    convention : BraidConvention or str, optional
        Defaults to the braid.convention option.

    Returns
    -------
    Operator
    """
    if i == j:
        raise GateError(f"Braid indices must differ, got {i} and {j}.")
    space.check_distinct(i, j)
    convention = BraidConvention.resolve(convention)

    generator = majorana(space, j) @ majorana(space, i)
    op = convention.phase * (space.identity() + generator) / np.sqrt(2)
    op.description = f"B{i}{j}" if max(i, j) < 10 else f"B({i},{j})"
    return op


def phase_gate(space, mode, theta):
    """
    Phase gate R(theta) = diag(1, exp(-2i theta)) on the occupation of a mode.

    Parameters
    ----------
    space : FockSpace
    mode : tuple
        Ordered Majorana pair (a, b) of the mode.
    theta : float
        Angle in radians; R(-pi/4) = diag(1, i).

    Returns
    -------
    Operator
    """
    try:
        a, b = mode
    except (TypeError, ValueError):
        raise GateError(f"{mode!r} is not a Majorana pair.") from None
    if a == b:
        raise GateError(f"A mode needs two distinct Majoranas, got {mode}.")

    # (I - Pi) / 2 projects onto the occupied mode.
    occupied = (space.identity() - pair_parity_op(space, a, b)) / 2
    op = space.identity() + (np.exp(-2j * theta) - 1) * occupied
    op.description = f"R{a}{b}({theta:.6g})"
    return op


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """Matrix of a gate in a sector basis.

    Attributes
    ----------
    matrix : np.ndarray
        d x d unitary.
    basis : tuple
        Basis labels, in row order.
    provenance : str
        How the matrix was built and how it compares with a reference.
    phase : complex
        Global phase relating the printed reference to the matrix,
        matrix = phase * reference.  1 when there is no reference.
    operator : Operator or None
        Full-space operator the matrix was restricted from.
    word : Word or None
    """

    matrix: np.ndarray
    basis: tuple
    provenance: str = ""
    phase: complex = 1 + 0j
    operator: Operator | None = None
    word: "Word | None" = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GateError(f"Gate matrix must be square, got {m.shape}.")
        basis = tuple(self.basis)
        if len(basis) != m.shape[0]:
            msg = f"{len(basis)} basis labels for a {m.shape[0]}x{m.shape[0]} matrix."
            raise GateError(msg)
        if len(set(basis)) != len(basis):
            raise GateError(f"Basis labels {basis} are not distinct.")
        deviation = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if deviation > get_option("tolerance.sequence"):
            raise GateError(f"Gate matrix is not unitary (deviation {deviation:.3g}).")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def normalized(self):
        """The matrix divided by its recorded global phase."""
        return self.matrix / self.phase

    def __str__(self):
        title = f"{self.provenance}" if self.provenance else "GateMatrix"
        rows = [
            "  ".join(core.format_complex(z, precision=6) for z in row)
            for row in self.matrix
        ]
        return "\n".join([title, f"basis: {' '.join(self.basis)}"] + rows)


def _basis_arrays(basis):
    """Labels and column matrix of a sector basis in any accepted form."""
    if hasattr(basis, "vectors") and hasattr(basis, "labels"):
        labels = list(basis.labels)
        vectors = list(basis.vectors)
    else:
        labels, vectors = [], []
        for idx, item in enumerate(basis):
            if isinstance(item, StateVector):
                labels.append(str(idx))
                vectors.append(item)
            else:
                label, vec = item
                labels.append(label)
                vectors.append(vec)
    if not vectors:
        raise GateError("A sector basis needs at least one vector.")
    return labels, np.column_stack([v.amplitudes for v in vectors])


def sector_matrix(operator, basis, tol=None):
    """
    Matrix of an operator in the span of a basis.

    Parameters
    ----------
    operator : Operator
    basis : EncodedBasis, or sequence of (label, StateVector) or StateVector
        Orthonormal vectors.
    tol : float, optional
        Leakage tolerance, defaults to the tolerance.sequence option.

    Returns
    -------
    GateMatrix

    Raises
    ------
    SectorLeakageError
        If the operator maps part of the span outside of it.
    """
    tol = get_option("tolerance.sequence") if tol is None else tol
    labels, v = _basis_arrays(basis)

    gram = v.conj().T @ v
    if np.max(np.abs(gram - np.eye(v.shape[1]))) > tol:
        raise GateError("Sector basis vectors are not orthonormal.")

    image = np.column_stack([operator.apply(v[:, k]) for k in range(v.shape[1])])
    m = v.conj().T @ image
    residual = image - v @ m
    leakage = float(np.max(np.linalg.norm(residual, axis=0)))
    if leakage > tol:
        msg = (
            f"{operator.description or 'Operator'} leaks out of the sector "
            f"spanned by {labels} (leakage {leakage:.3g})."
        )
        raise SectorLeakageError(msg, leakage)

    return GateMatrix(m, labels, provenance=operator.description, operator=operator)


@dataclass(frozen=True)
class Step:
    """One element of a braid word.

    A braid step exchanges local Majoranas (i, j); a phase step applies R(theta)
    to the local mode whose Majoranas are (i, j).
    """

    kind: str
    indices: tuple
    theta: float = 0.0

    def __str__(self):
        i, j = self.indices
        if self.kind == "braid":
            return f"B{i}{j}"
        return f"R{i}{j}({_angle_text(self.theta)})"


def _angle_text(theta):
    ratio = theta / np.pi
    for denominator in (1, 2, 4, 5, 10):
        numerator = ratio * denominator
        if abs(numerator - round(numerator)) < 1e-12:
            numerator = int(round(numerator))
            num = {1: "", -1: "-"}.get(numerator, str(numerator))
            return f"{num}pi" if denominator == 1 else f"{num}pi/{denominator}"
    return f"{theta:.6g}"


def B(i, j):
    """Braid step over local Majoranas."""
    return Step("braid", (i, j))


def R(i, j, theta=-np.pi / 4):
    """Phase step on the local mode (i, j)."""
    return Step("phase", (i, j), theta)


def R_inv(i, j, theta=-np.pi / 4):
    """Inverse of a -pi/4 phase step as three repeated steps."""
    return (R(i, j, theta),) * 3


@dataclass(frozen=True)
class Word:
    """A product of braid and phase steps over local Majorana indices.

    Attributes
    ----------
    name : str
    steps : tuple
        Steps in the order they are applied.
    n_local_modes : int
        Number of fermion modes the local indices refer to.
    scalar : complex
        Overall factor multiplying the product.
    """

    name: str
    steps: tuple
    n_local_modes: int
    scalar: complex = 1 + 0j

    @classmethod
    def from_product(cls, name, factors, n_local_modes, scalar=1 + 0j):
        """Build a word from a product written with the last-applied factor
        leftmost.  Factors may be steps or tuples of steps.
        """
        flat = []
        for factor in factors:
            if isinstance(factor, Step):
                flat.append(factor)
            else:
                flat.extend(factor)
        return cls(name, tuple(reversed(flat)), n_local_modes, scalar)

    def then(self, other, name=None):
        """This word followed by another one."""
        if other.n_local_modes != self.n_local_modes:
            raise GateError("Cannot compose words on different mode counts.")
        return Word(
            name or f"{other.name}.{self.name}",
            self.steps + other.steps,
            self.n_local_modes,
            self.scalar * other.scalar,
        )

    def __str__(self):
        factors = " ".join(str(step) for step in reversed(self.steps))
        if self.scalar == 1:
            return factors
        return f"({core.format_complex(self.scalar, precision=6)}) {factors}"

    @property
    def braid_count(self):
        return sum(step.kind == "braid" for step in self.steps)

    @property
    def phase_count(self):
        return sum(step.kind == "phase" for step in self.steps)

    def local_to_global(self, modes):
        """Map local Majorana indices onto the Majoranas of a list of modes."""
        modes = [tuple(m) for m in modes]
        if len(modes) != self.n_local_modes:
            msg = (
                f"Gate {self.name} acts on {self.n_local_modes} modes, "
                f"{len(modes)} given."
            )
            raise GateError(msg)
        indices = [idx for mode in modes for idx in mode]
        if len(set(indices)) != len(indices):
            raise GateError(f"Modes {modes} share a Majorana index.")
        return {local: indices[local - 1] for local in range(1, len(indices) + 1)}

    def operators(self, space, modes, convention=None):
        """The full-space operator of each step, in application order."""
        mapping = self.local_to_global(modes)
        ops = []
        for step in self.steps:
            i, j = (mapping[idx] for idx in step.indices)
            if step.kind == "braid":
                ops.append(braid(space, i, j, convention))
            else:
                ops.append(phase_gate(space, (i, j), step.theta))
        return ops

    def operator(self, space, modes=None, convention=None):
        """
        Instantiate the word on a list of modes of a space.

        Parameters
        ----------
        space : FockSpace
        modes : sequence of pairs, optional
            Global Majorana pairs standing in for local modes 1, 2, ...;
            defaults to the first canonical modes.
        convention : BraidConvention or str, optional

        Returns
        -------
        Operator
        """
        if modes is None:
            modes = space.canonical_pairing.pairs[: self.n_local_modes]
        result = space.identity()
        for op in self.operators(space, modes, convention):
            result = op @ result
        result = self.scalar * result
        result.description = self.name
        return result


# Local mode pairs of one-qubit and two-qubit words.
_A, _B, _C = (1, 2), (3, 4), (5, 6)

_R = R(*_A)
_H_STEPS = (_R, B(2, 3), _R)

WORDS = {
    "B23": Word("B23", (B(2, 3),), 2),
    "H": Word("H", _H_STEPS, 2, scalar=-1j),
    "X": Word("X", (B(2, 3), B(2, 3)), 2, scalar=-1j),
    "Z": Word("Z", (_R, _R), 2),
    "Y": Word(
        "Y", ((_R, _R) + _H_STEPS) * 2, 2, scalar=-1 + 0j
    ),
    "R(-pi/4)": Word("R(-pi/4)", (R(1, 2, -np.pi / 4),), 2),
    "R(-pi/10)": Word("R(-pi/10)", (R(1, 2, -np.pi / 10),), 2),
    "R(-2pi/5)": Word("R(-2pi/5)", (R(1, 2, -2 * np.pi / 5),), 2),
    "SWAP": Word.from_product("SWAP", (B(3, 2), B(2, 1), B(4, 3), B(3, 2)), 2),
    "SWAP'": Word.from_product("SWAP'", (B(2, 3), B(1, 2), B(3, 4), B(2, 3)), 2),
    "CNOT+": Word.from_product(
        "CNOT+",
        (B(4, 5), R(*_B), R(*_C), B(4, 5), R(*_C), R(*_B), R_inv(*_A)),
        3,
    ),
    "CNOT-": Word.from_product(
        "CNOT-",
        (B(4, 5), R_inv(*_B), R(*_C), B(4, 5), R_inv(*_C), R(*_B), R(*_A)),
        3,
    ),
    "Y2": Word.from_product(
        "Y2", (B(4, 5), B(4, 5), R(*_C), R(*_C)), 3, scalar=-1j
    ),
}


def _conjugated(name, word):
    """R_t W R_t^-1 with R_t the phase gate of the target mode."""
    written = tuple(reversed(word.steps))
    return Word.from_product(
        name, (R(*_B), written, R_inv(*_B)), 3, word.scalar
    )


WORDS["CY+"] = _conjugated("CY+", WORDS["CNOT+"])
WORDS["CY-"] = _conjugated("CY-", WORDS["CNOT-"])
WORDS["CiZ+"] = WORDS["CY+"].then(WORDS["CNOT+"], "CiZ+")
WORDS["CiZ-"] = WORDS["CY-"].then(WORDS["CNOT-"], "CiZ-")

# Fixed unicode spellings.
_ALIASES = {
    "CNOT−": "CNOT-",
    "SWAP′": "SWAP'",
    "R(-π/4)": "R(-pi/4)",
    "R(-π/10)": "R(-pi/10)",
    "R(-2π/5)": "R(-2pi/5)",
    "Y(2)": "Y2",
}


@dataclass(frozen=True)
class GateEntry:
    """Sector words and printed reference of a named gate."""

    name: str
    sectors: dict
    reference: np.ndarray | None = None
    compare: str = "phase"
    default_sector: str = "even"
    description: str = ""


_ONE_QUBIT = ("even", "odd")

GATES = {
    "H": GateEntry(
        "H", {s: "H" for s in _ONE_QUBIT}, core.H,
        description="R(-pi/4) B23 R(-pi/4) = iH",
    ),
    "X": GateEntry(
        "X", {s: "X" for s in _ONE_QUBIT}, core.X, description="X = -i B23^2",
    ),
    "Y": GateEntry(
        "Y", {s: "Y" for s in _ONE_QUBIT}, core.Y, description="Y = (HZ)^2",
    ),
    "Z": GateEntry(
        "Z", {s: "Z" for s in _ONE_QUBIT}, core.Z,
        description="Z = R(-pi/4)^2",
    ),
    "B23": GateEntry(
        "B23", {s: "B23" for s in _ONE_QUBIT}, core.B23_MEM,
        description="elementary mutual braid",
    ),
    "R(-pi/4)": GateEntry(
        "R(-pi/4)", {s: "R(-pi/4)" for s in _ONE_QUBIT}, np.diag([1, 1j]),
        compare="exact",
    ),
    "R(-pi/10)": GateEntry(
        "R(-pi/10)", {s: "R(-pi/10)" for s in _ONE_QUBIT},
        np.diag([1, np.exp(1j * np.pi / 5)]), compare="exact",
    ),
    "R(-2pi/5)": GateEntry(
        "R(-2pi/5)", {s: "R(-2pi/5)" for s in _ONE_QUBIT},
        np.diag([1, np.exp(4j * np.pi / 5)]), compare="exact",
    ),
    "CNOT+": GateEntry(
        "CNOT+", {"even": "CNOT+"}, core.CNOT,
        description="seven-element dense sequence, even parity",
    ),
    "CNOT-": GateEntry(
        "CNOT-", {"odd": "CNOT-"}, core.CNOT, default_sector="odd",
        description="switched phase elements, odd parity",
    ),
    "SWAP": GateEntry(
        "SWAP", {"full": "SWAP"}, core.SWAP_PRINTED, compare="moduli",
        default_sector="full", description="B32 B21 B43 B32",
    ),
    "SWAP'": GateEntry(
        "SWAP'", {"full": "SWAP'"}, core.SWAP_PRIME_PRINTED, compare="moduli",
        default_sector="full", description="B23 B12 B34 B23",
    ),
    "CY": GateEntry(
        "CY", {"even": "CY+", "odd": "CY-"}, core.CY,
        description="target-mode phase conjugation of CNOT",
    ),
    "CiZ": GateEntry(
        "CiZ", {"even": "CiZ+", "odd": "CiZ-"}, core.CIZ,
        description="CNOT CY",
    ),
    "Y2": GateEntry(
        "Y2", {"even": "Y2"}, core.Y2,
        description="Y (+) Y^T, -i B45^2 R56(-pi/4)^2",
    ),
}


def canonical_name(name):
    """Resolve unicode spellings of gate names."""
    name = _ALIASES.get(name, name)
    if name not in GATES and name not in WORDS:
        msg = f"Unknown gate '{name}'.  Known gates:  {', '.join(GATES)}."
        raise GateError(msg)
    return name


def gate_word(name, sector=None):
    """The braid word of a named gate in a sector."""
    name = canonical_name(name)
    if name in WORDS and name not in GATES:
        return WORDS[name]
    entry = GATES[name]
    sector = entry.default_sector if sector is None else sector
    if sector not in entry.sectors:
        msg = (
            f"Gate {name} is not defined in the {sector} sector, only in "
            f"{', '.join(entry.sectors)}."
        )
        raise GateError(msg)
    return WORDS[entry.sectors[sector]]


def sector_basis(space, sector):
    """
    Labeled basis of a parity sector of a two- or three-mode space.

    Two modes:  even (|00>, |11>), odd (|01>, |10>) or full.  Three modes:
    the even and odd dense bases.
    """
    if space.n_modes == 2:
        kets = {"even": ("00", "11"), "odd": ("01", "10"),
                "full": ("00", "01", "10", "11")}
    elif space.n_modes == 3:
        kets = {"even": core.DENSE_EVEN_KETS, "odd": core.DENSE_ODD_KETS}
    else:
        raise GateError(f"No named sectors on {space.n_modes} modes.")
    if sector not in kets:
        raise GateError(f"Unknown sector '{sector}' on {space.n_modes} modes.")
    return [(label, space.basis_state(label)) for label in kets[sector]]


def word_matrix(word, sector, convention=None):
    """Sector matrix of a word on its own canonical local space."""
    space = FockSpace(word.n_local_modes)
    op = word.operator(space, convention=convention)
    gm = sector_matrix(op, sector_basis(space, sector))
    return GateMatrix(
        gm.matrix, gm.basis, provenance=f"{word.name}: {word}", operator=op,
        word=word,
    )


def _moduli_deviation(reference, matrix):
    return float(np.max(np.abs(np.abs(reference) - np.abs(matrix))))


def named_gate(name, sector=None, convention=None):
    """
    Build a named gate from its braid word and restrict it to a sector.

    Parameters
    ----------
    name : str
        One of H, X, Y, Z, B23, R(-pi/4), R(-pi/10), R(-2pi/5), CNOT+, CNOT-,
        SWAP, SWAP', CY, CiZ, Y2.
    sector : str, optional
        even, odd or full; each gate has a default.
    convention : BraidConvention or str, optional

    Returns
    -------
    GateMatrix
        The constructed matrix.  Its phase attribute relates it to the
        printed reference, matrix = phase * reference.

    Examples
    --------
    >>> h = majsim.named_gate('H')
    >>> bool(abs(h.phase - 1) < 1e-12)
    True
    """
    name = canonical_name(name)
    if name not in GATES:
        msg = f"{name} is a sector word of a named gate and has no reference matrix."
        raise GateError(msg)
    entry = GATES[name]
    sector = entry.default_sector if sector is None else sector
    word = gate_word(name, sector)
    convention = BraidConvention.resolve(convention)
    gm = word_matrix(word, sector, convention)
    tol = get_option("tolerance.sequence")

    reference = entry.reference
    if entry.compare == "moduli":
        deviation = _moduli_deviation(reference, gm.matrix)
        msg = (
            f"The printed {name} matrix can only be matched up to the moduli "
            f"of its entries (moduli deviation {deviation:.3g})."
        )
        warnings.warn(msg, PhaseConventionWarning)
        phase, _ = best_phase(np.abs(reference), gm.matrix)
        note = "matches the printed matrix in moduli only"
    else:
        phase, deviation = best_phase(reference, gm.matrix)
        if entry.compare == "exact":
            phase = 1 + 0j
            deviation = float(np.max(np.abs(gm.matrix - reference)))
        note = f"= ({core.format_complex(phase, precision=6)}) x printed matrix"

    if deviation > tol:
        msg = (
            f"Gate {name} ({sector}, {convention.value}) deviates from its "
            f"reference by {deviation:.3g}."
        )
        raise GateError(msg)

    provenance = (
        f"{name} [{sector}, {convention.value}]: {word} "
        f"({entry.description + ', ' if entry.description else ''}{note})"
    )
    logger.debug(provenance)
    return GateMatrix(
        gm.matrix, gm.basis, provenance=provenance, phase=phase,
        operator=gm.operator, word=word,
    )


def is_parity_independent(name_or_word, convention=None):
    """
    True if a word acts identically, up to a global phase, on the even and
    odd sectors of its local space.
    """
    if isinstance(name_or_word, Word):
        word = name_or_word
    else:
        word = gate_word(name_or_word)
    even = word_matrix(word, "even", convention)
    odd = word_matrix(word, "odd", convention)
    return phase_match(even.matrix, odd.matrix) is not None


@dataclass
class Check:
    """Outcome of one verification check.

    Attributes
    ----------
    name : str
    passed : bool
    deviation : float
        Largest entrywise deviation after removing the recorded phase.
    phase : complex
        Global phase found between reference and computed object.
    detail : str
    """

    name: str
    passed: bool
    deviation: float
    phase: complex = 1 + 0j
    detail: str = ""
    extra: dict = field(default_factory=dict)


def _check(name, reference, computed, tol, detail="", up_to_phase=True):
    if up_to_phase:
        phase, deviation = best_phase(reference, computed)
    else:
        phase = 1 + 0j
        deviation = float(np.max(np.abs(np.asarray(computed) - np.asarray(reference))))
    passed = deviation <= tol
    logger.debug(f"check {name}: deviation {deviation:.3g}, passed {passed}")
    return Check(name, passed, deviation, phase, detail)


def duality_check(convention=None, hadamard=None):
    """
    Verify the duality between braiding and the Hadamard-conjugated phase
    gate, and the two expressions of the NOT gate, in the even one-qubit
    sector.

    Each identity passes when it holds up to a unit phase; the phase and the
    exact deviation are reported.

    Parameters
    ----------
    convention : BraidConvention or str, optional
    hadamard : array, optional
        Replacement for the constructed Hadamard matrix.

    Returns
    -------
    list of Check
    """
    convention = BraidConvention.resolve(convention)
    tol = get_option("tolerance.algebra")

    b23 = word_matrix(WORDS["B23"], "even", convention).matrix
    r = word_matrix(WORDS["R(-pi/4)"], "even", convention).matrix
    x = word_matrix(WORDS["X"], "even", convention).matrix
    if hadamard is None:
        h = named_gate("H", "even", convention).normalized()
    else:
        h = np.asarray(hadamard, dtype=complex)

    checks = []
    rhs = np.exp(-1j * np.pi / 4) * h @ r @ np.linalg.inv(h)
    c = _check("duality-braid", rhs, b23, tol)
    c.extra["exact_deviation"] = float(np.max(np.abs(b23 - rhs)))
    c.detail = f"B23 = phase x exp(-i pi/4) H R H^-1 ({convention.value})"
    checks.append(c)

    rhs = -h @ r @ r @ h
    c = _check("duality-not", rhs, x, tol)
    c.extra["exact_deviation"] = float(np.max(np.abs(x - rhs)))
    c.detail = f"-i B23^2 = phase x (-H R^2 H) ({convention.value})"
    checks.append(c)

    c = _check("not-from-braid", core.X, x, tol)
    c.extra["exact_deviation"] = float(np.max(np.abs(x - core.X)))
    c.detail = f"X = phase x (-i B23^2) ({convention.value})"
    checks.append(c)
    return checks


def appendix_c_operators(convention=None, flip_b45=False):
    """
    The two braid products of the four-mode even sector.

    Returns
    -------
    dict
        Keys 'B45B56' (B45 applied first, then B56), 'B56B45', 'B65B54' (B65
        first) and 'B54B65', each a GateMatrix over the even sector labels.
    """
    space = FockSpace(4)
    basis = [(label, space.basis_state(label)) for label in core.EVEN_SECTOR_LABELS]
    b45 = braid(space, 5, 4, convention) if flip_b45 else braid(space, 4, 5, convention)
    b56 = braid(space, 5, 6, convention)
    b65 = braid(space, 6, 5, convention)
    b54 = braid(space, 5, 4, convention)
    products = {
        "B45B56": b56 @ b45,
        "B56B45": b45 @ b56,
        "B65B54": b54 @ b65,
        "B54B65": b65 @ b54,
    }
    return {key: sector_matrix(op, basis) for key, op in products.items()}


def appendix_c_check(convention=None, flip_b45=False):
    """
    Compare the braid products (B45 B56) and (B65 B54) on the 8-dimensional
    even sector against the printed matrices, each up to one global phase.

    The printed factors are applied left to right.  The deviation of the
    opposite order is reported in each check's extra data.

    Returns
    -------
    list of Check
    """
    tol = get_option("tolerance.sequence")
    products = appendix_c_operators(convention, flip_b45)

    checks = []
    pairs = (
        ("B45B56", "B56B45", core.B45B56_PRINTED),
        ("B65B54", "B54B65", core.B65B54_PRINTED),
    )
    for key, other, printed in pairs:
        c = _check(f"even-sector-{key}", printed, products[key].matrix, tol)
        _, other_deviation = best_phase(printed, products[other].matrix)
        c.extra["reversed_order_deviation"] = other_deviation
        c.detail = f"{key[:3]} applied first, then {key[3:]}"
        checks.append(c)

    inverse = products["B65B54"].matrix @ products["B45B56"].matrix
    c = _check("even-sector-inverse", np.eye(8), inverse, tol, up_to_phase=False)
    c.detail = "(B65 B54)(B45 B56) = identity"
    checks.append(c)
    return checks
