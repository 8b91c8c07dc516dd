"""The sparse-dense CNOT pipeline.

Two logical qubits live in four fermion modes A, B, C, D (sparse encoding).
A CNOT runs as

    B45 -> M1 = Pi(4,5) -> CNOT+ on the dense qubits -> B54 -> M2 = g5g6g7g8

with the dense two-qubit word instantiated on the relabeled modes
(A, B', D) = ((1,2), (3,6), (7,8)).  An occupied pair C' after M1 and an odd
joint parity of C and D after M2 are the undesired outcomes.  They are either
corrected (Process I corrects the state, Process II switches the gate) or the
shot is abandoned (discard mode).
"""

# Standard library imports ...
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cache, partial
import logging

# Third party library imports ...
import numpy as np
from scipy import sparse

# Local imports ...
from . import core
from .encoding import (
    LOGICAL_LABELS, LogicalTwoQubit, decode_logical, encode_logical,
    relabeled_pairing,
)
from .fock import (
    FockSpace, Operator, StateVector, best_phase, pairing_basis,
    quad_parity_op, total_parity_op,
)
from .gates import (
    WORDS, BraidConvention, GateMatrix, SectorLeakageError, braid,
    is_parity_independent, named_gate,
)
from .measurement import (
    OutcomeMode, OutcomePolicy, ZeroProbabilityError,
    branch_probabilities, measure, pair_observable, quad_observable,
)
from .options import get_option

logger = logging.getLogger(__name__)

# Canonical modes (C', D) of the relabeled frame and (B, C) of the sparse one.
_CD_MODES = ((4, 5), (7, 8))
_BC_MODES = ((3, 4), (5, 6))

# Measurements per CNOT of the ancilla-assisted measurement-based scheme.
ANCILLA_SCHEME_MEASUREMENTS = 3


class ProtocolError(RuntimeError):
    """Raise this exception for an input outside the even sector, an L2
    correction that fails its basis-mapping check, or a misused policy.
    """

    pass


class UnreachableBranchError(ProtocolError):
    """Raise this exception when a forced outcome has zero probability."""

    def __init__(self, msg, probability):
        super().__init__(msg)
        self.probability = probability


@dataclass(frozen=True)
class _Action:
    """A full-space operator of the pipeline with its resource counts."""

    label: str
    operator: Operator
    braids: int
    phases: int


@cache
def _pipeline_actions(convention):
    space = FockSpace(4)
    dense = core.DENSE_FRAME

    def word_action(label, name, modes):
        word = WORDS[name]
        return _Action(
            label, word.operator(space, modes, convention), word.braid_count,
            word.phase_count,
        )

    actions = {
        "entangle": _Action("B45", braid(space, 4, 5, convention), 1, 0),
        "restore": _Action("B54", braid(space, 5, 4, convention), 1, 0),
        "CNOT+": word_action("CNOT+ on (A,B',D)", "CNOT+", dense),
        "CNOT-": word_action("CNOT- on (A,B',D)", "CNOT-", dense),
        "Y2": word_action("Y2 = -i B67^2 R78^2 on (A,B',D)", "Y2", dense),
        "XCD": word_action("X_C' X_D = -i B57^2", "X", _CD_MODES),
        "XBC": word_action("X_B X_C = -i B45^2", "X", _BC_MODES),
    }
    logger.debug(f"Built the pipeline operators ({convention.value}).")
    return actions


@cache
def _observables():
    space = FockSpace(4)
    return {
        "M1": pair_observable(space, 4, 5),
        "M2": quad_observable(space, 5, 6, 7, 8),
    }


@dataclass
class RunReport:
    """Outcome of one pass through the pipeline.

    Attributes
    ----------
    mode : str
        process1, process2, discard or general.
    convention : str
    input : LogicalTwoQubit or None
        Decoded input, None if the input is not in the computational span.
    measurements : list of MeasurementRecord
    corrections : list of str
        Correction operations applied, in order.
    trace : list of str
        Every operation applied, in order.
    final : StateVector
    output : LogicalTwoQubit or None
        Decoded final state, None if it leaves the computational span.
    expected : LogicalTwoQubit or None
        CNOT applied to the input.
    phase : complex or None
        Global phase of the branch, output = phase * expected.
    fidelity : float or None
        |<expected|output>|.
    logical_matrix : np.ndarray or None
        4x4 logical action when the report covers a whole basis.
    success : bool
    discarded : bool
        True when discard mode abandoned the shot.
    braids, phase_elements, ancillas, n_modes : int
        Resource counts; no ancillary mode is ever allocated.
    """

    mode: str
    convention: str
    input: LogicalTwoQubit | None = None
    measurements: list = field(default_factory=list)
    corrections: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    final: StateVector | None = None
    output: LogicalTwoQubit | None = None
    expected: LogicalTwoQubit | None = None
    phase: complex | None = None
    fidelity: float | None = None
    logical_matrix: np.ndarray | None = None
    success: bool = False
    discarded: bool = False
    braids: int = 0
    phase_elements: int = 0
    ancillas: int = 0
    n_modes: int = 4

    @property
    def n_measurements(self):
        return len(self.measurements)

    def outcomes(self):
        """Measurement label to reported eigenvalue."""
        return {record.label: record.outcome for record in self.measurements}

    def branch(self):
        return tuple(record.outcome for record in self.measurements)

    def __str__(self):
        lines = [f"mode: {self.mode} ({self.convention})"]
        for record in self.measurements:
            lines.append(
                f"{record.label}: {record.observable} = {record.outcome:+d} "
                f"({record.parity}, p = {record.probability:.6g})"
            )
        lines.append(f"corrections: {', '.join(self.corrections) or 'none'}")
        if self.output is not None:
            lines.append(f"output: {self.output}")
        if self.phase is not None:
            lines.append(f"branch phase: {core.format_complex(self.phase, 6)}")
        lines.append(f"success: {self.success}")
        return "\n".join(lines)


class _Run:
    """Mutable state of one pipeline pass."""

    def __init__(self, mode, state, policy, convention):
        self.convention = BraidConvention.resolve(convention)
        self.actions = _pipeline_actions(self.convention)
        self.observables = _observables()
        self.policy = OutcomePolicy.sampled() if policy is None else policy
        if self.policy.mode is OutcomeMode.ENUMERATE:
            msg = "Protocols follow one branch; use run_branches to enumerate."
            raise ProtocolError(msg)
        self.state = _check_input(state)
        self.report = RunReport(mode, self.convention.value)
        try:
            self.report.input = decode_logical(self.state)
        except SectorLeakageError:
            self.report.input = None

    def apply(self, key, correction=False):
        action = self.actions[key] if isinstance(key, str) else key
        self.state = action.operator @ self.state
        self.report.braids += action.braids
        self.report.phase_elements += action.phases
        self.report.trace.append(action.label)
        if correction:
            self.report.corrections.append(action.label)
        logger.debug(f"{self.report.mode}: applied {action.label}")

    def measure(self, label):
        observable = self.observables[label]
        try:
            record, self.state = measure(self.state, observable, self.policy, label)
        except ZeroProbabilityError as e:
            raise UnreachableBranchError(str(e), e.probability) from e
        self.report.measurements.append(record)
        self.report.trace.append(
            f"measure {label} {record.observable} = {record.outcome:+d}"
        )
        return record

    def correct_m2(self, pauli=None):
        if self.measure("M2").parity == "odd":
            self.apply("XBC" if pauli is None else pauli, correction=True)

    def finish(self, target=core.CNOT, success=None):
        report = self.report
        report.final = self.state
        try:
            report.output = decode_logical(self.state)
        except SectorLeakageError:
            report.output = None

        if report.input is not None and report.output is not None and target is not None:
            report.expected = LogicalTwoQubit(target @ report.input.amplitudes)
            report.phase, _ = best_phase(
                report.expected.amplitudes, report.output.amplitudes
            )
            report.fidelity = float(abs(np.vdot(
                report.expected.amplitudes, report.output.amplitudes
            )))

        if success is None:
            tol = get_option("tolerance.sequence")
            success = report.output is not None and (
                report.fidelity is None or report.fidelity >= 1 - tol
            )
        report.success = bool(success)
        logger.debug(f"{report.mode}: branch {report.branch()}, success {report.success}")
        return report

    def abandon(self):
        self.report.discarded = True
        return self.finish(success=False)


def _check_input(state):
    if state.space.n_modes != 4:
        msg = f"The pipeline runs on 4 modes, the state has {state.space.n_modes}."
        raise ProtocolError(msg)
    if not state.is_eigenstate(total_parity_op(state.space), 1):
        raise ProtocolError("The input state is not in the even sector.")
    return state


def cnot_process1(state, policy=None, convention=None):
    """
    CNOT with the state corrected after an occupied pair C'.

    On M1 = -1 the pairs C' and D are flipped with -i B57^2 and the dense
    qubits are mapped back with Y2; on an odd M2 the pairs B and C are flipped
    with -i B45^2.

    Parameters
    ----------
    state : StateVector
        Even four-mode state.
    policy : OutcomePolicy, optional
        Sampled with the run.seed option by default.
    convention : BraidConvention or str, optional

    Returns
    -------
    RunReport
    """
    run = _Run("process1", state, policy, convention)
    run.apply("entangle")
    if run.measure("M1").parity == "odd":
        run.apply("XCD", correction=True)
        run.apply("Y2", correction=True)
    run.apply("CNOT+")
    run.apply("restore")
    run.correct_m2()
    return run.finish()


def cnot_process2(state, policy=None, convention=None):
    """
    CNOT with the gate corrected after an occupied pair C'.

    On M1 = -1 the dense word CNOT- replaces CNOT+; the three switched phase
    elements are realized as triple R(-pi/4) steps.
    """
    run = _Run("process2", state, policy, convention)
    run.apply("entangle")
    if run.measure("M1").parity == "odd":
        run.apply("CNOT-", correction=True)
    else:
        run.apply("CNOT+")
    run.apply("restore")
    run.correct_m2()
    return run.finish()


def cnot_discard(state, policy=None, convention=None):
    """
    CNOT without corrections.  Any undesired outcome abandons the shot, the
    report is then marked discarded and unsuccessful.
    """
    run = _Run("discard", state, policy, convention)
    run.apply("entangle")
    if run.measure("M1").parity == "odd":
        return run.abandon()
    run.apply("CNOT+")
    run.apply("restore")
    if run.measure("M2").parity == "odd":
        return run.abandon()
    return run.finish()


@cache
def _relabeled_kets():
    return dict(pairing_basis(FockSpace(4), relabeled_pairing()))


def _embed_dense(matrix, both_blocks=False):
    """
    A dense two-qubit matrix acting on the relabeled kets with C' empty,
    and identity elsewhere.

    With both_blocks, the matrix also acts on the block with C' occupied,
    conjugated by the sign (-1)^(n_A + n_B').
    """
    kets = _relabeled_kets()
    space = FockSpace(4)
    full = np.eye(space.dim, dtype=complex)
    blocks = [(core.DENSE_EVEN_KETS, "0", matrix)]
    if both_blocks:
        signs = np.diag([(-1) ** (int(k[0]) + int(k[1])) for k in core.DENSE_ODD_KETS])
        blocks.append((core.DENSE_ODD_KETS, "1", signs @ matrix @ signs))
    for labels, occupation, m in blocks:
        v = np.column_stack([
            kets[f"{k[0]}{k[1]}{occupation}{k[2]}"].amplitudes for k in labels
        ])
        full += v @ (m - np.eye(4)) @ v.conj().T
    return Operator(space, full, "embedded dense gate")


def _as_gate_matrix(gate, basis=core.DENSE_EVEN_KETS):
    if gate is None:
        return None
    if isinstance(gate, GateMatrix):
        return gate
    if isinstance(gate, str):
        return named_gate(gate)
    return GateMatrix(np.asarray(gate, dtype=complex), basis, provenance="user matrix")


def _is_identity(gm):
    tol = get_option("tolerance.sequence")
    return best_phase(np.eye(gm.dim), gm.matrix)[1] <= tol


def _gate_action(label, gm, convention, both_blocks=False):
    """Instantiate a two-qubit gate on the dense qubits."""
    if gm.word is not None and gm.word.n_local_modes == 3:
        op = gm.word.operator(FockSpace(4), core.DENSE_FRAME, convention)
        return _Action(label, op, gm.word.braid_count, gm.word.phase_count)
    if gm.word is not None and gm.word.n_local_modes == 2:
        op = gm.word.operator(FockSpace(4), _CD_MODES, convention)
        return _Action(label, op, gm.word.braid_count, gm.word.phase_count)
    if gm.dim != 4:
        raise ProtocolError(f"{label} must be a 4x4 dense two-qubit matrix.")
    return _Action(label, _embed_dense(gm.matrix, both_blocks), 0, 0)


def _pauli_action(gm, convention):
    """Instantiate the M2 correction on the sparse modes B and C."""
    if gm.word is not None and gm.word.n_local_modes == 2:
        op = gm.word.operator(FockSpace(4), _BC_MODES, convention)
        return _Action(f"P = {gm.word.name} on (B,C)", op, gm.word.braid_count,
                       gm.word.phase_count)
    if gm.dim != 4:
        raise ProtocolError("P must be a 4x4 matrix on the modes B and C.")
    m = sparse.kron(sparse.kron(sparse.identity(2), gm.matrix), sparse.identity(2))
    return _Action("P on (B,C)", Operator(FockSpace(4), m, "P"), 0, 0)


def check_l2(l2, convention=None):
    """
    Check that X_C' X_D followed by L2 maps the occupied collapse of every
    logical basis input onto its empty collapse, up to one common phase.

    Parameters
    ----------
    l2 : GateMatrix, str or 4x4 array
    convention : BraidConvention or str, optional

    Returns
    -------
    complex
        The common phase.

    Raises
    ------
    ProtocolError
        If the mapping fails.
    """
    convention = BraidConvention.resolve(convention)
    actions = _pipeline_actions(convention)
    l2_op = _gate_action("L2", _as_gate_matrix(l2), convention).operator
    observable = _observables()["M1"]

    empty, occupied = [], []
    for label in LOGICAL_LABELS:
        psi = actions["entangle"].operator @ encode_logical(label)
        p_plus, p_minus, v_plus, v_minus = branch_probabilities(psi, observable)
        empty.append(v_plus / np.sqrt(p_plus))
        corrected = actions["XCD"].operator.apply(v_minus / np.sqrt(p_minus))
        occupied.append(l2_op.apply(corrected))

    phase, deviation = best_phase(np.column_stack(empty), np.column_stack(occupied))
    if deviation > get_option("tolerance.sequence"):
        msg = (
            f"L2 does not map the occupied collapse onto the empty one "
            f"(deviation {deviation:.3g})."
        )
        raise ProtocolError(msg)
    return phase


def general_corrected_gate(gate, l2, p, state, policy=None, convention=None):
    """
    Run a dense two-qubit gate through the pipeline with user corrections.

    Parameters
    ----------
    gate : GateMatrix, str or 4x4 array
        Dense gate.  A gate with a braid word runs that word on (A, B', D);
        a bare matrix is embedded on the relabeled kets.
    l2 : GateMatrix, str, 4x4 array or None
        Applied after X_C' X_D when M1 = -1.  None skips the odd-branch
        correction, which requires a parity-independent gate; for such a
        gate the identity means the same and is not checked.
    p : GateMatrix, str, 4x4 array or None
        Correction on the modes B and C after an odd M2; X_B X_C by default.
    state : StateVector
    policy : OutcomePolicy, optional
    convention : BraidConvention or str, optional

    Returns
    -------
    RunReport
        The expected logical action is not known in general, so success
        only requires the final state to stay in the computational span.

    Raises
    ------
    ProtocolError
        If L2 fails check_l2, or L2 is None for a gate whose word depends on
        the parity.
    """
    convention = BraidConvention.resolve(convention)
    gate = _as_gate_matrix(np.eye(4) if gate is None else gate)
    l2 = _as_gate_matrix(l2)
    independent = gate.word is None or is_parity_independent(gate.word, convention)
    if l2 is not None and independent and _is_identity(l2):
        logger.debug("Identity L2 on a parity-independent gate, no odd-branch correction.")
        l2 = None
    if l2 is None:
        if not independent:
            msg = f"Gate {gate.word.name} depends on the parity and needs an L2 correction."
            raise ProtocolError(msg)
    else:
        check_l2(l2, convention)

    gate_action = _gate_action("gate", gate, convention, both_blocks=l2 is None)
    l2_action = None if l2 is None else _gate_action("L2", l2, convention)
    p_action = None if p is None else _pauli_action(_as_gate_matrix(p), convention)

    run = _Run("general", state, policy, convention)
    run.apply("entangle")
    if run.measure("M1").parity == "odd" and l2_action is not None:
        run.apply("XCD", correction=True)
        run.apply(l2_action, correction=True)
    run.apply(gate_action)
    run.apply("restore")
    run.correct_m2(p_action)
    return run.finish(target=None)


PROCESSES = {
    "process1": cnot_process1,
    "process2": cnot_process2,
    "discard": cnot_discard,
}


def _resolve_process(process):
    if callable(process):
        return process
    try:
        return PROCESSES[process]
    except KeyError:
        msg = f"Unknown process '{process}'.  Known:  {', '.join(PROCESSES)}."
        raise ProtocolError(msg) from None


def general_process(gate, l2=None, p=None):
    """A process function running general_corrected_gate."""
    return partial(general_corrected_gate, gate, l2, p)


def run_over_basis(process, m1, m2, convention=None):
    """
    Run a process on every logical basis input with forced outcomes.

    Returns
    -------
    RunReport
        Report of the last input, carrying the 4x4 logical matrix and its
        global phase relative to CNOT.

    Raises
    ------
    ProtocolError
        If the branch is unreachable or leaves the computational span.
    """
    process = _resolve_process(process)
    columns = []
    report = None
    for label in LOGICAL_LABELS:
        policy = OutcomePolicy.forced({"M1": m1, "M2": m2})
        report = process(encode_logical(label), policy, convention=convention)
        if report.output is None:
            msg = (
                f"Branch (M1 = {m1:+d}, M2 = {m2:+d}) leaves the computational "
                f"span for input |{label}>."
            )
            raise ProtocolError(msg)
        columns.append(report.output.amplitudes)
    report.logical_matrix = np.column_stack(columns)
    report.input = None
    report.phase, _ = best_phase(core.CNOT, report.logical_matrix)
    return report


def logical_matrix(process, m1, m2, convention=None):
    """The 4x4 logical action of a process on the forced branch (m1, m2)."""
    return run_over_basis(process, m1, m2, convention).logical_matrix


def run_branches(process, state, convention=None):
    """
    Run a process on every reachable branch of the two measurements.

    Returns
    -------
    list of RunReport
        One per distinct outcome sequence, M1 = +1 first.
    """
    process = _resolve_process(process)
    reports, seen = [], set()
    for m1 in (1, -1):
        for m2 in (-1, 1):
            policy = OutcomePolicy.forced({"M1": m1, "M2": m2})
            try:
                report = process(state, policy, convention=convention)
            except UnreachableBranchError:
                continue
            if report.branch() not in seen:
                seen.add(report.branch())
                reports.append(report)
    return reports


@dataclass
class ChainStats:
    """Success statistics of a chain of CNOT gates.

    Attributes
    ----------
    n_gates : int
    shots : int
    mode : str
    seed : int
    successes : int
    rate : float
        Empirical success rate.
    expected : float
        2^(-2 n_gates) in discard mode, 1 otherwise.
    stderr : float
        Binomial standard error at the expected rate.
    corrections : int
        Correction operations over all shots.
    max_corrections_per_gate : int
    measurements_per_gate : int
    ancilla_scheme_measurements : int
        Measurements the ancilla-assisted scheme needs for the chain.
    ancillas, n_modes : int
    """

    n_gates: int
    shots: int
    mode: str
    seed: int
    successes: int
    rate: float
    expected: float
    stderr: float
    corrections: int = 0
    max_corrections_per_gate: int = 0
    measurements_per_gate: int = 2
    ancilla_scheme_measurements: int = 0
    ancillas: int = 0
    n_modes: int = 4

    @property
    def expected_text(self):
        if self.mode == "discard":
            return f"2^-{2 * self.n_gates}"
        return "1"

    def within(self, sigmas=3):
        """True if the rate lies within some standard errors of expected."""
        return abs(self.rate - self.expected) <= sigmas * self.stderr + 1e-15

    def __str__(self):
        return "\n".join([
            f"CNOT chain of {self.n_gates} gate(s), mode {self.mode}, "
            f"{self.shots} shot(s), seed {self.seed}",
            f"successes:        {self.successes}",
            f"rate:             {self.rate:.6g}",
            f"expected:         {self.expected:.6g} ({self.expected_text})",
            f"standard error:   {self.stderr:.3g}",
            f"corrections:      {self.corrections} "
            f"(at most {self.max_corrections_per_gate} per gate)",
            f"measurements:     {self.measurements_per_gate * self.n_gates} per shot "
            f"(ancilla scheme: {self.ancilla_scheme_measurements})",
            f"ancillary modes:  {self.ancillas}",
        ])


def _chain_shot(process, n_gates, start, seed, shot, convention):
    """Run one shot; returns (success, corrections, max per gate)."""
    policy = OutcomePolicy.sampled(seed, shot)
    state = start
    corrections = most = 0
    for _ in range(n_gates):
        report = process(state, policy, convention=convention)
        corrections += len(report.corrections)
        most = max(most, len(report.corrections))
        if not report.success:
            return False, corrections, most
        state = report.final
    return True, corrections, most


def chain_stats(n_gates, shots, mode="discard", seed=None, num_threads=None,
                input_label="10", convention=None):
    """
    Monte-Carlo statistics of N sequential CNOTs on a fixed input.

    Shot k draws its outcomes from the stream (seed, k), so the counts do
    not depend on the number of threads.

    Parameters
    ----------
    n_gates : int
        Number of CNOT gates, at least 1.
    shots : int
        At least 1.
    mode : str
        discard, process1 or process2.
    seed : int, optional
        Defaults to the run.seed option.
    num_threads : int, optional
        Defaults to the run.num_threads option.
    input_label : str
        Logical basis input.
    convention : BraidConvention or str, optional

    Returns
    -------
    ChainStats
    """
    if n_gates < 1 or shots < 1:
        raise ProtocolError("A chain needs at least one gate and one shot.")
    process = _resolve_process(mode)
    seed = get_option("run.seed") if seed is None else seed
    num_threads = get_option("run.num_threads") if num_threads is None else num_threads
    convention = BraidConvention.resolve(convention)
    _pipeline_actions(convention)
    _observables()
    start = encode_logical(input_label)

    task = partial(_chain_shot, process, n_gates, start, seed, convention=convention)
    if num_threads > 1:
        with ThreadPoolExecutor(max_workers=num_threads) as executor:
            results = list(executor.map(task, range(shots)))
    else:
        results = [task(shot) for shot in range(shots)]

    successes = sum(ok for ok, _, _ in results)
    expected = 2.0 ** (-2 * n_gates) if mode == "discard" else 1.0
    stats = ChainStats(
        n_gates=n_gates,
        shots=shots,
        mode=mode,
        seed=seed,
        successes=successes,
        rate=successes / shots,
        expected=expected,
        stderr=float(np.sqrt(expected * (1 - expected) / shots)),
        corrections=sum(c for _, c, _ in results),
        max_corrections_per_gate=max(m for _, _, m in results),
        ancilla_scheme_measurements=ANCILLA_SCHEME_MEASUREMENTS * n_gates,
    )
    logger.info(
        f"chain of {n_gates} ({mode}): {successes}/{shots} successes, "
        f"expected rate {expected:.6g}"
    )
    return stats


def restored_parities(state):
    """True if both quad parities of the sparse encoding are -1."""
    space = state.space
    return (
        state.is_eigenstate(quad_parity_op(space, 1, 2, 3, 4), -1)
        and state.is_eigenstate(quad_parity_op(space, 5, 6, 7, 8), -1)
    )
