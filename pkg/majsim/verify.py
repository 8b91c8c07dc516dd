"""Golden checks of the braid algebra, the encodings and the CNOT pipeline.

Each check compares a constructed object against a printed reference or an
invariant and yields a Check with its largest deviation and, where the
comparison is up to a global phase, the phase found.
"""

# Standard library imports ...
from dataclasses import dataclass, field
import itertools
import logging

# Third party library imports ...
import numpy as np

# Local imports ...
from . import core
from .encoding import (
    LOGICAL_LABELS, collapsed_even_basis, collapsed_odd_basis, dense_basis,
    encode_logical, sp_basis, sp_printed_basis, sparse_even_basis,
    sparse_noncomp_basis,
)
from .fock import (
    FockSpace, best_phase, majorana, quad_parity_op, total_parity_op,
)
from .gates import (
    WORDS, BraidConvention, Check, GateError, appendix_c_check, braid,
    duality_check, phase_gate, sector_basis, sector_matrix,
    word_matrix,
)
from .measurement import branch_probabilities, pair_observable
from .options import get_option
from .protocol import (
    ProtocolError, chain_stats, check_l2, restored_parities, run_branches,
    run_over_basis,
)

logger = logging.getLogger(__name__)


@dataclass
class VerificationResult:
    """Checks of one verification run."""

    checks: list = field(default_factory=list)
    convention: str = "mem"

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def status(self):
        """Exit status, 0 when every check passes."""
        return 0 if self.passed else 1

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def table(self):
        width = max(len(c.name) for c in self.checks)
        lines = [f"{'check':<{width}}  result  deviation  phase"]
        for c in self.checks:
            result = "pass" if c.passed else "FAIL"
            phase = core.format_complex(c.phase, precision=6)
            lines.append(f"{c.name:<{width}}  {result:<6}  {c.deviation:<9.3g}  {phase}")
        lines.append(
            f"{len(self.checks)} checks ({self.convention}), "
            f"{len(self.failures)} failed"
        )
        return "\n".join(lines)

    def as_dict(self):
        return {
            "convention": self.convention,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "deviation": c.deviation,
                    "phase": core.format_complex(c.phase),
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def __str__(self):
        return self.table()


def _result(name, deviation, tol, detail="", phase=1 + 0j):
    passed = bool(deviation <= tol)
    logger.debug(f"check {name}: deviation {deviation:.3g}, passed {passed}")
    return Check(name, passed, float(deviation), phase, detail)


def algebra_checks(max_modes=4):
    """Anticommutators {g_i, g_j} = 2 delta_ij on 1 .. max_modes modes."""
    tol = get_option("tolerance.algebra")
    deviation = 0.0
    for n in range(1, max_modes + 1):
        space = FockSpace(n)
        gammas = [majorana(space, i) for i in range(1, space.n_majoranas + 1)]
        identity = np.eye(space.dim)
        for i, j in itertools.product(range(len(gammas)), repeat=2):
            anti = (gammas[i].sparse @ gammas[j].sparse + gammas[j].sparse @ gammas[i].sparse)
            expected = 2 * identity if i == j else 0 * identity
            deviation = max(deviation, float(np.max(np.abs(anti.toarray() - expected))))
    return [_result("anticommutators", deviation, tol, f"1..{max_modes} modes")]


def braid_checks(convention):
    """The elementary braid B23 in both one-qubit sectors, exactly."""
    tol = get_option("tolerance.algebra")
    reference = core.B23_MEM if convention is BraidConvention.MEM else core.B23_IVANOV
    checks = []
    for sector in ("even", "odd"):
        m = word_matrix(WORDS["B23"], sector, convention).matrix
        checks.append(_result(
            f"B23-{sector}", np.max(np.abs(m - reference)), tol,
            f"sector matrix of B23 ({convention.value})",
        ))
    return checks


def hadamard_checks(convention):
    """R(-pi/4) B23 R(-pi/4) = i H exactly for the edge-mode convention."""
    tol = get_option("tolerance.algebra")
    b23 = word_matrix(WORDS["B23"], "even", convention).matrix
    r = word_matrix(WORDS["R(-pi/4)"], "even", convention).matrix
    product = r @ b23 @ r
    if convention is BraidConvention.MEM:
        deviation, phase = np.max(np.abs(product - 1j * core.H)), 1j
    else:
        phase, deviation = best_phase(core.H, product)
    return [_result("hadamard", deviation, tol, "R B23 R = phase x H", phase)]


def parity_witness_checks():
    """The phase gate of the second mode differs between the sectors."""
    tol = get_option("tolerance.algebra")
    space = FockSpace(2)
    r34 = phase_gate(space, (3, 4), -np.pi / 4)
    checks = []
    for sector, reference in (("even", core.R34_EVEN), ("odd", core.R34_ODD)):
        m = sector_matrix(r34, sector_basis(space, sector)).matrix
        checks.append(_result(
            f"parity-witness-{sector}", np.max(np.abs(m - reference)), tol,
            "R34(-pi/4) restricted to the sector",
        ))
    return checks


def basis_checks():
    """Quad parities of the sparse bases and total parity of the dense ones."""
    tol = get_option("tolerance.sequence")
    space = FockSpace(4)
    q1 = quad_parity_op(space, 1, 2, 3, 4)
    q2 = quad_parity_op(space, 5, 6, 7, 8)
    checks = []

    deviation = 0.0
    for _, vec in sparse_even_basis(space):
        for q in (q1, q2):
            deviation = max(deviation, abs(vec.expectation(q) + 1))
    checks.append(_result("sparse-computational", deviation, tol, "both quad parities -1"))

    deviation = 0.0
    for _, vec in sparse_noncomp_basis(space):
        for q in (q1, q2):
            deviation = max(deviation, abs(vec.expectation(q) - 1))
    checks.append(_result("sparse-noncomputational", deviation, tol, "both quad parities +1"))

    dense = FockSpace(3)
    parity_op = total_parity_op(dense)
    for parity, sign in (("even", 1), ("odd", -1)):
        deviation = max(
            abs(vec.expectation(parity_op) - sign)
            for _, vec in dense_basis(dense, parity)
        )
        checks.append(_result(f"dense-{parity}", deviation, tol, "total parity of the dense qubits"))
    return checks


def cnot_checks(convention):
    """CNOT+ in the even and CNOT- in the odd dense sector, CY, CiZ, Y2."""
    tol = get_option("tolerance.sequence")
    checks = []
    for name, sector, reference in (
        ("CNOT+", "even", core.CNOT),
        ("CNOT-", "odd", core.CNOT),
        ("CY", "even", core.CY),
        ("CiZ", "even", core.CIZ),
        ("Y2", "even", core.Y2),
    ):
        m = word_matrix(WORDS[name if name in WORDS else f"{name}+"], sector, convention).matrix
        phase, deviation = best_phase(reference, m)
        checks.append(_result(name, deviation, tol, f"{sector} dense sector", phase))

    product = core.CNOT @ core.CY
    checks.append(_result(
        "CiZ-product", np.max(np.abs(product - core.CIZ)),
        get_option("tolerance.algebra"), "CNOT CY = diag(1, 1, i, -i)",
    ))
    return checks


def swap_checks(convention):
    """The SWAP family against the printed matrices, in moduli."""
    tol = get_option("tolerance.sequence")
    checks = []
    for name, printed in (("SWAP", core.SWAP_PRINTED), ("SWAP'", core.SWAP_PRIME_PRINTED)):
        m = word_matrix(WORDS[name], "full", convention).matrix
        deviation = float(np.max(np.abs(np.abs(m) - np.abs(printed))))
        _, signed = best_phase(printed, m)
        _, prefactored = best_phase(core.SWAP_PREFACTOR * printed, m)
        c = _result(name, deviation, tol, "moduli of the printed matrix")
        c.extra["signed_deviation"] = signed
        c.extra["prefactor_deviation"] = prefactored
        checks.append(c)
    return checks


def collapse_checks(convention):
    """
    The entangling braid on the sparse basis against the superposition basis
    and its printed form, the Pi(4,5) probabilities and the two collapses,
    each compared up to one phase per branch.
    """
    tol = get_option("tolerance.sequence")
    space = FockSpace(4)
    b45 = braid(space, 4, 5, convention)
    observable = pair_observable(space, 4, 5)

    images, halves, empty, occupied, probabilities = [], [], [], [], []
    for label in LOGICAL_LABELS:
        psi = b45 @ encode_logical(label, space)
        images.append(psi.amplitudes)
        p_plus, p_minus, v_plus, v_minus = branch_probabilities(psi, observable)
        halves.append((p_plus, v_plus, v_minus))
        probabilities.extend([p_plus, p_minus])
        empty.append(v_plus / np.sqrt(p_plus))
        occupied.append(v_minus / np.sqrt(p_minus))

    checks = []
    deviation = max(
        best_phase(ref.amplitudes, img)[1]
        for (_, ref), img in zip(sp_basis(space), images)
    )
    checks.append(_result("superposition-basis", deviation, tol, "B45 on the sparse basis, per column"))

    # Each Pi(4,5) half matches the printed half up to its own phase.
    deviation, relative = 0.0, []
    for (_, ref), (p_plus, v_plus, v_minus) in zip(sp_printed_basis(space), halves):
        q_plus, _, r_plus, r_minus = branch_probabilities(ref, observable)
        a, dev_plus = best_phase(r_plus, v_plus)
        b, dev_minus = best_phase(r_minus, v_minus)
        deviation = max(deviation, dev_plus, dev_minus, abs(p_plus - q_plus))
        relative.append(b / a)
    spread = max(abs(r - relative[0]) for r in relative)
    c = _result(
        "superposition-printed", max(deviation, spread), tol,
        "support, moduli and Pi(4,5) probabilities of the printed vectors",
        relative[0],
    )
    c.extra["relative_phase"] = core.format_complex(relative[0], precision=6)
    checks.append(c)

    deviation = max(abs(p - 0.5) for p in probabilities)
    checks.append(_result(
        "collapse-probabilities", deviation, get_option("tolerance.algebra"),
        "Pi(4,5) outcomes 1/2",
    ))

    for name, basis, vectors in (
        ("collapse-even", collapsed_even_basis(space), empty),
        ("collapse-odd", collapsed_odd_basis(space), occupied),
    ):
        found = [best_phase(ref.amplitudes, vec) for (_, ref), vec in zip(basis, vectors)]
        deviation = max(dev for _, dev in found)
        c = _result(name, deviation, tol, "per column", found[0][0])
        _, c.extra["common_phase_deviation"] = best_phase(
            basis.matrix(), np.column_stack(vectors)
        )
        checks.append(c)

    try:
        phase = check_l2("Y2", convention)
        checks.append(_result("y2-correction", 0.0, tol, "X_C' X_D then Y2", phase))
    except ProtocolError as e:
        checks.append(Check("y2-correction", False, float("inf"), 1 + 0j, str(e)))
    return checks


def process_checks(convention):
    """Processes I and II give CNOT on every branch, parities restored."""
    tol = get_option("tolerance.sequence")
    checks = []
    for process in ("process1", "process2"):
        deviation = 0.0
        for m1, m2 in itertools.product((1, -1), (-1, 1)):
            report = run_over_basis(process, m1, m2, convention)
            _, dev = best_phase(core.CNOT, report.logical_matrix)
            deviation = max(deviation, dev)
        parity = all(
            restored_parities(r.final)
            for label in LOGICAL_LABELS
            for r in run_branches(process, encode_logical(label), convention)
        )
        c = _result(process, deviation, tol, "CNOT on all four branches")
        if not parity:
            c.passed = False
            c.detail += "; parities not restored"
        checks.append(c)
    return checks


def statistics_checks(convention, shots=2000, seed=0):
    """Discard success near 1/4, corrected chains always succeed."""
    checks = []
    stats = chain_stats(1, shots, "discard", seed=seed, convention=convention)
    c = _result(
        "discard-rate", abs(stats.rate - stats.expected), 3 * stats.stderr,
        f"{stats.successes}/{shots}, expected {stats.expected_text}",
    )
    checks.append(c)
    for mode in ("process1", "process2"):
        stats = chain_stats(2, shots // 10, mode, seed=seed, convention=convention)
        checks.append(_result(
            f"{mode}-chain", 1 - stats.rate, 0.0,
            f"{stats.successes}/{stats.shots}, {stats.max_corrections_per_gate} corrections per gate at most",
        ))
    return checks


def verify_suite(convention=None, flip_b45=False, shots=2000, seed=0):
    """
    Run every golden check.

    Parameters
    ----------
    convention : BraidConvention or str, optional
    flip_b45 : bool
        Exchange B45 for B54 in the braid-product check, for fault
        injection.
    shots : int
        Shots of the discard statistics.
    seed : int

    Returns
    -------
    VerificationResult
    """
    convention = BraidConvention.resolve(convention)
    result = VerificationResult(convention=convention.value)
    groups = (
        lambda: algebra_checks(),
        lambda: braid_checks(convention),
        lambda: hadamard_checks(convention),
        lambda: duality_check(convention),
        lambda: parity_witness_checks(),
        lambda: basis_checks(),
        lambda: cnot_checks(convention),
        lambda: swap_checks(convention),
        lambda: appendix_c_check(convention, flip_b45),
        lambda: collapse_checks(convention),
        lambda: process_checks(convention),
        lambda: statistics_checks(convention, shots, seed),
    )
    for group in groups:
        try:
            result.checks.extend(group())
        except (GateError, ProtocolError) as e:
            logger.warning(f"check group failed: {e}")
            result.checks.append(Check(type(e).__name__, False, float("inf"), 1 + 0j, str(e)))
    logger.info(f"{len(result.checks)} checks, {len(result.failures)} failed")
    return result
