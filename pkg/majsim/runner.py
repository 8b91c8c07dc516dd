"""Execute parsed circuits and render their reports."""

# Standard library imports ...
from dataclasses import dataclass, field
import json
import logging
import warnings

# Third party library imports ...
import lxml.etree as ET
import numpy as np

# Local imports ...
from . import core
from .circuit import (
    PARITIES, Braid, CircuitError, CircuitRuntimeError, CircuitSemanticError,
    Gate, If, Measure2, Measure4, Phase, Prepare, Print,
)
from .encoding import (
    LOGICAL_LABELS, EncodingError, decode_logical, ket_sum, named_basis,
)
from .fock import FockSpace, FockSpaceError, StateVector
from .gates import (
    GATES, GateError, SectorLeakageError, braid, canonical_name, gate_word,
    named_gate, phase_gate,
)
from .measurement import (
    MeasurementError, OutcomePolicy, measure, pair_observable, quad_observable,
)
from .options import get_option

logger = logging.getLogger(__name__)

# Library errors reported against the statement that raised them.
_RUNTIME_ERRORS = (
    EncodingError, FockSpaceError, GateError, MeasurementError,
    SectorLeakageError,
)


@dataclass
class Report:
    """Output of a circuit run.

    The trace, measurements, printed outputs and final state belong to the
    first shot; counts aggregate every shot.

    Attributes
    ----------
    name : str
    n_majoranas : int
    convention : str
    seed : int
    shots : int
    forced : dict
        Measurement variable to forced eigenvalue.
    trace : list of dict
        One entry per executed statement: line, statement, detail.
    measurements : list of MeasurementRecord
    outputs : list of dict
        One entry per print statement.
    final : StateVector
    counts : dict
        Variable to {'even': n, 'odd': n}.
    all_even : int
        Shots in which every bound variable came out even.
    """

    name: str
    n_majoranas: int
    convention: str
    seed: int
    shots: int
    forced: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    measurements: list = field(default_factory=list)
    outputs: list = field(default_factory=list)
    final: StateVector | None = None
    counts: dict = field(default_factory=dict)
    all_even: int = 0

    def amplitudes(self, state=None):
        """Nonzero amplitudes as (label, 're+imi') pairs."""
        state = self.final if state is None else state
        return _amplitude_list(state)

    def as_dict(self):
        """Report as nested dicts and lists in a fixed field order."""
        return {
            "circuit": self.name,
            "space": self.n_majoranas,
            "convention": self.convention,
            "seed": self.seed,
            "shots": self.shots,
            "forced": dict(self.forced),
            "trace": list(self.trace),
            "measurements": [record.as_dict() for record in self.measurements],
            "outputs": list(self.outputs),
            "final_state": {
                "norm": core.format_real(self.final.norm, get_option("print.precision")),
                "amplitudes": [
                    {"label": label, "amplitude": amp}
                    for label, amp in self.amplitudes()
                ],
            },
            "statistics": {
                "counts": {var: dict(c) for var, c in self.counts.items()},
                "all_even": self.all_even,
            },
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_xml(self):
        d = self.as_dict()
        root = ET.Element("report", circuit=d["circuit"])
        for key in ("space", "convention", "seed", "shots"):
            ET.SubElement(root, key).text = str(d[key])

        forced = ET.SubElement(root, "forced")
        for var, value in d["forced"].items():
            ET.SubElement(forced, "outcome", variable=var).text = f"{value:+d}"

        trace = ET.SubElement(root, "trace")
        for entry in d["trace"]:
            elt = ET.SubElement(trace, "step", line=str(entry["line"]))
            elt.text = entry["statement"]
            if entry["detail"]:
                elt.set("detail", entry["detail"])

        measurements = ET.SubElement(root, "measurements")
        for record in d["measurements"]:
            ET.SubElement(
                measurements, "measurement",
                label=record["label"],
                observable=record["observable"],
                outcome=f"{record['outcome']:+d}",
                raw=f"{record['raw']:+d}",
                parity=record["parity"],
                probability=repr(record["probability"]),
            )

        outputs = ET.SubElement(root, "outputs")
        for output in d["outputs"]:
            _output_xml(outputs, output)

        final = ET.SubElement(root, "final_state", norm=d["final_state"]["norm"])
        for amp in d["final_state"]["amplitudes"]:
            ET.SubElement(final, "amplitude", label=amp["label"]).text = amp["amplitude"]

        stats = ET.SubElement(root, "statistics", all_even=str(d["statistics"]["all_even"]))
        for var, c in d["statistics"]["counts"].items():
            ET.SubElement(stats, "counts", variable=var, even=str(c["even"]), odd=str(c["odd"]))

        return ET.tostring(root, pretty_print=True, encoding="unicode")

    def to_text(self):
        lines = [
            f"circuit: {self.name}",
            f"space: {self.n_majoranas} Majoranas ({self.n_majoranas // 2} modes), "
            f"convention {self.convention}",
            f"seed: {self.seed}, shots: {self.shots}",
        ]
        if self.forced:
            forced = ", ".join(f"{var}={value:+d}" for var, value in self.forced.items())
            lines.append(f"forced: {forced}")

        lines.append("trace:")
        for entry in self.trace:
            text = f"  line {entry['line']:>3}  {entry['statement']}"
            if entry["detail"]:
                text += f"    [{entry['detail']}]"
            lines.append(text)

        for output in self.outputs:
            lines.append(f"print ({output['kind']}, line {output['line']}):")
            lines.extend(_output_text(output))

        lines.append(f"final state (norm {self.as_dict()['final_state']['norm']}):")
        for label, amp in self.amplitudes():
            lines.append(f"  |{label}>  {amp}")

        if self.counts:
            lines.append(f"statistics over {self.shots} shot(s):")
            width = max(len(var) for var in self.counts)
            for var, c in self.counts.items():
                lines.append(f"  {var:<{width}}  even {c['even']}  odd {c['odd']}")
            lines.append(f"  all even: {self.all_even}")
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def _amplitude_list(state):
    tol = get_option("tolerance.sequence")
    return [
        (label, core.format_complex(amp))
        for label, amp in state.components().items()
        if abs(amp) > tol
    ]


def _output_text(output):
    kind = output["kind"]
    if kind == "state":
        return [f"  |{a['label']}>  {a['amplitude']}" for a in output["amplitudes"]]
    if kind == "logical":
        if output["amplitudes"] is None:
            return [f"  leaves the computational span (leakage {output['leakage']})"]
        return [f"  |{label}>  {amp}" for label, amp in output["amplitudes"].items()]
    if kind == "basis":
        lines = [f"  {label}  {c}" for label, c in output["coefficients"].items()]
        lines.append(f"  leakage: {output['leakage']}")
        return lines
    lines = [
        f"  {output['gate']} [{output['sector']}] = ({output['phase']}) x",
        f"  basis: {' '.join(output['basis'])}",
    ]
    lines.extend("    " + "  ".join(row) for row in output["rows"])
    if output.get("note"):
        lines.append(f"  note: {output['note']}")
    return lines


def _output_xml(parent, output):
    elt = ET.SubElement(parent, "output", kind=output["kind"], line=str(output["line"]))
    if output["kind"] == "state":
        for amp in output["amplitudes"]:
            ET.SubElement(elt, "amplitude", label=amp["label"]).text = amp["amplitude"]
    elif output["kind"] == "logical":
        if output["amplitudes"] is None:
            elt.set("leakage", output["leakage"])
        else:
            for label, amp in output["amplitudes"].items():
                ET.SubElement(elt, "amplitude", label=label).text = amp
    elif output["kind"] == "basis":
        elt.set("basis", output["basis"])
        elt.set("leakage", output["leakage"])
        for label, c in output["coefficients"].items():
            ET.SubElement(elt, "coefficient", label=label).text = c
    else:
        elt.set("gate", output["gate"])
        elt.set("sector", output["sector"])
        elt.set("phase", output["phase"])
        if output.get("note"):
            elt.set("note", output["note"])
        for row in output["rows"]:
            ET.SubElement(elt, "row").text = " ".join(row)


class _Execution:
    """One shot of a circuit."""

    def __init__(self, runner, policy, record):
        self.runner = runner
        self.space = runner.space
        self.policy = policy
        self.record = record
        self.state = StateVector(self.space, self.space.basis_state("0" * self.space.n_modes).amplitudes)
        self.values = {}
        self.measurements = []
        self.trace = []
        self.outputs = []

    def run(self, statements):
        for stmt in statements:
            try:
                detail = self.execute(stmt)
            except CircuitError:
                raise
            except _RUNTIME_ERRORS as e:
                raise CircuitRuntimeError(str(e), stmt.lineno, stmt.column) from e
            if self.record and not isinstance(stmt, If):
                self.trace.append({"line": stmt.lineno, "statement": stmt.text(), "detail": detail})
            logger.debug(f"line {stmt.lineno}: {stmt.text()} {detail}".rstrip())

    def execute(self, stmt):
        if isinstance(stmt, Prepare):
            terms = {label: sign for sign, label in stmt.terms}
            self.state = ket_sum(self.space, terms)
            return ""
        if isinstance(stmt, (Braid, Phase, Gate)):
            self.state = self.runner.operator(stmt) @ self.state
            return ""
        if isinstance(stmt, (Measure2, Measure4)):
            observable = self.runner.observable(stmt)
            record, self.state = measure(self.state, observable, self.policy, stmt.var)
            self.values[stmt.var] = record.parity
            self.measurements.append(record)
            return (
                f"{record.observable} = {record.outcome:+d} ({record.parity}, "
                f"p = {record.probability:.6g})"
            )
        if isinstance(stmt, If):
            if stmt.var not in self.values:
                msg = f"variable '{stmt.var}' was not bound on this branch"
                raise CircuitRuntimeError(msg, stmt.lineno, stmt.column)
            taken = self.values[stmt.var] == stmt.parity
            if self.record:
                self.trace.append({
                    "line": stmt.lineno,
                    "statement": f"if {stmt.var} == {stmt.parity}",
                    "detail": "taken" if taken else "skipped",
                })
            if taken:
                self.run(stmt.body)
            return ""
        if isinstance(stmt, Print):
            if self.record:
                self.outputs.append(self.print_output(stmt))
            return ""
        return ""

    def print_output(self, stmt):
        if stmt.what == "state":
            return {
                "kind": "state",
                "line": stmt.lineno,
                "amplitudes": [
                    {"label": label, "amplitude": amp}
                    for label, amp in _amplitude_list(self.state)
                ],
            }
        if stmt.what == "logical":
            try:
                logical = decode_logical(self.state)
            except SectorLeakageError as e:
                return {
                    "kind": "logical", "line": stmt.lineno, "amplitudes": None,
                    "leakage": f"{e.leakage:.6g}",
                }
            return {
                "kind": "logical",
                "line": stmt.lineno,
                "amplitudes": {
                    label: core.format_complex(amp)
                    for label, amp in zip(LOGICAL_LABELS, logical.amplitudes)
                },
            }

        if stmt.what == "basis":
            basis = named_basis(stmt.target, self.space)
            coefficients = basis.coefficients(self.state)
            residual = self.state.amplitudes - basis.matrix() @ coefficients
            return {
                "kind": "basis",
                "line": stmt.lineno,
                "basis": basis.name,
                "coefficients": {
                    label: core.format_complex(c)
                    for label, c in zip(basis.labels, coefficients)
                },
                "leakage": core.format_real(np.linalg.norm(residual), 6),
            }

        # print matrix: warnings about the comparison go into the report.
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            gm = named_gate(stmt.target, convention=self.runner.convention)
        name = canonical_name(stmt.target)
        sector = GATES[name].default_sector
        output = {
            "kind": "matrix",
            "line": stmt.lineno,
            "gate": name,
            "sector": sector,
            "phase": core.format_complex(gm.phase),
            "basis": list(gm.basis),
            "rows": [[core.format_complex(z) for z in row] for row in gm.normalized()],
        }
        if caught:
            output["note"] = str(caught[0].message)
        return output


def forced_outcomes(circuit, items):
    """
    Turn 'var=value' items into forced eigenvalues.

    The value is +1, -1 or a parity; 'even' means +1 for a measure2 binding
    and -1 for a measure4 binding.

    Raises
    ------
    CircuitSemanticError
        For a malformed item or a variable the circuit does not bind.
    """
    bindings = {
        stmt.var: stmt for stmt in circuit.walk()
        if isinstance(stmt, (Measure2, Measure4))
    }
    forced = {}
    for item in items:
        var, sep, value = item.partition("=")
        if not sep:
            raise CircuitSemanticError(
                f"cannot read forced outcome {item!r}",
                hint="use var=+1, var=-1, var=even or var=odd",
            )
        if var not in bindings:
            raise CircuitSemanticError(
                f"variable '{var}' is not bound by the circuit",
                hint=f"variables: {', '.join(circuit.variables) or 'none'}",
            )
        even = 1 if isinstance(bindings[var], Measure2) else -1
        value = value.strip().replace("−", "-")
        if value in PARITIES:
            forced[var] = even if value == "even" else -even
        elif value in ("+1", "1", "-1"):
            forced[var] = int(value)
        else:
            raise CircuitSemanticError(
                f"forced outcome of '{var}' must be +1, -1, even or odd, not {value!r}"
            )
    return forced


class CircuitRunner:
    """
    Run a circuit for a number of shots.

    Shot k draws its outcomes from the stream (seed, k); forced outcomes
    override sampling for the measurements bound to the named variables.

    Parameters
    ----------
    circuit : Circuit
    seed : int, optional
        Defaults to the run.seed option.
    shots : int
    forced : dict, optional
        Variable to +1 or -1, the eigenvalue of the measured observable.
    convention : str, optional
        Braid convention, defaults to the braid.convention option.
    verbosity : int
        Logging level of the majsim logger.
    """

    def __init__(
        self, circuit, seed=None, shots=1, forced=None, convention=None,
        verbosity=logging.WARNING,
    ):
        self.circuit = circuit
        self.seed = get_option("run.seed") if seed is None else seed
        self.shots = shots
        self.forced = dict(forced or {})
        self.convention = convention or get_option("braid.convention")
        self.space = FockSpace(circuit.n_modes)
        self._operators = {}
        self._observables = {}

        if shots < 1:
            raise CircuitRuntimeError("shots must be positive", 0, 0)
        unknown = set(self.forced) - set(circuit.variables)
        if unknown:
            msg = f"forced variable(s) {', '.join(sorted(unknown))} not bound by the circuit"
            raise CircuitRuntimeError(msg, 0, 0, f"variables: {', '.join(circuit.variables)}")

        self.setup_logging(verbosity)

    def __enter__(self):
        self._previous_level = self.logger.level
        self.logger.setLevel(self._verbosity)
        self.logger.addHandler(self._handler)
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        self.logger.removeHandler(self._handler)
        self.logger.setLevel(self._previous_level)

    def setup_logging(self, verbosity):
        """The handler is attached only inside a with block."""
        self.logger = logging.getLogger("majsim")
        self._verbosity = verbosity
        self._handler = logging.StreamHandler()
        self._handler.setLevel(verbosity)

    def operator(self, stmt):
        """Full-space operator of a braid, phase or gate statement."""
        if stmt not in self._operators:
            pairs = self.circuit.pairs
            if isinstance(stmt, Braid):
                op = braid(self.space, stmt.i, stmt.j, self.convention)
            elif isinstance(stmt, Phase):
                op = phase_gate(self.space, pairs[stmt.pair], stmt.theta)
            else:
                word = gate_word(canonical_name(stmt.name))
                modes = [pairs[name] for name in stmt.pairs]
                op = word.operator(self.space, modes, self.convention)
            self._operators[stmt] = op
        return self._operators[stmt]

    def observable(self, stmt):
        if stmt not in self._observables:
            if isinstance(stmt, Measure2):
                obs = pair_observable(self.space, *stmt.indices)
            else:
                obs = quad_observable(self.space, *stmt.indices)
            self._observables[stmt] = obs
        return self._observables[stmt]

    def policy(self, shot):
        if self.forced:
            return OutcomePolicy.forced(self.forced, seed=self.seed, shot=shot)
        return OutcomePolicy.sampled(self.seed, shot)

    def run(self):
        """
        Returns
        -------
        Report

        Raises
        ------
        CircuitRuntimeError
            With the location of the failing statement.
        """
        report = Report(
            self.circuit.name, self.circuit.n_majoranas, self.convention,
            self.seed, self.shots, self.forced,
        )
        counts = {var: {"even": 0, "odd": 0} for var in self.circuit.variables}

        for shot in range(self.shots):
            execution = _Execution(self, self.policy(shot), record=shot == 0)
            execution.run(self.circuit.statements)
            for var, parity in execution.values.items():
                counts[var][parity] += 1
            if execution.values and all(p == "even" for p in execution.values.values()):
                report.all_even += 1
            if shot == 0:
                report.trace = execution.trace
                report.measurements = execution.measurements
                report.outputs = execution.outputs
                report.final = execution.state

        report.counts = counts
        logger.info(
            f"{self.circuit.name}: {self.shots} shot(s), all even {report.all_even}"
        )
        return report


def run(circuit, seed=None, shots=1, forced=None, convention=None):
    """Run a circuit and return its Report."""
    with CircuitRunner(circuit, seed, shots, forced, convention) as runner:
        return runner.run()
