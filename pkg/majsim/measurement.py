"""Projective measurement of Majorana parity observables.

Outcomes are drawn from per-shot random streams.  A stream is a Philox4x64
counter-based generator (numpy.random.Philox, 10 rounds) keyed with the
128-bit value shot * 2**64 + seed, so every (seed, shot) pair yields the same
uniform variates regardless of the order or the thread in which shots run.
Each sampled measurement consumes exactly one variate u and reports +1 when
u < p(+1).
"""

# Standard library imports ...
from collections.abc import Mapping
from dataclasses import dataclass
import enum
import logging

# Third party library imports ...
import numpy as np

# Local imports ...
from .fock import Operator, StateVector, pair_parity_op, quad_parity_op
from .options import get_option

logger = logging.getLogger(__name__)


class MeasurementError(RuntimeError):
    """Raise this exception for an observable that is not a Hermitian
    involution, or when a forced outcome sequence runs out.
    """

    pass


class ZeroProbabilityError(MeasurementError):
    """Raise this exception when a forced outcome cannot occur."""

    def __init__(self, msg, probability):
        super().__init__(msg)
        self.probability = probability


def rng_stream(seed, shot=0):
    """
    Deterministic uniform stream of one shot.

    Parameters
    ----------
    seed : int
        Non-negative 64-bit seed.
    shot : int
        Non-negative shot number.

    Returns
    -------
    numpy.random.Generator
    """
    if not 0 <= seed < 2 ** 64:
        raise ValueError(f"Seed {seed} is not a non-negative 64-bit integer.")
    if not 0 <= shot < 2 ** 64:
        raise ValueError(f"Shot {shot} is not a non-negative 64-bit integer.")
    return np.random.Generator(np.random.Philox(key=(shot << 64) | seed))


@dataclass(frozen=True)
class Observable:
    """A parity observable with eigenvalues +1 and -1.

    Attributes
    ----------
    operator : Operator
    name : str
        e.g. 'Pi(4,5)' or 'g5g6g7g8'.
    indices : tuple
        Majorana indices involved.
    raw_sign : int
        Sign relating the reported eigenvalue to the raw operator,
        raw = raw_sign * outcome.  The raw form of a pair parity is
        i gamma_a gamma_b, the negative of Pi(a, b).
    even_outcome : int
        Outcome that signals even parity of the measured modes.
    checked : bool
        True when the operator is known to be a Hermitian involution.
    """

    operator: Operator
    name: str
    indices: tuple = ()
    raw_sign: int = 1
    even_outcome: int = 1
    checked: bool = False

    def parity(self, outcome):
        """'even' or 'odd' for an outcome."""
        return "even" if outcome == self.even_outcome else "odd"


def pair_observable(space, a, b):
    """Pi(a, b) = -i gamma_a gamma_b, +1 on an empty pair."""
    op = pair_parity_op(space, a, b)
    return Observable(
        op, f"Pi({a},{b})", (a, b), raw_sign=-1, even_outcome=1, checked=True
    )


def quad_observable(space, a, b, c, d):
    """gamma_a gamma_b gamma_c gamma_d, -1 on an even pair of pairs."""
    op = quad_parity_op(space, a, b, c, d)
    return Observable(
        op, op.description, (a, b, c, d), raw_sign=1, even_outcome=-1,
        checked=True,
    )


@dataclass(frozen=True)
class MeasurementRecord:
    """One projective measurement.

    Attributes
    ----------
    label : str
        e.g. 'M1'.
    observable : str
    indices : tuple
    outcome : int
        Reported eigenvalue, +1 or -1.
    raw : int
        Eigenvalue of the raw operator form.
    parity : str
        'even' or 'odd'.
    probability : float
        Born probability of the outcome.
    norm_before, norm_after : float
        Norms of the state and of the renormalized collapse.
    """

    label: str
    observable: str
    indices: tuple
    outcome: int
    raw: int
    parity: str
    probability: float
    norm_before: float
    norm_after: float

    def as_dict(self):
        return {
            "label": self.label,
            "observable": self.observable,
            "indices": list(self.indices),
            "outcome": self.outcome,
            "raw": self.raw,
            "parity": self.parity,
            "probability": self.probability,
        }


class OutcomeMode(enum.Enum):
    SAMPLED = "sampled"
    FORCED = "forced"
    ENUMERATE = "enumerate"


class OutcomePolicy:
    """How measurement outcomes are chosen.

    A sampled policy owns the random stream of one shot; a forced policy
    hands out prescribed outcomes either in order or by measurement label,
    and samples the remaining ones from the stream of (seed, shot) when it
    was given a seed; an enumerate policy asks for every branch.  Policies
    are consumed as measurements happen, so use one per run.
    """

    def __init__(self, mode, seed=None, shot=0, outcomes=None):
        self.mode = OutcomeMode(mode)
        self.seed = seed
        self.shot = shot
        self._rng = None
        self._by_label = {}
        self._queue = []
        self.consumed = 0

        if self.mode is OutcomeMode.SAMPLED:
            self.seed = get_option("run.seed") if seed is None else seed
            self._rng = rng_stream(self.seed, shot)
        elif self.mode is OutcomeMode.FORCED:
            if seed is not None:
                self._rng = rng_stream(seed, shot)
            outcomes = {} if outcomes is None else outcomes
            if isinstance(outcomes, Mapping):
                self._by_label = {k: _check_outcome(v) for k, v in outcomes.items()}
            else:
                self._queue = [_check_outcome(v) for v in outcomes]

    def __repr__(self):
        return f"OutcomePolicy({self.mode.value})"

    @classmethod
    def sampled(cls, seed=None, shot=0):
        return cls(OutcomeMode.SAMPLED, seed=seed, shot=shot)

    @classmethod
    def forced(cls, outcomes, seed=None, shot=0):
        """
        Parameters
        ----------
        outcomes : sequence of +1/-1, or mapping of label to +1/-1
        seed : int, optional
            Seed for the measurements without a prescribed outcome.
        shot : int
        """
        return cls(OutcomeMode.FORCED, seed=seed, shot=shot, outcomes=outcomes)

    @classmethod
    def enumerate(cls):
        return cls(OutcomeMode.ENUMERATE)

    def choose(self, label, p_plus):
        """Outcome of the next measurement, given the +1 probability."""
        self.consumed += 1
        if self.mode is OutcomeMode.SAMPLED:
            return 1 if self._rng.random() < p_plus else -1
        if self.mode is OutcomeMode.FORCED:
            if label in self._by_label:
                return self._by_label[label]
            if self._queue:
                return self._queue.pop(0)
            if self._rng is not None:
                return 1 if self._rng.random() < p_plus else -1
            msg = f"No forced outcome left for measurement {label}."
            raise MeasurementError(msg)
        raise MeasurementError("An enumerate policy does not choose outcomes.")


def _check_outcome(value):
    value = int(value)
    if value not in (1, -1):
        raise MeasurementError(f"Outcomes are +1 or -1, not {value}.")
    return value


def _as_observable(observable):
    if isinstance(observable, Observable):
        return observable
    if isinstance(observable, Operator):
        return Observable(observable, observable.description or "observable")
    raise MeasurementError(f"Cannot measure {observable!r}.")


def branch_probabilities(state, observable):
    """Return (p_plus, p_minus, psi_plus, psi_minus) of a measurement."""
    obs = _as_observable(observable)
    psi = state.amplitudes
    applied = obs.operator.apply(psi)
    psi_plus = (psi + applied) / 2
    psi_minus = (psi - applied) / 2
    p_plus = float(np.vdot(psi_plus, psi_plus).real)
    p_minus = float(np.vdot(psi_minus, psi_minus).real)
    return p_plus, p_minus, psi_plus, psi_minus


def _collapse(state, obs, label, outcome, probability, vector):
    norm_after = float(np.linalg.norm(vector))
    collapsed = StateVector(
        state.space, vector / norm_after, state.pairing
    )
    record = MeasurementRecord(
        label=label,
        observable=obs.name,
        indices=tuple(obs.indices),
        outcome=outcome,
        raw=obs.raw_sign * outcome,
        parity=obs.parity(outcome),
        probability=probability,
        norm_before=state.norm,
        norm_after=collapsed.norm,
    )
    logger.debug(
        f"{label}: {obs.name} = {outcome:+d} ({record.parity}), "
        f"p = {probability:.6g}"
    )
    return record, collapsed


def measure(state, observable, policy, label="M"):
    """
    Projective measurement with the projectors (I +/- O) / 2.

    Parameters
    ----------
    state : StateVector
    observable : Observable or Operator
        Hermitian involution.
    policy : OutcomePolicy
    label : str

    Returns
    -------
    (MeasurementRecord, StateVector)
        For sampled and forced policies.
    list of (MeasurementRecord, StateVector)
        For an enumerate policy, one entry per outcome of nonzero
        probability, +1 first.

    Raises
    ------
    MeasurementError
        If the observable is not a Hermitian involution.
    ZeroProbabilityError
        If a forced outcome has probability below tolerance.forced.
    """
    obs = _as_observable(observable)
    hermitian = obs.checked or obs.operator.is_hermitian(
        get_option("tolerance.sequence")
    )
    if not (hermitian and (obs.checked or obs.operator.is_involution())):
        msg = f"{obs.name} is not a Hermitian involution."
        raise MeasurementError(msg)

    p_plus, p_minus, psi_plus, psi_minus = branch_probabilities(state, obs)
    tol = get_option("tolerance.forced")
    branches = {1: (p_plus, psi_plus), -1: (p_minus, psi_minus)}

    if policy.mode is OutcomeMode.ENUMERATE:
        return [
            _collapse(state, obs, label, outcome, p, vector)
            for outcome, (p, vector) in branches.items()
            if p > tol
        ]

    outcome = policy.choose(label, p_plus)
    probability, vector = branches[outcome]
    if probability < tol:
        msg = (
            f"Outcome {outcome:+d} of {label} ({obs.name}) has probability "
            f"{probability:.3g}."
        )
        raise ZeroProbabilityError(msg, probability)
    return _collapse(state, obs, label, outcome, probability, vector)
