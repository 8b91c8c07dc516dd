"""majsim - simulate and verify Majorana braiding circuits in the
sparse-dense mixed encoding."""

__all__ = [
    'data', 'circuit',
    'get_option', 'set_option', 'reset_option',
    'FockSpace', 'Pairing', 'Operator', 'StateVector', 'build_space',
    'majorana', 'pair_parity_op', 'quad_parity_op', 'total_parity_op',
    'pairing_basis', 'best_phase', 'phase_match',
    'BraidConvention', 'braid', 'phase_gate', 'named_gate', 'gate_word',
    'sector_matrix', 'is_parity_independent', 'duality_check',
    'appendix_c_check', 'GATES', 'WORDS',
    'LogicalTwoQubit', 'EncodedBasis', 'named_basis', 'encode_logical',
    'decode_logical', 'relabeled_pairing',
    'OutcomePolicy', 'measure', 'pair_observable', 'quad_observable',
    'rng_stream',
    'cnot_process1', 'cnot_process2', 'cnot_discard',
    'general_corrected_gate', 'general_process', 'check_l2',
    'logical_matrix', 'run_branches', 'chain_stats',
    'parse', 'parse_file', 'run', 'CircuitRunner', 'verify_suite',
]

# Local imports
from majsim import version
from .options import get_option, set_option, reset_option
from .fock import (
    FockSpace, Pairing, Operator, StateVector, build_space, majorana,
    pair_parity_op, quad_parity_op, total_parity_op, pairing_basis,
    best_phase, phase_match,
)
from .gates import (
    BraidConvention, braid, phase_gate, named_gate, gate_word, sector_matrix,
    is_parity_independent, duality_check, appendix_c_check, GATES, WORDS,
)
from .encoding import (
    LogicalTwoQubit, EncodedBasis, named_basis, encode_logical,
    decode_logical, relabeled_pairing,
)
from .measurement import (
    OutcomePolicy, measure, pair_observable, quad_observable, rng_stream,
)
from .protocol import (
    cnot_process1, cnot_process2, cnot_discard, general_corrected_gate,
    general_process, check_l2, logical_matrix, run_branches, chain_stats,
)
from .circuit import parse, parse_file
from .runner import run, CircuitRunner
from .verify import verify_suite
from . import circuit, data

__version__ = version.version
