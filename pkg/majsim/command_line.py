"""Entry point for console script majsim."""
# Standard library imports ...
import argparse
import json
import logging
import pathlib
import sys
import warnings

# Local imports ...
from . import config, core, version
from .circuit import CircuitError, parse_file
from .encoding import BASES, EncodingError, named_basis
from .gates import GATES, GateError, named_gate
from .options import get_option, set_option
from .protocol import PROCESSES, ProtocolError, chain_stats
from .runner import CircuitRunner, forced_outcomes
from .verify import verify_suite

# Exit codes.
OK, CHECK_FAILED, USAGE_ERROR = 0, 1, 2

_VERBOSITY = ['critical', 'error', 'warning', 'info', 'debug']


def _add_common(parser):
    help = 'Phase convention of an elementary braid.'
    parser.add_argument(
        '--convention', choices=['mem', 'ivanov'], help=help, default=None
    )

    help = 'Logging level.'
    parser.add_argument(
        '--verbosity', help=help, default='warning', choices=_VERBOSITY
    )


def _build_parser():
    kwargs = {
        'prog': 'majsim',
        'description': 'Simulate and verify Majorana braiding circuits.',
        'formatter_class': argparse.ArgumentDefaultsHelpFormatter,
    }
    parser = argparse.ArgumentParser(**kwargs)
    parser.add_argument(
        '--version', action='version', version=f'%(prog)s {version.version}'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    formatter = argparse.ArgumentDefaultsHelpFormatter

    # run
    p = subparsers.add_parser(
        'run', help='Run a circuit script.', formatter_class=formatter
    )
    p.add_argument('filename', help='Circuit script (.mbc).')

    group = p.add_argument_group('sampling', 'How measurement outcomes are drawn.')

    help = (
        'Seed of the random streams.  Defaults to MAJSIM_SEED, then the '
        'majsimrc file, then the run.seed option.'
    )
    group.add_argument('--seed', type=int, help=help, default=None)

    help = 'Number of shots.'
    group.add_argument('--shots', type=int, help=help, default=1)

    help = (
        'Force the outcome of the measurement bound to a variable, given as '
        'var=+1, var=-1, var=even or var=odd.'
    )
    group.add_argument(
        '--force', nargs='+', metavar='VAR=VALUE', help=help, default=[]
    )

    group = p.add_argument_group('output', 'Report format.')
    fmt = group.add_mutually_exclusive_group()
    fmt.add_argument('--json', action='store_true', help='Print JSON.')
    fmt.add_argument('--xml', action='store_true', help='Print XML.')
    _add_common(p)
    p.set_defaults(func=_run)

    # gate
    p = subparsers.add_parser(
        'gate', help='Show the braid word of a named gate.',
        formatter_class=formatter,
    )
    help = f'One of {", ".join(GATES)}.'
    p.add_argument('name', help=help)

    help = 'Parity sector.  Each gate has a default.'
    p.add_argument('--sector', choices=['even', 'odd', 'full'], help=help)

    help = 'Also print the sector matrix.'
    p.add_argument('--matrix', action='store_true', help=help)
    _add_common(p)
    p.set_defaults(func=_gate)

    # basis
    p = subparsers.add_parser(
        'basis', help='Show a named encoded basis.', formatter_class=formatter
    )
    help = f'One of {", ".join(BASES)}.'
    p.add_argument('name', help=help)
    _add_common(p)
    p.set_defaults(func=_basis)

    # verify
    p = subparsers.add_parser(
        'verify', help='Run the golden checks.', formatter_class=formatter
    )
    help = 'Shots of the discard statistics check.'
    p.add_argument('--shots', type=int, help=help, default=2000)
    p.add_argument('--json', action='store_true', help='Print JSON.')
    _add_common(p)
    p.set_defaults(func=_verify)

    # bench
    p = subparsers.add_parser(
        'bench', help='Success statistics of a chain of CNOT gates.',
        formatter_class=formatter,
    )
    help = 'Number of sequential CNOT gates.'
    p.add_argument('--chain', type=int, help=help, default=1, metavar='N')

    help = 'How the odd measurement outcomes are handled.'
    p.add_argument('--mode', choices=list(PROCESSES), help=help, default='discard')

    help = 'Number of shots.'
    p.add_argument('--shots', type=int, help=help, default=10000)

    help = 'Seed of the random streams.'
    p.add_argument('--seed', type=int, help=help, default=None)

    help = 'Use this many threads.  Defaults to the run.num_threads option.'
    p.add_argument('--num-threads', type=int, help=help, default=None)

    help = 'Logical basis input.'
    p.add_argument(
        '--input', choices=['00', '01', '10', '11'], help=help, default='10'
    )
    _add_common(p)
    p.set_defaults(func=_bench)

    return parser


def _run(args):
    path = pathlib.Path(args.filename)
    circuit = parse_file(path)
    forced = forced_outcomes(circuit, args.force)
    seed = config.default_seed() if args.seed is None else args.seed

    kwargs = {
        'seed': seed,
        'shots': args.shots,
        'forced': forced,
        'convention': args.convention,
        'verbosity': getattr(logging, args.verbosity.upper()),
    }
    with CircuitRunner(circuit, **kwargs) as runner:
        report = runner.run()

    if args.json:
        sys.stdout.write(report.to_json())
    elif args.xml:
        sys.stdout.write(report.to_xml())
    else:
        sys.stdout.write(report.to_text())
    return OK


def _gate(args):
    # Print the gate before any warning about its printed reference.
    with warnings.catch_warnings(record=True) as wctx:
        warnings.simplefilter('always')
        gm = named_gate(args.name, args.sector, args.convention)

    print(gm.provenance)
    print(f'braids: {gm.word.braid_count}, phase elements: {gm.word.phase_count}')
    print(f'phase: {core.format_complex(gm.phase)}')
    if args.matrix:
        print(f'basis: {" ".join(gm.basis)}')
        for row in gm.normalized():
            print('  ' + '  '.join(core.format_complex(z) for z in row))

    for warning in wctx:
        print(f'{warning.category.__name__}: {warning.message}')
    return OK


def _basis(args):
    basis = named_basis(args.name)
    print(f'{basis.name} ({basis.space.n_modes} modes, frame {basis.pairing})')
    print(f'printed: {basis.provenance}')
    tol = get_option('tolerance.sequence')
    for label, vec in basis:
        terms = '  '.join(
            f'({core.format_complex(amp)})|{ket}>'
            for ket, amp in vec.components(vec.space.canonical_pairing).items()
            if abs(amp) > tol
        )
        print(f'  {label}:  {terms}')
    return OK


def _verify(args):
    result = verify_suite(args.convention, shots=args.shots, seed=config.default_seed())
    if args.json:
        print(json.dumps(result.as_dict(), indent=2))
    else:
        print(result.table())
    return result.status


def _bench(args):
    seed = config.default_seed() if args.seed is None else args.seed
    stats = chain_stats(
        args.chain, args.shots, args.mode, seed=seed,
        num_threads=args.num_threads, input_label=args.input,
        convention=args.convention,
    )
    print(stats)
    return OK if args.mode == 'discard' or stats.rate == 1 else CHECK_FAILED


def main(argv=None):
    """Entry point for console script majsim."""
    parser = _build_parser()
    args = parser.parse_args(argv)

    logger = logging.getLogger('majsim')
    if args.command != 'run':
        logger.setLevel(getattr(logging, args.verbosity.upper()))
        if not logger.handlers:
            logger.addHandler(logging.StreamHandler())

    config.load_options()
    if args.convention is not None:
        set_option('braid.convention', args.convention)

    try:
        return args.func(args)
    except (CircuitError, EncodingError, GateError, ProtocolError, OSError) as e:
        print(f'majsim: error: {e}', file=sys.stderr)
        return USAGE_ERROR
