"""Shipping circuit scripts.

These include:
    process1.mbc:  CNOT on sparse qubits, odd outcomes corrected by state.
    process2.mbc:  CNOT on sparse qubits, odd outcomes corrected by gate.
    discard.mbc:  CNOT without corrections, succeeding one shot in four.
    entangle.mbc:  the entangling braid and the collapse of its superposition.
    hadamard.mbc:  Hadamard from two phase gates and a braid.
    parity_witness.mbc:  one phase gate acting differently per parity.
    cnot_dense.mbc:  CNOT+ on two dense qubits.
    ciz.mbc:  controlled-iZ on two dense qubits.
    swap.mbc:  the two-mode SWAP braid word.
"""
import importlib.resources as ir


def _path(name):
    return str(ir.files('majsim.data').joinpath(name))


def process1():
    """Shortcut for specifying path to process1.mbc.

    Returns
    -------
    file : str
        Platform-independent path to process1.mbc.
    """
    return _path('process1.mbc')


def process2():
    """Shortcut for specifying path to process2.mbc."""
    return _path('process2.mbc')


def discard():
    """Shortcut for specifying path to discard.mbc."""
    return _path('discard.mbc')


def entangle():
    return _path('entangle.mbc')


def hadamard():
    return _path('hadamard.mbc')


def parity_witness():
    return _path('parity_witness.mbc')


def cnot_dense():
    return _path('cnot_dense.mbc')


def ciz():
    return _path('ciz.mbc')


def swap():
    return _path('swap.mbc')


def scripts():
    """Paths of every shipped script, by stem."""
    return {
        p.name.removesuffix('.mbc'): str(p)
        for p in sorted(ir.files('majsim.data').iterdir())
        if p.name.endswith('.mbc')
    }
