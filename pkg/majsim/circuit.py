"""Text format for Majorana circuits.

A circuit is a line-oriented script:

    # comments run to the end of the line
    space 8                      # number of Majoranas
    pair A 1 2                   # name an ordered Majorana pair
    prepare |1100> - |0011>      # signed sum of kets of equal parity
    braid 4 5
    phase A -pi/4
    gate CNOT+ A Bp D            # gate word on named pairs
    measure2 4 5 -> m1           # Pi(4,5), m1 = even on +1
    measure4 5 6 7 8 -> m2       # g5g6g7g8, m2 = even on -1
    if m1 == odd { braid 5 7 braid 5 7 }
    print state | print matrix CNOT+ | print logical | print basis sp

Statements inside braces may share a line.  Diagnostics carry the line and
column of the offending token.
"""

# Standard library imports ...
from dataclasses import dataclass, field
from fractions import Fraction
import math
import pathlib
import re

# Local imports ...
from .encoding import BASES, basis_modes
from .gates import GATES, GateError, canonical_name, gate_word

MAX_MAJORANAS = 24

KEYWORDS = frozenset({
    "space", "pair", "prepare", "braid", "phase", "gate", "measure2",
    "measure4", "if", "print",
})
PARITIES = ("even", "odd")
PRINTABLES = ("state", "matrix", "logical", "basis")


class CircuitError(Exception):
    """Base class of circuit diagnostics.

    Attributes
    ----------
    lineno, column : int
        1-based position of the offending token.
    hint : str or None
        What was expected instead.
    """

    def __init__(self, msg, lineno=0, column=0, hint=None):
        super().__init__(msg)
        self.msg = msg
        self.lineno = lineno
        self.column = column
        self.hint = hint

    def __str__(self):
        text = self.msg
        if self.lineno:
            text = f"line {self.lineno}, column {self.column}: {text}"
        if self.hint:
            text += f" ({self.hint})"
        return text


class CircuitLexError(CircuitError):
    """Raise this exception for a character that starts no token."""

    pass


class CircuitSyntaxError(CircuitError):
    """Raise this exception for tokens out of grammatical order."""

    pass


class CircuitSemanticError(CircuitError):
    """Raise this exception for a well-formed statement that makes no sense,
    e.g. an undeclared index or a re-bound measurement variable.
    """

    pass


class CircuitRuntimeError(CircuitError):
    """Raise this exception when executing a statement fails."""

    pass


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    lineno: int
    column: int


_TOKEN_SPEC = (
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+|#[^\n]*"),
    ("KET", r"\|[01]+>"),
    ("ARROW", r"->"),
    ("EQ", r"=="),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("ANGLE", r"[+\-−]?\d*(?:pi|π)(?:/\d+)?(?!\w)"),
    ("INT", r"\d+"),
    ("WORD", r"[A-Za-z_]\w*(?:-[A-Za-z]\w*)*(?:\([^()\s]*\))?['′+\-−]?"),
    ("PLUS", r"\+"),
    ("MINUS", r"[\-−]"),
    ("MISMATCH", r"."),
)
_TOKEN_RE = re.compile("|".join(f"(?P<{kind}>{pattern})" for kind, pattern in _TOKEN_SPEC))

_DESCRIPTIONS = {
    "NEWLINE": "end of line",
    "KET": "a ket such as |0101>",
    "ARROW": "'->'",
    "EQ": "'=='",
    "LBRACE": "'{'",
    "RBRACE": "'}'",
    "ANGLE": "an angle such as -pi/4",
    "INT": "an integer",
    "WORD": "a name",
    "EOF": "end of input",
}


def tokenize(text):
    """
    Split circuit text into tokens.

    Raises
    ------
    CircuitLexError
    """
    tokens = []
    lineno, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        value = match.group()
        column = match.start() - line_start + 1
        if kind == "MISMATCH":
            raise CircuitLexError(
                f"unexpected character {value!r}", lineno, column,
                "statements use names, integers, kets, angles, '->', '==' and braces",
            )
        if kind != "SKIP":
            tokens.append(Token(kind, value, lineno, column))
        if kind == "NEWLINE":
            lineno += 1
            line_start = match.end()
    tokens.append(Token("EOF", "", lineno, len(text) - line_start + 1))
    return tokens


def parse_angle(text):
    """
    Angle text to a rational multiple of pi.

    >>> majsim.circuit.parse_angle('-pi/4')
    Fraction(-1, 4)
    """
    text = text.replace("π", "pi").replace("−", "-")
    if text.lstrip("+-") == "0":
        return Fraction(0)
    m = re.fullmatch(r"([+-]?)(\d*)pi(?:/(\d+))?", text)
    if m is None:
        raise ValueError(f"{text!r} is not a rational multiple of pi.")
    sign, numerator, denominator = m.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"{text!r} has a zero denominator.")
    value = Fraction(int(numerator or 1), int(denominator or 1))
    return -value if sign == "-" else value


def format_angle(value):
    """Rational multiple of pi to text, the inverse of parse_angle."""
    if value == 0:
        return "0"
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    text = f"{sign}{'' if num == 1 else num}pi"
    return text if den == 1 else f"{text}/{den}"


# Statements.  Source positions are excluded from comparisons so that a
# reparsed pretty-printed circuit compares equal to the original.

@dataclass(frozen=True)
class Statement:
    lineno: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)

    def format(self, indent=""):
        return indent + self.text()


@dataclass(frozen=True)
class Space(Statement):
    n_majoranas: int

    def text(self):
        return f"space {self.n_majoranas}"


@dataclass(frozen=True)
class Pair(Statement):
    name: str
    a: int
    b: int

    def text(self):
        return f"pair {self.name} {self.a} {self.b}"


@dataclass(frozen=True)
class Prepare(Statement):
    terms: tuple  # (sign, label) tuples

    def text(self):
        parts = []
        for k, (sign, label) in enumerate(self.terms):
            ket = f"|{label}>"
            if k == 0:
                parts.append(ket if sign > 0 else f"-{ket}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {ket}")
        return "prepare " + " ".join(parts)


@dataclass(frozen=True)
class Braid(Statement):
    i: int
    j: int

    def text(self):
        return f"braid {self.i} {self.j}"


@dataclass(frozen=True)
class Phase(Statement):
    pair: str
    angle: Fraction

    @property
    def theta(self):
        return float(self.angle) * math.pi

    def text(self):
        return f"phase {self.pair} {format_angle(self.angle)}"


@dataclass(frozen=True)
class Gate(Statement):
    name: str
    pairs: tuple

    def text(self):
        return f"gate {self.name} {' '.join(self.pairs)}"


@dataclass(frozen=True)
class Measure2(Statement):
    a: int
    b: int
    var: str

    @property
    def indices(self):
        return (self.a, self.b)

    def text(self):
        return f"measure2 {self.a} {self.b} -> {self.var}"


@dataclass(frozen=True)
class Measure4(Statement):
    a: int
    b: int
    c: int
    d: int
    var: str

    @property
    def indices(self):
        return (self.a, self.b, self.c, self.d)

    def text(self):
        return f"measure4 {self.a} {self.b} {self.c} {self.d} -> {self.var}"


@dataclass(frozen=True)
class If(Statement):
    var: str
    parity: str
    body: tuple

    def text(self):
        return self.format()

    def format(self, indent=""):
        lines = [f"{indent}if {self.var} == {self.parity} {{"]
        lines.extend(stmt.format(indent + "    ") for stmt in self.body)
        lines.append(f"{indent}}}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Print(Statement):
    what: str
    target: str | None = None

    def text(self):
        if self.what in ("matrix", "basis"):
            return f"print {self.what} {self.target}"
        return f"print {self.what}"


@dataclass(frozen=True)
class Circuit:
    """A parsed and checked circuit.

    Attributes
    ----------
    statements : tuple
    n_majoranas : int
    pairs : dict
        Pair name to (a, b).
    variables : tuple
        Measurement variables in binding order.
    name : str
        Where the text came from.
    """

    statements: tuple
    n_majoranas: int
    pairs: dict = field(compare=False)
    variables: tuple = field(compare=False)
    name: str = field(default="<string>", compare=False)

    @property
    def n_modes(self):
        return self.n_majoranas // 2

    def walk(self):
        """Every statement, depth first."""
        stack = list(reversed(self.statements))
        while stack:
            stmt = stack.pop()
            yield stmt
            if isinstance(stmt, If):
                stack.extend(reversed(stmt.body))

    def format(self):
        """Canonical text of the circuit."""
        return "\n".join(stmt.format() for stmt in self.statements) + "\n"

    def __str__(self):
        return self.format()


class _Parser:
    """Recursive descent over the token list."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        if token.kind != "EOF":
            self.pos += 1
        return token

    def error(self, token, msg, hint=None):
        return CircuitSyntaxError(msg, token.lineno, token.column, hint)

    def expect(self, kind, hint=None):
        token = self.peek()
        if token.kind != kind:
            found = _DESCRIPTIONS.get(token.kind, repr(token.value))
            if token.kind in ("WORD", "INT", "ANGLE", "KET"):
                found = repr(token.value)
            raise self.error(
                token, f"expected {_DESCRIPTIONS[kind]}, found {found}", hint
            )
        return self.advance()

    def integer(self, what):
        return int(self.expect("INT", f"{what} is a Majorana index").value)

    def name(self, what):
        token = self.expect("WORD", f"{what} is a name")
        if token.value in KEYWORDS:
            raise self.error(token, f"keyword '{token.value}' used as a {what}")
        return token.value

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.advance()

    def program(self):
        statements = []
        self.skip_newlines()
        while self.peek().kind != "EOF":
            statements.append(self.statement())
            token = self.peek()
            if token.kind not in ("NEWLINE", "EOF"):
                raise self.error(
                    token, f"unexpected {token.value!r} after a statement",
                    "one statement per line outside braces",
                )
            self.skip_newlines()
        return statements

    def block(self):
        self.expect("LBRACE", "a block starts with '{'")
        body = []
        self.skip_newlines()
        while self.peek().kind != "RBRACE":
            if self.peek().kind == "EOF":
                raise self.error(self.peek(), "unterminated block", "close it with '}'")
            body.append(self.statement())
            self.skip_newlines()
        self.advance()
        return tuple(body)

    def statement(self):
        token = self.peek()
        if token.kind != "WORD" or token.value not in KEYWORDS:
            raise self.error(
                token, f"expected a statement, found {token.value!r}",
                f"statements start with one of {', '.join(sorted(KEYWORDS))}",
            )
        self.advance()
        loc = {"lineno": token.lineno, "column": token.column}
        method = getattr(self, f"_{token.value}")
        return method(loc)

    def _space(self, loc):
        return Space(self.integer("the Majorana count"), **loc)

    def _pair(self, loc):
        name = self.name("pair name")
        return Pair(name, self.integer("a"), self.integer("b"), **loc)

    def _prepare(self, loc):
        terms = []
        sign = 1
        if self.peek().kind in ("PLUS", "MINUS"):
            sign = -1 if self.advance().kind == "MINUS" else 1
        while True:
            ket = self.expect("KET", "prepare takes kets such as |0000>")
            terms.append((sign, ket.value[1:-1]))
            if self.peek().kind not in ("PLUS", "MINUS"):
                break
            sign = -1 if self.advance().kind == "MINUS" else 1
        return Prepare(tuple(terms), **loc)

    def _braid(self, loc):
        return Braid(self.integer("i"), self.integer("j"), **loc)

    def _phase(self, loc):
        pair = self.name("pair name")
        token = self.peek()
        if token.kind == "INT" and token.value == "0":
            self.advance()
            return Phase(pair, Fraction(0), **loc)
        token = self.expect("ANGLE", "angles are rational multiples of pi, e.g. -pi/4")
        try:
            angle = parse_angle(token.value)
        except ValueError as e:
            raise self.error(token, str(e), "use a nonzero denominator") from None
        return Phase(pair, angle, **loc)

    def _gate(self, loc):
        name = self.expect("WORD", "a gate name such as CNOT+").value
        pairs = []
        while self.peek().kind == "WORD" and self.peek().value not in KEYWORDS:
            pairs.append(self.advance().value)
        if not pairs:
            raise self.error(self.peek(), f"gate {name} needs pair names")
        return Gate(name, tuple(pairs), **loc)

    def _measure2(self, loc):
        a, b = self.integer("a"), self.integer("b")
        self.expect("ARROW", "bind the outcome with '-> name'")
        return Measure2(a, b, self.name("variable"), **loc)

    def _measure4(self, loc):
        indices = [self.integer(x) for x in "abcd"]
        self.expect("ARROW", "bind the outcome with '-> name'")
        return Measure4(*indices, self.name("variable"), **loc)

    def _if(self, loc):
        var = self.name("variable")
        self.expect("EQ", "compare with '=='")
        token = self.expect("WORD", "compare with even or odd")
        if token.value not in PARITIES:
            raise self.error(token, f"expected even or odd, found {token.value!r}")
        return If(var, token.value, self.block(), **loc)

    def _print(self, loc):
        hint = "print state, print logical, print matrix GATE or print basis NAME"
        token = self.expect("WORD", hint)
        if token.value not in PRINTABLES:
            raise self.error(token, f"cannot print {token.value!r}", hint)
        if token.value == "matrix":
            gate = self.expect("WORD", "a gate name such as CNOT+").value
            return Print("matrix", gate, **loc)
        if token.value == "basis":
            basis = self.expect("WORD", "a basis name such as sp").value
            return Print("basis", basis, **loc)
        return Print(token.value, **loc)


class _Checker:
    """Semantic checks in program order."""

    def __init__(self):
        self.n_majoranas = None
        self.pairs = {}
        self.variables = []
        self.prepared = False
        self.touched = False

    def error(self, stmt, msg, hint=None):
        return CircuitSemanticError(msg, stmt.lineno, stmt.column, hint)

    def check(self, statements):
        for stmt in statements:
            if not isinstance(stmt, Space) and self.n_majoranas is None:
                raise self.error(stmt, "no space declared", "start with 'space N'")
            getattr(self, f"_{type(stmt).__name__.lower()}")(stmt)

    def index(self, stmt, *indices):
        for i in indices:
            if not 1 <= i <= self.n_majoranas:
                raise self.error(
                    stmt, f"Majorana index {i} is not declared",
                    f"indices run from 1 to {self.n_majoranas}",
                )
        if len(set(indices)) != len(indices):
            raise self.error(stmt, f"indices {indices} are not distinct")

    def pair_name(self, stmt, name):
        if name not in self.pairs:
            raise self.error(stmt, f"undeclared pair '{name}'", "declare it with 'pair NAME a b'")

    def _space(self, stmt):
        if self.n_majoranas is not None:
            raise self.error(stmt, "space declared twice")
        n = stmt.n_majoranas
        if n % 2 or not 2 <= n <= MAX_MAJORANAS:
            raise self.error(
                stmt, f"space {n} is not an even Majorana count",
                f"use an even number from 2 to {MAX_MAJORANAS}",
            )
        self.n_majoranas = n

    def _pair(self, stmt):
        if stmt.name in self.pairs:
            raise self.error(stmt, f"pair '{stmt.name}' declared twice")
        self.index(stmt, stmt.a, stmt.b)
        self.pairs[stmt.name] = (stmt.a, stmt.b)

    def _prepare(self, stmt):
        if self.prepared:
            raise self.error(stmt, "the state is prepared twice")
        if self.touched:
            raise self.error(stmt, "prepare must precede every operation on the state")
        n_modes = self.n_majoranas // 2
        labels = [label for _, label in stmt.terms]
        for label in labels:
            if len(label) != n_modes:
                raise self.error(
                    stmt, f"ket |{label}> does not have {n_modes} modes",
                )
        if len(set(labels)) != len(labels):
            raise self.error(stmt, "a ket appears twice in prepare")
        if len({label.count("1") % 2 for label in labels}) > 1:
            raise self.error(
                stmt, "parity-inhomogeneous prepare",
                "all kets must have the same fermion parity",
            )
        self.prepared = True

    def _braid(self, stmt):
        if stmt.i == stmt.j:
            raise self.error(stmt, "braid indices must differ")
        self.index(stmt, stmt.i, stmt.j)
        self.touched = True

    def _phase(self, stmt):
        self.pair_name(stmt, stmt.pair)
        self.touched = True

    def _gate(self, stmt):
        try:
            word = gate_word(canonical_name(stmt.name))
        except GateError as e:
            raise self.error(stmt, str(e)) from None
        if len(stmt.pairs) != word.n_local_modes:
            raise self.error(
                stmt, f"gate {stmt.name} takes {word.n_local_modes} pairs, "
                f"{len(stmt.pairs)} given",
            )
        for name in stmt.pairs:
            self.pair_name(stmt, name)
        indices = [i for name in stmt.pairs for i in self.pairs[name]]
        if len(set(indices)) != len(indices):
            raise self.error(stmt, f"pairs {stmt.pairs} share a Majorana")
        self.touched = True

    def _measure(self, stmt):
        self.index(stmt, *stmt.indices)
        if stmt.var in self.variables:
            raise self.error(stmt, f"variable '{stmt.var}' is already bound")
        self.variables.append(stmt.var)
        self.touched = True

    _measure2 = _measure4 = _measure

    def _if(self, stmt):
        if stmt.var not in self.variables:
            raise self.error(
                stmt, f"variable '{stmt.var}' is not bound",
                "bind it first with measure2 or measure4",
            )
        self.check(stmt.body)

    def _print(self, stmt):
        if stmt.what == "matrix":
            try:
                name = canonical_name(stmt.target)
            except GateError as e:
                raise self.error(stmt, str(e)) from None
            if name not in GATES:
                raise self.error(
                    stmt, f"'{name}' has no reference matrix",
                    f"named gates are {', '.join(GATES)}",
                )
        elif stmt.what == "basis":
            if stmt.target not in BASES:
                raise self.error(
                    stmt, f"unknown basis '{stmt.target}'",
                    f"known bases are {', '.join(BASES)}",
                )
            needed = 2 * basis_modes(stmt.target)
            if self.n_majoranas != needed:
                raise self.error(stmt, f"print basis {stmt.target} needs space {needed}")
        elif stmt.what == "logical" and self.n_majoranas != 8:
            raise self.error(stmt, "print logical needs space 8")


def parse(text, name="<string>"):
    """
    Parse and check circuit text.

    Parameters
    ----------
    text : str
    name : str
        Source name used in reports.

    Returns
    -------
    Circuit

    Raises
    ------
    CircuitLexError, CircuitSyntaxError, CircuitSemanticError

    Examples
    --------
    >>> c = majsim.circuit.parse('space 8\\nprepare |0000>\\nbraid 4 5\\n')
    >>> len(c.statements)
    3
    """
    statements = _Parser(tokenize(text)).program()
    checker = _Checker()
    checker.check(statements)
    if checker.n_majoranas is None:
        raise CircuitSemanticError("no space declared", 1, 1, "start with 'space N'")
    return Circuit(
        tuple(statements), checker.n_majoranas, dict(checker.pairs),
        tuple(checker.variables), name,
    )


def parse_file(path):
    """
    Parse a UTF-8 circuit file.

    Raises
    ------
    CircuitLexError
        If the file is not valid UTF-8; the position is that of the first
        bad byte.
    """
    data = pathlib.Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        lineno = data.count(b"\n", 0, e.start) + 1
        column = e.start - data.rfind(b"\n", 0, e.start)
        msg = f"byte 0x{data[e.start]:02x} is not valid UTF-8"
        raise CircuitLexError(msg, lineno, column, "save the script as UTF-8") from None
    return parse(text, pathlib.Path(path).name)
