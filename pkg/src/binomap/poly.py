"""Exact polynomial systems: parsing, serialization and the adjacent-minors generator."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<nl>\n)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^();])"
)

VARS_PRAGMA = "# vars:"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class VariableTable:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        for name in self.names:
            if not NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __getitem__(self, i: int) -> str:
        return self.names[i]

    def index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name) -> bool:
        return name in self._index


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("term coefficient must be nonzero")


Polynomial = tuple[Term, ...]


@dataclass(frozen=True)
class PolynomialSystem:
    vars: VariableTable
    equations: tuple[Polynomial, ...]

    def __post_init__(self):
        n = len(self.vars)
        for poly in self.equations:
            if not poly:
                raise ValueError("empty polynomial")
            seen = set()
            for term in poly:
                if len(term.exponents) != n:
                    raise ValueError("exponent vector length differs from variable count")
                if term.exponents in seen:
                    raise ValueError("repeated monomial within one polynomial")
                seen.add(term.exponents)

    @classmethod
    def from_terms(cls, names: Sequence[str],
                   equations: Iterable[Iterable[tuple]]) -> "PolynomialSystem":
        """Build a system from ``(coeff, exponents)`` pairs per equation."""
        eqs = tuple(
            tuple(Term(Fraction(c), tuple(int(e) for e in a)) for c, a in poly)
            for poly in equations
        )
        return cls(VariableTable(tuple(names)), eqs)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def is_binomial(self) -> bool:
        return all(len(poly) == 2 for poly in self.equations)

    def same_as(self, other: "PolynomialSystem") -> bool:
        """Equality up to the order of terms inside each equation."""
        if self.vars != other.vars or len(self.equations) != len(other.equations):
            return False
        return all(
            set(p) == set(q) for p, q in zip(self.equations, other.equations)
        )


def _tokenize(text: str):
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "comment":
            yield "comment", m.group(), line, col
        elif kind != "ws":
            yield kind, m.group(), line, col
        pos = m.end()
    yield "eof", "", line, pos - line_start + 1


class _Parser:
    def __init__(self, text: str):
        self.declared: list[str] | None = None
        toks = []
        for tok in _tokenize(text):
            if tok[0] == "comment":
                if tok[1].startswith(VARS_PRAGMA) and self.declared is None and not toks:
                    self.declared = tok[1][len(VARS_PRAGMA):].split()
                continue
            toks.append(tok)
        self.toks = toks
        self.i = 0
        self.names: list[str] = list(self.declared or [])
        self.index = {n: k for k, n in enumerate(self.names)}

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], tok[3])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.take()

    def integer(self) -> int:
        sign = 1
        if self.peek()[1] == "(":
            self.take()
            value = self.integer()
            self.expect(")")
            return value
        while self.peek()[1] in ("-", "+"):
            if self.take()[1] == "-":
                sign = -sign
        tok = self.peek()
        if tok[0] != "num":
            raise self.error("expected integer exponent")
        self.take()
        return sign * int(tok[1])

    def factor(self, coeff: Fraction, powers: dict[str, int]) -> Fraction:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            value = Fraction(int(tok[1]))
            if self.peek()[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "num":
                    raise self.error("expected denominator")
                self.take()
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                value /= int(den[1])
            if self.peek()[1] == "^":
                self.take()
                value = value ** self.integer()
            return coeff * value
        if tok[0] == "name":
            self.take()
            name = tok[1]
            if name not in self.index:
                if self.declared is not None:
                    raise self.error(f"undeclared variable {name!r}", tok)
                self.index[name] = len(self.names)
                self.names.append(name)
            exp = 1
            if self.peek()[1] == "^":
                self.take()
                exp = self.integer()
            powers[name] = powers.get(name, 0) + exp
            return coeff
        raise self.error(f"unexpected {tok[1] or 'end of input'!r}")

    def term(self, sign: int):
        coeff = Fraction(sign)
        powers: dict[str, int] = {}
        coeff = self.factor(coeff, powers)
        while self.peek()[1] == "*":
            self.take()
            coeff = self.factor(coeff, powers)
        return coeff, powers

    def polynomial(self):
        start = self.peek()
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        terms = [self.term(sign)]
        while self.peek()[1] in ("+", "-"):
            sign = 1
            while self.peek()[1] in ("+", "-"):
                if self.take()[1] == "-":
                    sign = -sign
            terms.append(self.term(sign))
        self.expect(";")
        return start, terms

    def parse(self):
        raw = []
        while self.peek()[0] != "eof":
            raw.append(self.polynomial())
        n = len(self.names)
        equations = []
        for start, terms in raw:
            collected: dict[tuple[int, ...], Fraction] = {}
            for coeff, powers in terms:
                exps = [0] * n
                for name, e in powers.items():
                    exps[self.index[name]] = e
                key = tuple(exps)
                collected[key] = collected.get(key, Fraction(0)) + coeff
            poly = tuple(Term(c, a) for a, c in collected.items() if c != 0)
            if not poly:
                raise ParseError("polynomial is identically zero", start[2], start[3])
            equations.append(poly)
        return PolynomialSystem(VariableTable(tuple(self.names)), tuple(equations))


def parse_system(text: str) -> PolynomialSystem:
    """Parse ``;``-terminated polynomial statements.

    Variables are ordered by first appearance unless the text starts with a
    ``# vars: a b c`` line, which fixes the order.
    """
    return _Parser(text).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_term(term: Term, names: Sequence[str]) -> tuple[str, str]:
    factors = []
    for name, e in zip(names, term.exponents):
        if e == 1:
            factors.append(name)
        elif e > 0:
            factors.append(f"{name}^{e}")
        elif e < 0:
            factors.append(f"{name}^({e})")
    sign = "-" if term.coeff < 0 else "+"
    mag = abs(term.coeff)
    if mag != 1 or not factors:
        factors.insert(0, _format_coeff(mag))
    return sign, "*".join(factors)


def _appearance_order(sys: PolynomialSystem) -> list[int]:
    order: list[int] = []
    for poly in sys.equations:
        for term in poly:
            for k, e in enumerate(term.exponents):
                if e != 0 and k not in order:
                    order.append(k)
    return order


def serialize_system(sys: PolynomialSystem) -> str:
    """Render one ``;``-terminated equation per line.

    A ``# vars:`` header is emitted only when re-parsing would otherwise
    change the variable order.
    """
    names = sys.vars.names
    lines = []
    if _appearance_order(sys) != list(range(len(names))):
        lines.append(" ".join([VARS_PRAGMA, *names]))
    for poly in sys.equations:
        parts = []
        for i, term in enumerate(poly):
            sign, body = _format_term(term, names)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        lines.append("".join(parts) + ";")
    return "\n".join(lines)


def _minor_name(i: int, j: int, width: int) -> str:
    return f"x{i:0{width}d}{j:0{width}d}"


def adjacent_minors(m: int, n: int) -> PolynomialSystem:
    """All adjacent 2x2 minors of a general m-by-n matrix of indeterminates."""
    if m < 2 or n < 2:
        raise ValueError("adjacent minors need m >= 2 and n >= 2")
    width = 1 if max(m, n) <= 9 else len(str(max(m, n)))
    names = [_minor_name(i, j, width) for i in range(1, m + 1) for j in range(1, n + 1)]

    def at(i, j):
        return (i - 1) * n + (j - 1)

    def mono(*idx):
        a = [0] * (m * n)
        for k in idx:
            a[k] += 1
        return tuple(a)

    equations = []
    for i in range(1, m):
        for j in range(1, n):
            lead = mono(at(i, j), at(i + 1, j + 1))
            trail = mono(at(i + 1, j), at(i, j + 1))
            equations.append((Term(Fraction(1), lead), Term(Fraction(-1), trail)))
    return PolynomialSystem(VariableTable(tuple(names)), tuple(equations))
