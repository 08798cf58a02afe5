"""Plain-text ideal files.

    # comment
    ring 3
    field QQ            (or: field Fp 5)
    I: x1^3, x1^2*x2, -3/2*x1*x3^2 + x2^3
    J: x3^3

``ring`` must come before the first ideal; ``field`` defaults to QQ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .ring import QQ, AlgebraError, Field, Ideal, NotHomogeneousError, Polynomial, Ring, GF


class ParseError(AlgebraError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class VariableIndexError(ParseError):
    pass


class NonHomogeneousInputError(ParseError):
    pass


@dataclass
class IdealFile:
    field: Field
    n: int
    ideals: dict[str, Ideal] = field(default_factory=dict)

    @property
    def ring(self) -> Ring:
        return Ring(self.n, self.field)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^,])|(?P<bad>\S))"
)
_NAME = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*:")


class _Lexer:
    def __init__(self, text: str, line: int, offset: int):
        self.tokens = []
        pos = offset
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            col = m.start(m.lastgroup) + 1
            if m.group("bad") is not None:
                raise ParseError(f"unexpected character {m.group('bad')!r}", line, col)
            kind = "var" if m.group("var") else m.lastgroup
            self.tokens.append((kind, m.group(kind), col, m.group("idx")))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = len(text.rstrip()) + 1

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end_col, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message: str, col: int | None = None):
        return ParseError(message, self.line, col if col is not None else self.peek()[2])


def _parse_term(lx: _Lexer, ring: Ring) -> tuple[tuple[int, ...], Fraction]:
    coeff = Fraction(1)
    exps = [0] * ring.n
    seen = False
    while True:
        kind, text, col, idx = lx.peek()
        if kind == "num":
            lx.take()
            coeff *= Fraction(text)
        elif kind == "var":
            lx.take()
            i = int(idx)
            if not 1 <= i <= ring.n:
                raise VariableIndexError(f"variable x{i} outside x1..x{ring.n}", lx.line, col)
            e = 1
            if lx.peek()[0] == "op" and lx.peek()[1] == "^":
                lx.take()
                k, t, c, _ = lx.take()
                if k != "num" or "/" in t:
                    raise lx.error("exponent must be a nonnegative integer", c)
                e = int(t)
            exps[i - 1] += e
        else:
            if not seen:
                raise lx.error("expected a coefficient or a variable")
            return tuple(exps), coeff
        seen = True
        if lx.peek()[0] == "op" and lx.peek()[1] == "*":
            lx.take()
            if lx.peek()[0] not in ("num", "var"):
                raise lx.error("expected a factor after '*'")
        else:
            return tuple(exps), coeff


def _parse_poly(lx: _Lexer, ring: Ring) -> Polynomial:
    col0 = lx.peek()[2]
    terms: dict = {}
    sign = 1
    if lx.peek()[0] == "op" and lx.peek()[1] in "+-":
        sign = -1 if lx.take()[1] == "-" else 1
    while True:
        u, c = _parse_term(lx, ring)
        terms[u] = terms.get(u, 0) + sign * c
        kind, text, _, _ = lx.peek()
        if kind == "op" and text in "+-":
            lx.take()
            sign = -1 if text == "-" else 1
            continue
        break
    try:
        f = Polynomial(ring, {u: ring.field.convert(c) for u, c in terms.items()})
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), lx.line, col0) from None
    if not f.is_homogeneous():
        raise NonHomogeneousInputError(f"generator {f} is not homogeneous", lx.line, col0)
    return f


def parse_generators(text: str, ring: Ring, line: int = 1, offset: int = 0) -> list[Polynomial]:
    """Comma-separated polynomials, e.g. ``"x1^2, x1*x2 - x2^2"``."""
    lx = _Lexer(text, line, offset)
    gens = []
    if lx.peek()[0] is None:
        return gens
    while True:
        gens.append(_parse_poly(lx, ring))
        kind, text_, col, _ = lx.take()
        if kind is None:
            return gens
        if not (kind == "op" and text_ == ","):
            raise ParseError(f"expected ',' or end of line, found {text_!r}", line, col)


def parse_ideal_text(text: str) -> IdealFile:
    fld: Field | None = None
    n: int | None = None
    out: dict[str, Ideal] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        words = line.split()
        head = words[0]
        col = line.index(head) + 1
        if head == "ring":
            if out:
                raise ParseError("'ring' must precede the ideals", lineno, col)
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'ring <n>' with n >= 1", lineno, col)
            n = int(words[1])
            continue
        if head == "field":
            if out:
                raise ParseError("'field' must precede the ideals", lineno, col)
            if words[1:] == ["QQ"]:
                fld = QQ
            elif len(words) == 3 and words[1] == "Fp" and words[2].isdigit():
                try:
                    fld = GF(int(words[2]))
                except AlgebraError as exc:
                    raise ParseError(str(exc), lineno, line.index(words[2]) + 1) from None
            else:
                raise ParseError("expected 'field QQ' or 'field Fp <prime>'", lineno, col)
            continue
        m = _NAME.match(line)
        if m is None:
            raise ParseError("expected 'ring', 'field' or '<Name>: generators'", lineno, col)
        if n is None:
            raise ParseError("'ring <n>' must come first", lineno, col)
        name = m.group(1)
        if name in out:
            raise ParseError(f"ideal {name!r} defined twice", lineno, m.start(1) + 1)
        ring = Ring(n, fld or QQ)
        try:
            out[name] = Ideal(ring, parse_generators(line, ring, lineno, m.end()))
        except NotHomogeneousError as exc:
            raise NonHomogeneousInputError(str(exc), lineno, m.end() + 1) from None
    if n is None:
        raise ParseError("missing 'ring <n>' line", 1, 1)
    return IdealFile(fld or QQ, n, out)


def parse_ideal_file(path) -> IdealFile:
    return parse_ideal_text(Path(path).read_text(encoding="utf-8"))


def format_ideal_file(fld: Field, n: int, ideals: dict[str, Ideal], comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"ring {n}")
    lines.append(f"field {fld}")
    for name, I in ideals.items():
        lines.append(f"{name}: " + ", ".join(str(f) for f in I.gens))
    return "\n".join(lines) + "\n"


def dump_ideal_file(path, fld: Field, n: int, ideals: dict[str, Ideal], comments=()) -> None:
    Path(path).write_text(format_ideal_file(fld, n, ideals, comments), encoding="utf-8")
