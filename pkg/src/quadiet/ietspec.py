"""Text and JSON descriptions of an IET.

Text form, one ``key = value`` (or ``key: value``) per line, ``#`` comments::

    d = 5
    perm = 2 1
    lengths = (sqrt(5)-1)/2, (3-sqrt(5))/2
    left = 0

Length expressions follow::

    expression := term (('+' | '-') term)*
    term       := factor (('*' | '/') factor)*
    factor     := integer | 'sqrt' '(' integer ')' | '(' expression ')' | '-' factor
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import DiscriminantMismatch, NonPositiveLength, SpecSyntaxError
from .iet import IET
from .quadfield import QuadNum, is_squarefree

__all__ = ["IETSpec", "parse_spec", "parse_expression", "format_spec", "spec_from_iet"]

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(\S))")


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _ExprParser:
    def __init__(self, source: str, start: int, end: int, d: int):
        self.source = source
        self.d = d
        self.tokens: list[tuple[str, str, int]] = []
        pos = start
        while pos < end:
            m = _TOKEN.match(source, pos, end)
            if m is None:
                break  # only trailing whitespace left
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("sqrt", "sqrt", m.start(2)))
            elif m.group(3):
                ch = m.group(3)
                if ch not in "+-*/()":
                    self._fail(f"unexpected character {ch!r}", m.start(3))
                self.tokens.append(("op", ch, m.start(3)))
            pos = m.end()
        self.i = 0
        self.end = end

    def _fail(self, message: str, offset: int):
        raise SpecSyntaxError(message, *_position(self.source, offset))

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            self._fail("unexpected end of expression", self.end)
        self.i += 1
        return tok

    def _expect(self, value: str):
        tok = self._next()
        if tok[1] != value:
            self._fail(f"expected {value!r}, found {tok[1]!r}", tok[2])

    def parse(self) -> QuadNum:
        if not self.tokens:
            self._fail("empty expression", self.end)
        value = self.expression()
        tok = self._peek()
        if tok is not None:
            self._fail(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expression(self) -> QuadNum:
        value = self.term()
        while (tok := self._peek()) is not None and tok[1] in "+-" and tok[0] == "op":
            self.i += 1
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self) -> QuadNum:
        value = self.factor()
        while (tok := self._peek()) is not None and tok[1] in "*/" and tok[0] == "op":
            self.i += 1
            rhs = self.factor()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs:
                    self._fail("division by zero", tok[2])
                value = value / rhs
        return value

    def factor(self) -> QuadNum:
        kind, text, offset = self._next()
        if kind == "int":
            return QuadNum.from_int(int(text), self.d)
        if kind == "sqrt":
            self._expect("(")
            kind, arg, where = self._next()
            if kind != "int":
                self._fail("sqrt takes an integer literal", where)
            if int(arg) != self.d:
                line, col = _position(self.source, where)
                raise DiscriminantMismatch(
                    f"sqrt({arg}) does not belong to Q(sqrt({self.d})) (line {line}, column {col})"
                )
            self._expect(")")
            return QuadNum.sqrt_d(self.d)
        if text == "(":
            value = self.expression()
            self._expect(")")
            return value
        if text == "-":
            return -self.factor()
        self._fail(f"unexpected {text!r}", offset)


def parse_expression(text: str, d: int) -> QuadNum:
    return _ExprParser(text, 0, len(text), d).parse()


@dataclass(frozen=True)
class IETSpec:
    d: int
    permutation: tuple[int, ...]  # 1-based one-line notation
    lengths: tuple[QuadNum, ...]
    left: QuadNum

    def to_iet(self) -> IET:
        return IET([p - 1 for p in self.permutation], self.lengths, self.left, self.d)


def _check_d(d, line: int = 1, col: int = 1) -> int:
    try:
        d = int(d)
    except (TypeError, ValueError):
        raise SpecSyntaxError(f"d must be an integer, got {d!r}", line, col) from None
    if not is_squarefree(d):
        raise SpecSyntaxError(f"d={d} is not a square-free integer >= 2", line, col)
    return d


def _finish(d: int, perm: list[int], lengths: list[QuadNum], left: QuadNum, where) -> IETSpec:
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise SpecSyntaxError(f"perm {perm} is not a permutation of 1..{len(perm)}", *where("perm"))
    if len(lengths) != len(perm):
        raise SpecSyntaxError(f"{len(perm)} positions but {len(lengths)} lengths", *where("lengths"))
    for lam in lengths:
        if lam.sign() <= 0:
            raise NonPositiveLength(f"length {lam} is not positive")
    return IETSpec(d, tuple(perm), tuple(lengths), left)


def _parse_json(text: str) -> IETSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpecSyntaxError("top-level JSON value must be an object")
    for key in ("d", "perm", "lengths"):
        if key not in doc:
            raise SpecSyntaxError(f"missing key {key!r}")
    d = _check_d(doc["d"])

    def value(x) -> QuadNum:
        if isinstance(x, str):
            return parse_expression(x, d)
        if isinstance(x, int) and not isinstance(x, bool):
            return QuadNum.from_int(x, d)
        if isinstance(x, list) and len(x) == 3 and all(isinstance(v, int) for v in x):
            if x[2] == 0:
                raise SpecSyntaxError("zero denominator in triple")
            return QuadNum(x[0], x[1], x[2], d)
        raise SpecSyntaxError(f"cannot read {x!r} as a number")

    perm = doc["perm"]
    if isinstance(perm, str):
        perm = perm.split()
    try:
        perm = [int(p) for p in perm]
    except (TypeError, ValueError):
        raise SpecSyntaxError(f"bad permutation {doc['perm']!r}") from None
    lengths = [value(x) for x in doc["lengths"]]
    left = value(doc.get("left", 0))
    return _finish(d, perm, lengths, left, lambda key: (1, 1))


_LINE = re.compile(r"\s*([A-Za-z_]+)\s*[:=]")


def _parse_text(text: str) -> IETSpec:
    entries: dict[str, tuple[int, int]] = {}  # key -> (value start, value end)
    offset = 0
    for raw in text.splitlines(keepends=True):
        body = raw.split("#", 1)[0]
        if body.strip():
            m = _LINE.match(body)
            if m is None:
                col = len(body) - len(body.lstrip()) + 1
                raise SpecSyntaxError("expected 'key = value'", *_position(text, offset + col - 1))
            key = m.group(1).lower()
            if key not in ("d", "perm", "lengths", "left"):
                raise SpecSyntaxError(f"unknown key {key!r}", *_position(text, offset + m.start(1)))
            if key in entries:
                raise SpecSyntaxError(f"duplicate key {key!r}", *_position(text, offset + m.start(1)))
            entries[key] = (offset + m.end(), offset + len(body.rstrip("\r\n")))
        offset += len(raw)
    for key in ("d", "perm", "lengths"):
        if key not in entries:
            raise SpecSyntaxError(f"missing key {key!r}", *_position(text, len(text)))

    def where(key):
        return _position(text, entries[key][0])

    def raw(key) -> str:
        a, b = entries[key]
        return text[a:b]

    d = _check_d(raw("d").strip(), *where("d"))
    perm = []
    a, b = entries["perm"]
    for m in re.finditer(r"\S+", text[a:b]):
        if not m.group().isdigit():
            raise SpecSyntaxError(f"bad permutation entry {m.group()!r}", *_position(text, a + m.start()))
        perm.append(int(m.group()))

    lengths = []
    a, b = entries["lengths"]
    start = a
    for i in range(a, b + 1):
        if i == b or text[i] in ",;":
            lengths.append(_ExprParser(text, start, i, d).parse())
            start = i + 1
    left = QuadNum.from_int(0, d)
    if "left" in entries:
        a, b = entries["left"]
        left = _ExprParser(text, a, b, d).parse()
    return _finish(d, perm, lengths, left, where)


def parse_spec(text: str) -> IETSpec:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def spec_from_iet(T: IET) -> IETSpec:
    return IETSpec(T.d, tuple(p + 1 for p in T.perm), T.lengths, T.left)


def format_spec(T: IET | IETSpec) -> str:
    spec = spec_from_iet(T) if isinstance(T, IET) else T
    return (
        f"d = {spec.d}\n"
        f"perm = {' '.join(map(str, spec.permutation))}\n"
        f"lengths = {', '.join(x.to_text() for x in spec.lengths)}\n"
        f"left = {spec.left.to_text()}\n"
    )
