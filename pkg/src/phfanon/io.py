"""Line-oriented input files for PHF arrays and general setups.

PHF file::

    phf t=2
    3 6 2            # l n m
    1 1 1 2 2 2
    1 1 2 1 2 2
    1 2 2 1 1 2

General file::

    general t=3
    p=7 n=7 v=7
    P 1: 1 2 4
    ...
    K 1: 2 3 4 5 6 7
    ...

``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple, Union

from .general import GeneralSetup
from .phf import PhfArray, PhfError

Payload = Union[PhfArray, GeneralSetup]


class ParseError(ValueError):
    """Input rejected at a specific line and column (both 1-based)."""

    def __init__(self, code: str, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message} [{code}]")
        self.code = code
        self.line = line
        self.column = column


@dataclass(frozen=True)
class InputDocument:
    kind: str
    payload: Payload
    source: str = "<string>"

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return self.kind == other.kind and self.payload == other.payload


Token = Tuple[str, int]


def _lines(text: str) -> List[Tuple[int, List[Token]]]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]
        if tokens:
            out.append((number, tokens))
    return out


def _int(token: Token, line: int, what: str) -> int:
    text, col = token
    try:
        return int(text)
    except ValueError:
        raise ParseError("syntax", f"expected integer {what}, got {text!r}", line, col) from None


def _setting(token: Token, name: str, line: int) -> int:
    text, col = token
    prefix = name + "="
    if not text.startswith(prefix):
        raise ParseError("syntax", f"expected {prefix}<int>, got {text!r}", line, col)
    return _int((text[len(prefix):], col + len(prefix)), line, name)


def parse_input(text: str, source: str = "<string>") -> InputDocument:
    lines = _lines(text)
    if not lines:
        raise ParseError("syntax", "empty input", 1)
    number, header = lines[0]
    if header[0][0] == "phf" and len(header) == 2:
        t = _setting(header[1], "t", number)
        return InputDocument("phf", _parse_phf(lines[1:], t, number), source)
    if header[0][0] == "general" and len(header) == 2:
        t = _setting(header[1], "t", number)
        return InputDocument("general", _parse_general(lines[1:], t, number), source)
    raise ParseError("unknown-header", f"unknown header {' '.join(tok for tok, _ in header)!r}", number, header[0][1])


def _parse_phf(lines, t: int, header_line: int) -> PhfArray:
    if not lines:
        raise ParseError("dimension-mismatch", "missing '<l> <n> <m>' line", header_line + 1)
    number, dims = lines[0]
    if len(dims) != 3:
        raise ParseError("syntax", "expected '<l> <n> <m>'", number, dims[0][1])
    l, n, m = (_int(tok, number, name) for tok, name in zip(dims, "lnm"))
    if l < 1 or n < 1 or m < 1:
        raise ParseError("dimension-mismatch", "l, n and m must be positive", number)
    if not 2 <= t <= m or n < t:
        raise ParseError("syntax", f"need 2 <= t <= m and n >= t (t={t}, n={n}, m={m})", header_line)
    body = lines[1:]
    if len(body) != l:
        at = body[l][0] if len(body) > l else (body[-1][0] + 1 if body else number + 1)
        raise ParseError("dimension-mismatch", f"expected {l} rows, found {len(body)}", at)
    rows = []
    for number, tokens in body:
        if len(tokens) != n:
            col = tokens[n][1] if len(tokens) > n else tokens[-1][1]
            raise ParseError("dimension-mismatch", f"row has {len(tokens)} entries, expected {n}", number, col)
        row = []
        for tok in tokens:
            x = _int(tok, number, "symbol")
            if not 1 <= x <= m:
                raise ParseError("symbol-out-of-range", f"symbol {x} outside 1..{m}", number, tok[1])
            row.append(x)
        missing = sorted(set(range(1, m + 1)) - set(row))
        if missing:
            raise ParseError("empty-component", f"symbol {missing[0]} never occurs in this row", number)
        rows.append(tuple(row))
    return PhfArray(tuple(rows), m, t)


def _parse_general(lines, t: int, header_line: int) -> GeneralSetup:
    if not lines:
        raise ParseError("dimension-mismatch", "missing 'p=<p> n=<n> v=<v>' line", header_line + 1)
    number, dims = lines[0]
    if len(dims) != 3:
        raise ParseError("syntax", "expected 'p=<p> n=<n> v=<v>'", number, dims[0][1])
    p, n, v = (_setting(tok, name, number) for tok, name in zip(dims, "pnv"))
    holdings: dict = {}
    keys: dict = {}
    for number, tokens in lines[1:]:
        tag, col = tokens[0]
        if tag not in ("P", "K") or len(tokens) < 2 or not tokens[1][0].endswith(":"):
            raise ParseError("syntax", "expected 'P <c>: ...' or 'K <i>: ...'", number, col)
        index = _int((tokens[1][0][:-1], tokens[1][1]), number, "index")
        table, limit = (holdings, n) if tag == "P" else (keys, v)
        if not 1 <= index <= limit:
            raise ParseError("dimension-mismatch", f"{tag} index {index} outside 1..{limit}", number, tokens[1][1])
        if index in table:
            raise ParseError("duplicate-definition", f"{tag} {index} defined twice", number, col)
        values = []
        for tok in tokens[2:]:
            x = _int(tok, number, "component")
            if not 1 <= x <= p:
                raise ParseError("symbol-out-of-range", f"component {x} outside 1..{p}", number, tok[1])
            values.append(x)
        table[index] = frozenset(values)
    last = lines[-1][0]
    if len(holdings) != n:
        raise ParseError("dimension-mismatch", f"{len(holdings)} of {n} participants defined", last)
    if len(keys) != v:
        raise ParseError("dimension-mismatch", f"{len(keys)} of {v} keys defined", last)
    try:
        return GeneralSetup(p, n, t, tuple(holdings[c] for c in range(1, n + 1)),
                            tuple(keys[i] for i in range(1, v + 1)))
    except PhfError as exc:
        code = "empty-component" if "held by nobody" in str(exc) else "syntax"
        raise ParseError(code, str(exc), last) from None


def serialize(doc: Union[InputDocument, Payload]) -> str:
    payload = doc.payload if isinstance(doc, InputDocument) else doc
    if isinstance(payload, PhfArray):
        lines = [f"phf t={payload.t}", f"{payload.l} {payload.n} {payload.m}"]
        lines += [" ".join(map(str, row)) for row in payload.cells]
    else:
        lines = [f"general t={payload.t}", f"p={payload.p} n={payload.n} v={payload.v}"]
        lines += [f"P {c}: {' '.join(map(str, sorted(h)))}" for c, h in enumerate(payload.holdings, start=1)]
        lines += [f"K {i}: {' '.join(map(str, sorted(k)))}" for i, k in enumerate(payload.keys, start=1)]
    return "\n".join(lines) + "\n"


def load(path: Union[str, Path]) -> InputDocument:
    path = Path(path)
    return parse_input(path.read_text(), source=str(path))
