"""
QSM: a line-oriented text format for complex matrices with tensor structure.

::

    qsm 1
    dims 2 2
    (0.5,0) (0,0) ...
    ...

``#`` starts a comment, blank lines are ignored, and entries may be separated
by any run of spaces or tabs. :func:`emit_qsm` writes the canonical form with
17 significant digits, which round-trips every double exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import QcdmError

VERSION = "1"

_NUMBER = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(rf"\(\s*({_NUMBER})\s*,\s*({_NUMBER})\s*\)")
_TOKEN = re.compile(r"[^ \t]+")


class QsmParseError(QcdmError, ValueError):
    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True, eq=False)
class QsmDocument:
    dims: tuple[int, ...]
    entries: np.ndarray
    version: str = VERSION

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if tokens:
            yield lineno, tokens


def parse_qsm(text: str) -> QsmDocument:
    lines = _content_lines(text)

    header = next(lines, None)
    if header is None:
        raise QsmParseError("empty document, expected header 'qsm 1'", 1)
    lineno, tokens = header
    if tokens[0][0] != "qsm" or len(tokens) != 2:
        raise QsmParseError("bad header, expected 'qsm 1'", lineno, tokens[0][1])
    if tokens[1][0] != VERSION:
        raise QsmParseError(
            f"unsupported version {tokens[1][0]!r}, expected {VERSION}", lineno, tokens[1][1]
        )

    dims_line = next(lines, None)
    if dims_line is None:
        raise QsmParseError("missing 'dims' line", lineno + 1)
    lineno, tokens = dims_line
    if tokens[0][0] != "dims" or len(tokens) < 2:
        raise QsmParseError("expected 'dims d1 d2 ...'", lineno, tokens[0][1])
    dims = []
    for tok, col in tokens[1:]:
        if not tok.isdigit() or int(tok) < 1:
            raise QsmParseError(f"dimension {tok!r} is not a positive integer", lineno, col)
        dims.append(int(tok))
    dim = math.prod(dims)
    shape = f"expected {dim}×{dim}"

    rows = []
    last = lineno
    for lineno, tokens in lines:
        last = lineno
        if len(rows) == dim:
            raise QsmParseError(f"too many rows, {shape}", lineno, tokens[0][1])
        if len(tokens) != dim:
            raise QsmParseError(
                f"row has {len(tokens)} entries, {shape}", lineno, tokens[0][1]
            )
        row = []
        for tok, col in tokens:
            m = _ENTRY.fullmatch(tok)
            if m is None:
                raise QsmParseError(f"malformed complex literal {tok!r}", lineno, col)
            row.append(complex(float(m.group(1)), float(m.group(2))))
        rows.append(row)
    if len(rows) != dim:
        raise QsmParseError(f"found {len(rows)} rows, {shape}", last + 1)

    entries = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(entries)):
        raise QsmParseError("entry overflows to infinity", last)
    return QsmDocument(tuple(dims), entries)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def emit_qsm(doc: QsmDocument) -> str:
    lines = [f"qsm {doc.version}", "dims " + " ".join(str(d) for d in doc.dims)]
    for row in doc.entries:
        lines.append(" ".join(f"({_fmt(z.real)},{_fmt(z.imag)})" for z in row))
    return "\n".join(lines) + "\n"


def read_qsm(path) -> QsmDocument:
    with open(path, encoding="utf-8") as f:
        return parse_qsm(f.read())


def document(mat, dims=None) -> QsmDocument:
    m = np.array(mat, dtype=np.complex128)
    return QsmDocument(tuple(dims) if dims is not None else (m.shape[0],), m)
