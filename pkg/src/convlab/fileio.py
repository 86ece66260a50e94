"""Text file formats for codes, realizations and Markov sequences.

Every file opens with the magic line ``convlab v1`` followed by a field
header.  Blank lines and ``#`` comments are ignored.  Matrices are written as
``mat <rows> <cols>`` plus one line per row; the parser only counts tokens, so
row breaks are cosmetic.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .convcode import CodeParams, ConvCode
from .gf import GF, FieldError, field_from_modulus
from .lsys import Realization
from .matrix import Mat
from .polymat import PolyMat
from .realize import MarkovSeq, minimal_degree

MAGIC = "convlab v1"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


Document = Union[ConvCode, Realization, MarkovSeq]


# -- writing -------------------------------------------------------------------

def format_mat(M: Mat) -> list[str]:
    out = [f"mat {M.rows} {M.cols}"]
    out += [" ".join(M.field.format(a) for a in row) for row in M.data]
    return out


def format_code(C: ConvCode) -> str:
    p, G = C.params, C.G
    lines = [MAGIC, C.field.header(), f"params {p.n} {p.k} {p.delta}", f"gen {p.n} {p.k} {G.degree}"]
    for t in range(G.degree + 1):
        lines += format_mat(G.coeff(t))
    return "\n".join(lines) + "\n"


def format_realization(R: Realization) -> str:
    p = R.params
    lines = [MAGIC, R.field.header(), f"real {p.n} {p.k} {p.delta}"]
    for M in (R.A, R.B, R.C, R.D):
        lines += format_mat(M)
    return "\n".join(lines) + "\n"


def format_markov(seq: MarkovSeq) -> str:
    p = seq.params
    lines = [MAGIC, seq.field.header(), f"markov {p.n} {p.k} {seq.M} {p.delta}"]
    for B in seq.blocks:
        lines += format_mat(B)
    return "\n".join(lines) + "\n"


def dumps(doc: Document) -> str:
    if isinstance(doc, ConvCode):
        return format_code(doc)
    if isinstance(doc, Realization):
        return format_realization(doc)
    if isinstance(doc, MarkovSeq):
        return format_markov(doc)
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def write(path: str | Path, doc: Document) -> None:
    Path(path).write_text(dumps(doc), encoding="ascii")


# -- reading -------------------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.toks: list[tuple[str, int]] = []
        for no, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0]
            self.toks += [(t, no) for t in line.split()]
        self.pos = 0

    @property
    def line(self) -> int | None:
        if self.pos < len(self.toks):
            return self.toks[self.pos][1]
        return self.toks[-1][1] if self.toks else None

    def next(self, what: str) -> str:
        if self.pos >= len(self.toks):
            raise ParseError(f"unexpected end of file, expected {what}", self.line)
        tok = self.toks[self.pos][0]
        self.pos += 1
        return tok

    def keyword(self, word: str) -> None:
        line = self.line
        tok = self.next(repr(word))
        if tok != word:
            raise ParseError(f"expected {word!r}, found {tok!r}", line)

    def int(self, what: str) -> int:
        line = self.line
        tok = self.next(what)
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"expected integer {what}, found {tok!r}", line) from None
        if v < 0:
            raise ParseError(f"{what} must be nonnegative", line)
        return v

    def done(self) -> bool:
        return self.pos >= len(self.toks)


def _magic(text: str) -> None:
    for no, line in enumerate(text.splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if s != MAGIC:
            raise ParseError(f"missing magic line {MAGIC!r}", no)
        return
    raise ParseError("empty file")


def _field(tz: _Tokens) -> GF:
    tz.keyword("field")
    line = tz.line
    p, m = tz.int("characteristic"), tz.int("extension degree")
    if m < 1:
        raise ParseError("extension degree must be positive", line)
    modulus = [tz.int("modulus coefficient") for _ in range(m + 1)]
    try:
        return field_from_modulus(p, modulus)
    except FieldError as e:
        raise ParseError(str(e), line) from None


def _mat(tz: _Tokens, F: GF, shape: tuple[int, int] | None, what: str) -> Mat:
    line = tz.line
    tz.keyword("mat")
    r, c = tz.int("rows"), tz.int("cols")
    if shape is not None and (r, c) != shape:
        raise ParseError(f"{what} must be {shape[0]}x{shape[1]}, found {r}x{c}", line)
    data = []
    for _ in range(r):
        row = []
        for _ in range(c):
            eline = tz.line
            tok = tz.next(f"entry of {what}")
            try:
                row.append(F.parse(tok))
            except FieldError as e:
                raise ParseError(str(e), eline) from None
        data.append(row)
    return Mat(F, r, c, data)


def _params(tz: _Tokens) -> tuple[int, int, int, int | None]:
    line = tz.line
    n, k, d = tz.int("n"), tz.int("k"), tz.int("delta")
    try:
        CodeParams(n, k, d)
    except ValueError as e:
        raise ParseError(str(e), line) from None
    return n, k, d, line


def loads(text: str) -> Document:
    """Parse a code, realization or Markov file."""
    _magic(text)
    tz = _Tokens(text)
    tz.keyword("convlab")
    tz.keyword("v1")
    F = _field(tz)
    line = tz.line
    kind = tz.next("block header")
    try:
        if kind == "params":
            doc = _read_code(tz, F)
        elif kind == "real":
            doc = _read_real(tz, F)
        elif kind == "markov":
            doc = _read_markov(tz, F)
        else:
            raise ParseError(f"unknown block {kind!r}; expected params, real or markov", line)
    except ParseError:
        raise
    except ValueError as e:  # invalid objects, e.g. a non-minimal generator
        raise ParseError(str(e), line) from None
    if not tz.done():
        raise ParseError(f"trailing token {tz.next('')!r}", tz.toks[tz.pos - 1][1])
    return doc


def _read_code(tz: _Tokens, F: GF) -> ConvCode:
    n, k, d, line = _params(tz)
    gline = tz.line
    tz.keyword("gen")
    gn, gk, dmax = tz.int("n"), tz.int("k"), tz.int("dmax")
    if (gn, gk) != (n, k):
        raise ParseError(f"gen block is {gn}x{gk}, params say {n}x{k}", gline)
    coeffs = [_mat(tz, F, (n, k), f"G_{t}") for t in range(dmax + 1)]
    G = PolyMat(F, n, k, coeffs)
    return ConvCode(F, CodeParams(n, k, d), G)


def _read_real(tz: _Tokens, F: GF) -> Realization:
    n, k, d, _ = _params(tz)
    A = _mat(tz, F, (d, d), "A")
    B = _mat(tz, F, (d, k), "B")
    C = _mat(tz, F, (n - k, d), "C")
    D = _mat(tz, F, (n - k, k), "D")
    return Realization(A, B, C, D, F, CodeParams(n, k, d))


def _read_markov(tz: _Tokens, F: GF) -> MarkovSeq:
    line = tz.line
    n, k, M = tz.int("n"), tz.int("k"), tz.int("M")
    if not 0 < k < n:
        raise ParseError(f"need 0 < k < n, got n={n}, k={k}", line)
    # optional fourth number: the intended degree
    delta = None
    if not tz.done() and tz.toks[tz.pos][0] != "mat":
        delta = tz.int("delta")
    blocks = [_mat(tz, F, (n - k, k), f"F_{i}") for i in range(M + 1)]
    if delta is None:
        if M < 1:
            raise ParseError("cannot infer delta from F_0 alone; give it in the header", line)
        delta = minimal_degree(blocks)
    p = CodeParams(n, k, delta)
    if p.M != M:
        raise ParseError(f"delta={delta} gives M={p.M}, header says M={M}", line)
    return MarkovSeq(tuple(blocks), p)


def read(path: str | Path) -> Document:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError:
        raise ParseError("file is not ASCII text") from None
    return loads(text)

