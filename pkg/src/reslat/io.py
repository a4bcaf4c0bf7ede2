"""Lattice definition files and JSON report documents.

File format::

    # comment
    elements 4
    names 0 a b 1
    otimes
    0 0 0 0
    ...            (k rows)
    arrow
    ...            (k rows)
    le             (optional, k rows of 0/1, cross-check only)
    ...
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .core import RawAlgebra, ResiduatedLattice, validate
from .errors import DimensionMismatch, DuplicateName, LatticeSyntaxError, UnknownName

SCHEMA_VERSION = "1"


def _tokens(line: str):
    """Yield (col, token) with 1-based columns."""
    i, n = 0, len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace():
            j += 1
        yield i + 1, line[i:j]
        i = j


def parse(text: str) -> RawAlgebra:
    """Parse a lattice file into unvalidated tables."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = list(_tokens(raw))
        if not toks or toks[0][1].startswith("#"):
            continue
        lines.append((lineno, toks))
    last_line = len(text.splitlines())

    pos = 0

    def take(keyword):
        nonlocal pos
        if pos >= len(lines):
            raise LatticeSyntaxError(f"expected '{keyword}' but reached end of file", last_line + 1, 1)
        lineno, toks = lines[pos]
        if toks[0][1] != keyword:
            raise LatticeSyntaxError(f"expected '{keyword}', found {toks[0][1]!r}", lineno, toks[0][0])
        pos += 1
        return lineno, toks

    lineno, toks = take("elements")
    if len(toks) != 2:
        raise LatticeSyntaxError("'elements' takes exactly one integer", lineno, toks[0][0])
    try:
        k = int(toks[1][1])
    except ValueError:
        raise LatticeSyntaxError(f"not an integer: {toks[1][1]!r}", lineno, toks[1][0]) from None
    if k < 2:
        raise DimensionMismatch(f"need at least 2 elements, got {k}", lineno, toks[1][0])

    lineno, toks = take("names")
    if len(toks) - 1 != k:
        raise DimensionMismatch(f"expected {k} names, got {len(toks) - 1}", lineno, toks[0][0])
    names = []
    for col, tok in toks[1:]:
        if tok in names:
            raise DuplicateName(f"duplicate name {tok!r}", lineno, col)
        names.append(tok)
    index = {n: i for i, n in enumerate(names)}

    def section(keyword, cell):
        nonlocal pos
        head_line, _ = take(keyword)
        rows = []
        for r in range(k):
            if pos >= len(lines):
                raise DimensionMismatch(
                    f"section '{keyword}' has {r} rows, expected {k}", last_line + 1, 1
                )
            lineno, toks = lines[pos]
            if len(toks) == 1 and toks[0][1] in ("otimes", "arrow", "le"):
                raise DimensionMismatch(
                    f"section '{keyword}' has {r} rows, expected {k}", lineno, toks[0][0]
                )
            if len(toks) != k:
                col = toks[k][0] if len(toks) > k else len(" ".join(t for _, t in toks)) + 1
                raise DimensionMismatch(f"expected {k} entries, got {len(toks)}", lineno, col)
            rows.append([cell(tok, lineno, col) for col, tok in toks])
            pos += 1
        return rows

    def name_cell(tok, lineno, col):
        if tok not in index:
            raise UnknownName(f"unknown element name {tok!r}", lineno, col)
        return index[tok]

    def bit_cell(tok, lineno, col):
        if tok not in ("0", "1"):
            raise LatticeSyntaxError(f"'le' entries must be 0 or 1, got {tok!r}", lineno, col)
        return tok == "1"

    otimes = section("otimes", name_cell)
    arrow = section("arrow", name_cell)
    le = None
    if pos < len(lines) and lines[pos][1][0][1] == "le":
        le = section("le", bit_cell)
    if pos < len(lines):
        lineno, toks = lines[pos]
        raise LatticeSyntaxError(f"unexpected content {toks[0][1]!r}", lineno, toks[0][0])
    return RawAlgebra(tuple(names), otimes, arrow, le)


def serialize(L: ResiduatedLattice | RawAlgebra) -> str:
    """Normalized text form: no comments, single spaces, no ``le`` section."""
    names = L.names
    out = [f"elements {len(names)}", "names " + " ".join(names), "otimes"]
    out += [" ".join(names[v] for v in row) for row in L.otimes]
    out.append("arrow")
    out += [" ".join(names[v] for v in row) for row in L.arrow]
    return "\n".join(out) + "\n"


def load(path) -> ResiduatedLattice:
    return validate(parse(Path(path).read_text(encoding="utf-8")))


def load_raw(path) -> RawAlgebra:
    return parse(Path(path).read_text(encoding="utf-8"))


def save(L, path) -> None:
    Path(path).write_text(serialize(L), encoding="utf-8")


def fixture_dir() -> Path:
    return Path(__file__).resolve().parent / "fixtures"


FIXTURES = ("expob1", "expob2", "exp", "expp", "exim3")


def load_fixture(name: str) -> ResiduatedLattice:
    return load(fixture_dir() / f"{name}.rlat")


# ---------------------------------------------------------------------------
# report documents

@dataclass
class ReportDocument:
    """JSON-serializable report. Only str keys, lists, and scalars inside."""

    lattice: str
    digest: str
    exponent_bound: int
    classification: dict = field(default_factory=dict)
    filters: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    diagram: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        data = json.loads(text)
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        return cls(**data)
