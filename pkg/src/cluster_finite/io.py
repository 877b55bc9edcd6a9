"""Matrix and edge-list file formats.

Text matrices: optional ``# name: ...`` and ``# d: ...`` header lines, then
a line holding ``n`` and ``n`` lines of ``n`` integers.  JSON matrices:
``{"n": ..., "rows": [[...]], "d": [...], "name": ...}`` with ``d`` and
``name`` optional.  Edge lists: one ``i j [weight]`` per line (1-based),
plus an optional line holding just the vertex count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .diagram import Diagram, Edge
from .errors import ParseError
from .matrix import IntMatrix


@dataclass(frozen=True)
class MatrixDocument:
    matrix: IntMatrix
    symmetrizer: Optional[tuple[int, ...]] = None
    name: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.matrix)


def _tokens(line: str) -> list[tuple[str, int]]:
    out, col = [], 0
    for part in line.split():
        col = line.index(part, col)
        out.append((part, col + 1))
        col += len(part)
    return out


def _int(tok: str, line: int, col: int, what: str = "integer") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected {what}, found {tok!r}", line, col) from None


def parse_matrix(text: str) -> MatrixDocument:
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    name: Optional[str] = None
    d: Optional[tuple[int, ...]] = None
    n: Optional[int] = None
    rows: list[tuple[int, ...]] = []
    last = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        last = lineno
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            key, _, value = body.partition(":")
            if key.strip() == "name":
                name = value.strip()
            elif key.strip() == "d":
                start = raw.index(":") + 1
                d = tuple(_int(t, lineno, start + c, "symmetrizer entry") for t, c in _tokens(raw[start:]))
            continue
        toks = _tokens(raw)
        if n is None:
            if len(toks) != 1:
                raise ParseError("first line must hold the matrix size alone", lineno, toks[min(1, len(toks) - 1)][1])
            n = _int(toks[0][0], lineno, toks[0][1], "matrix size")
            if n < 1:
                raise ParseError("matrix size must be positive", lineno, toks[0][1])
            continue
        if len(rows) == n:
            raise ParseError(f"unexpected extra row (matrix has {n} rows)", lineno, toks[0][1])
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else len(raw) + 1
            raise ParseError(f"expected {n} entries, found {len(toks)}", lineno, col)
        rows.append(tuple(_int(t, lineno, c) for t, c in toks))
    if n is None:
        raise ParseError("empty input", max(last, 1), 1)
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, found {len(rows)}", last + 1, 1)
    if d is not None and len(d) != n:
        raise ParseError(f"symmetrizer has {len(d)} entries, expected {n}", 1, 1)
    return MatrixDocument(tuple(rows), d, name)


def _parse_json(text: str) -> MatrixDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "rows" not in obj:
        raise ParseError('expected an object with a "rows" key', 1, 1)
    rows = obj["rows"]
    n = obj.get("n", len(rows) if isinstance(rows, list) else None)

    def ok_int(x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    if not ok_int(n) or n < 1:
        raise ParseError('"n" must be a positive integer', 1, 1)
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must be a list of {n} rows', 1, 1)
    for r, row in enumerate(rows, 1):
        if not isinstance(row, list) or len(row) != n or not all(ok_int(x) for x in row):
            raise ParseError(f"row {r} must be a list of {n} integers", 1, 1)
    d = obj.get("d")
    if d is not None and (not isinstance(d, list) or len(d) != n or not all(ok_int(x) for x in d)):
        raise ParseError(f'"d" must be a list of {n} integers', 1, 1)
    name = obj.get("name")
    return MatrixDocument(tuple(tuple(r) for r in rows), None if d is None else tuple(d), None if name is None else str(name))


def render_text(doc: MatrixDocument) -> str:
    lines = []
    if doc.name is not None:
        lines.append(f"# name: {doc.name}")
    if doc.symmetrizer is not None:
        lines.append("# d: " + " ".join(map(str, doc.symmetrizer)))
    lines.append(str(doc.n))
    lines += [" ".join(map(str, row)) for row in doc.matrix]
    return "\n".join(lines) + "\n"


def render_json(doc: MatrixDocument) -> str:
    obj: dict = {"n": doc.n, "rows": [list(r) for r in doc.matrix]}
    if doc.symmetrizer is not None:
        obj["d"] = list(doc.symmetrizer)
    if doc.name is not None:
        obj["name"] = doc.name
    return json.dumps(obj) + "\n"


def parse_edge_list(text: str) -> Diagram:
    """Undirected weighted diagram from an edge list (weights default to 1)."""
    n: Optional[int] = None
    edges: list[Edge] = []
    top = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = _tokens(body)
        if not toks:
            continue
        if len(toks) == 1:
            if n is not None or edges:
                raise ParseError("vertex count must come first and only once", lineno, toks[0][1])
            n = _int(toks[0][0], lineno, toks[0][1], "vertex count")
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno, toks[0][1])
            continue
        if len(toks) > 3:
            raise ParseError("expected 'i j [weight]'", lineno, toks[3][1])
        i = _int(toks[0][0], lineno, toks[0][1], "vertex")
        j = _int(toks[1][0], lineno, toks[1][1], "vertex")
        w = _int(toks[2][0], lineno, toks[2][1], "weight") if len(toks) == 3 else 1
        for v, c in ((i, toks[0][1]), (j, toks[1][1])):
            if v < 1 or (n is not None and v > n):
                raise ParseError(f"vertex {v} out of range", lineno, c)
        if i == j:
            raise ParseError("self-loop", lineno, toks[1][1])
        if w < 1:
            raise ParseError("weight must be positive", lineno, toks[2][1])
        edges.append(Edge(i - 1, j - 1, w))
        top = max(top, i, j)
    return Diagram(top if n is None else n, tuple(edges))
