"""Text format for exact rational polyhedra.

All numbers are exact rational tokens ``p`` or ``p/q``.  Lines starting with
``#`` and blank lines are ignored.  Three headers:

* ``H <d> <n>`` followed by n rows ``b a_1 ... a_d`` (meaning <a, x> <= b),
* ``V <d> <nv> <nr> <nl>`` followed by the sections ``V`` (points), ``R``
  (rays) and ``L`` (lineality lines), each section marker on its own line
  and present only when its count is nonzero, rows of d tokens each,
* ``EMPTY <d>`` for the empty polyhedron.

Printing is canonical (sorted constraints / generators, reduced fractions),
so parse-then-print is the identity on canonical files.
"""

from __future__ import annotations

from fractions import Fraction

from .polyhedra import Polyhedron


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _fraction_token(x: Fraction) -> str:
    return str(x)


def format_hrep(P: Polyhedron) -> str:
    """Canonical H-file text for a polyhedron."""
    if P.is_empty:
        return f"EMPTY {P.dim}\n"
    lines = [f"H {P.dim} {len(P.constraints)}"]
    for c in P.constraints:
        lines.append(" ".join([_fraction_token(c.b)] + [str(a) for a in c.a]))
    return "\n".join(lines) + "\n"


def format_vrep(P: Polyhedron) -> str:
    """Canonical V-file text for a polyhedron."""
    if P.is_empty:
        return f"EMPTY {P.dim}\n"
    out = [f"V {P.dim} {len(P.vertices)} {len(P.rays)} {len(P.lines)}"]
    if P.vertices:
        out.append("V")
        for v in P.vertices:
            out.append(" ".join(_fraction_token(x) for x in v))
    if P.rays:
        out.append("R")
        for r in P.rays:
            out.append(" ".join(str(x) for x in r))
    if P.lines:
        out.append("L")
        for l in P.lines:
            out.append(" ".join(str(x) for x in l))
    return "\n".join(out) + "\n"


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield i, stripped


def _parse_fraction(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational token {tok!r}", line)


def parse_polyhedron(text: str) -> Polyhedron:
    """Parse either file kind into a canonical polyhedron."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty file")
    lno, header = lines[0]
    parts = header.split()
    kind = parts[0].upper()

    if kind == "EMPTY":
        if len(parts) != 2:
            raise ParseError("EMPTY header needs a dimension", lno)
        try:
            d = int(parts[1])
        except ValueError:
            raise ParseError("bad dimension", lno)
        if len(lines) > 1:
            raise ParseError("unexpected data after EMPTY header", lines[1][0])
        return Polyhedron.empty(d)

    if kind == "H":
        if len(parts) != 3:
            raise ParseError("H header must be 'H <dim> <rows>'", lno)
        try:
            d, n = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError("bad H header numbers", lno)
        body = lines[1:]
        if len(body) != n:
            raise ParseError(f"expected {n} constraint rows, found {len(body)}", lno)
        raw = []
        for rlno, row in body:
            toks = row.split()
            if len(toks) != d + 1:
                raise ParseError(f"expected {d + 1} tokens", rlno)
            vals = [_parse_fraction(t, rlno) for t in toks]
            raw.append((tuple(vals[1:]), vals[0]))
        return Polyhedron.from_inequalities(d, raw)

    if kind == "V":
        if len(parts) != 5:
            raise ParseError("V header must be 'V <dim> <nv> <nr> <nl>'", lno)
        try:
            d, nv, nr, nl = (int(p) for p in parts[1:])
        except ValueError:
            raise ParseError("bad V header numbers", lno)
        sections = {"V": [], "R": [], "L": []}
        current = None
        for rlno, row in lines[1:]:
            if row in ("V", "R", "L"):
                current = row
                continue
            if current is None:
                raise ParseError("row before any section marker", rlno)
            toks = row.split()
            if len(toks) != d:
                raise ParseError(f"expected {d} tokens", rlno)
            sections[current].append(tuple(_parse_fraction(t, rlno) for t in toks))
        for name, want in (("V", nv), ("R", nr), ("L", nl)):
            if len(sections[name]) != want:
                raise ParseError(
                    f"section {name}: expected {want} rows, found {len(sections[name])}", lno)
        return Polyhedron.from_generators(d, sections["V"], sections["R"], sections["L"])

    raise ParseError(f"unknown header kind {parts[0]!r}", lno)


def load_polyhedron(path) -> Polyhedron:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_polyhedron(fh.read())


def save_hrep(P: Polyhedron, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hrep(P))
