"""Bit-exact text formats: grids, MOLS sets, witnesses, reports.

All emitters produce canonical bytes (single spaces, LF-terminated
lines), so emitting twice yields identical files and parse(emit(x)) is
the identity.  Symbols are decimal; composite structure is recoverable
from the documented block * n + offset flattening.

    latin <order>        full grid: <order> lines of <order> symbols
    partial <order>      like latin, with "." marking empty cells
    mols <order> <count> <count> grid bodies separated by one blank line
    witness <n> <M>      rows / cols / syms lines, n entries each

Reports are line-oriented with deterministic field order; timing lines
are opt-in so report bytes stay reproducible across runs.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .core import (
    EMPTY,
    EmbeddingWitness,
    GRID_DTYPE,
    GridFormatError,
    LatinSquare,
    MolsReport,
    MolsSet,
    PartialLatinSquare,
)


def _parse_symbol(tok: str, order: int, line_no: int, col: int, allow_empty: bool) -> int:
    if tok == ".":
        if not allow_empty:
            raise GridFormatError(
                f"line {line_no}, token {col + 1}: '.' not allowed in a latin grid"
            )
        return EMPTY
    try:
        value = int(tok)
    except ValueError:
        raise GridFormatError(f"line {line_no}, token {col + 1}: bad symbol {tok!r}") from None
    if not 0 <= value < order:
        raise GridFormatError(
            f"line {line_no}, token {col + 1}: symbol {value} out of range for order {order}"
        )
    return value


def _parse_body(
    lines: list[str], start: int, order: int, allow_empty: bool
) -> np.ndarray:
    grid = np.full((order, order), EMPTY, dtype=GRID_DTYPE)
    for r in range(order):
        line_no = start + r
        if line_no > len(lines):
            raise GridFormatError(f"line {line_no}: expected {order} grid rows, file ended")
        toks = lines[line_no - 1].split()
        if len(toks) != order:
            raise GridFormatError(
                f"line {line_no}: expected {order} tokens, found {len(toks)}"
            )
        for c, tok in enumerate(toks):
            grid[r, c] = _parse_symbol(tok, order, line_no, c, allow_empty)
    return grid


def _parse_header(line: str, expected: tuple[str, ...], argc: int) -> list[int]:
    parts = line.split()
    if not parts or parts[0] not in expected or len(parts) != argc + 1:
        raise GridFormatError(f"line 1: bad header {line!r}")
    try:
        return [int(x) for x in parts[1:]]
    except ValueError:
        raise GridFormatError(f"line 1: bad header {line!r}") from None


def parse_grid_raw(text: str) -> tuple[str, np.ndarray]:
    """Parse a grid file without Latin validation.

    Returns (kind, grid) with kind 'latin' or 'partial'; a latin file's
    grid is fully filled and range-checked but not verified Latin, so a
    verifier can report violations instead of refusing to parse.
    """
    lines = text.splitlines()
    if not lines:
        raise GridFormatError("empty file")
    (order,) = _parse_header(lines[0], ("latin", "partial"), 1)
    kind = lines[0].split()[0]
    if order < 1:
        raise GridFormatError(f"line 1: order must be positive, got {order}")
    grid = _parse_body(lines, 2, order, allow_empty=(kind == "partial"))
    rest = lines[1 + order :]
    if any(line.strip() for line in rest):
        raise GridFormatError(f"line {2 + order}: trailing content after grid")
    return kind, grid


def parse_grid(text: str) -> LatinSquare | PartialLatinSquare:
    """Parse a grid file into its domain type (Latin-validated)."""
    kind, grid = parse_grid_raw(text)
    if kind == "latin":
        return LatinSquare(grid)
    return PartialLatinSquare(grid)


def _rows_text(grid: np.ndarray) -> str:
    out = []
    for row in grid.tolist():
        out.append(" ".join("." if s == EMPTY else str(s) for s in row) + "\n")
    return "".join(out)


def emit_grid(square: LatinSquare | PartialLatinSquare) -> str:
    if isinstance(square, LatinSquare):
        return f"latin {square.order}\n" + _rows_text(square.grid)
    if isinstance(square, PartialLatinSquare):
        return f"partial {square.order}\n" + _rows_text(square.grid)
    raise TypeError(f"cannot emit {type(square).__name__}")


def parse_mols_raw(text: str) -> list[np.ndarray]:
    """Parse a MOLS file into raw grids (range-checked, not Latin-checked)."""
    lines = text.splitlines()
    if not lines:
        raise GridFormatError("empty file")
    order, count = _parse_header(lines[0], ("mols",), 2)
    if order < 1 or count < 1:
        raise GridFormatError(f"line 1: bad mols header {lines[0]!r}")
    grids = []
    line_no = 2
    for g in range(count):
        while line_no <= len(lines) and not lines[line_no - 1].strip():
            line_no += 1
        if line_no > len(lines):
            raise GridFormatError(
                f"line {line_no}: expected {count} grids, found {g}"
            )
        grids.append(_parse_body(lines, line_no, order, allow_empty=False))
        line_no += order
    if any(line.strip() for line in lines[line_no - 1 :]):
        raise GridFormatError(f"line {line_no}: trailing content after grid {count}")
    return grids


def parse_mols(text: str) -> MolsSet:
    """Parse a MOLS file; every grid is validated Latin.  The returned set
    is uncertified: pairwise orthogonality is the verifier's job."""
    grids = parse_mols_raw(text)
    return MolsSet([LatinSquare(g) for g in grids])


def emit_mols(mols: MolsSet | Sequence[LatinSquare]) -> str:
    squares = list(mols)
    order = squares[0].order
    if any(sq.order != order for sq in squares):
        raise GridFormatError("cannot emit a MOLS file with mixed orders")
    parts = [f"mols {order} {len(squares)}\n"]
    for i, sq in enumerate(squares):
        if i:
            parts.append("\n")
        parts.append(_rows_text(sq.grid))
    return "".join(parts)


def emit_witness(witness: EmbeddingWitness, host_order: int) -> str:
    n = len(witness.rows)
    return (
        f"witness {n} {host_order}\n"
        f"rows {' '.join(map(str, witness.rows))}\n"
        f"cols {' '.join(map(str, witness.cols))}\n"
        f"syms {' '.join(map(str, witness.syms))}\n"
    )


def parse_witness(text: str) -> tuple[EmbeddingWitness, int]:
    """Parse a witness file; returns (witness, host_order)."""
    lines = text.splitlines()
    if len(lines) < 4:
        raise GridFormatError("witness file needs a header and rows/cols/syms lines")
    n, host_order = _parse_header(lines[0], ("witness",), 2)
    maps = {}
    for line_no, name in ((2, "rows"), (3, "cols"), (4, "syms")):
        parts = lines[line_no - 1].split()
        if not parts or parts[0] != name:
            raise GridFormatError(f"line {line_no}: expected '{name} ...'")
        try:
            values = tuple(int(x) for x in parts[1:])
        except ValueError:
            raise GridFormatError(f"line {line_no}: bad integer") from None
        if len(values) != n:
            raise GridFormatError(f"line {line_no}: expected {n} entries")
        if any(v < 0 or v >= host_order for v in values):
            raise GridFormatError(f"line {line_no}: entry outside [0, {host_order})")
        maps[name] = values
    return EmbeddingWitness(maps["rows"], maps["cols"], maps["syms"]), host_order


def _cell(rc: tuple[int, int]) -> str:
    return f"{rc[0]},{rc[1]}"


def emit_report(
    report: MolsReport,
    *,
    extra: Sequence[str] = (),
    include_timing: bool = False,
) -> str:
    """Render a certification report; field order is deterministic and
    timing is opt-in so identical inputs give identical bytes."""
    lines = [
        "report mols",
        f"order {report.order}",
        f"count {report.count}",
    ]
    for i, latin in enumerate(report.latin):
        if latin.ok:
            lines.append(f"latin {i} ok")
        else:
            v = latin.violation
            lines.append(
                f"latin {i} fail {v.axis} {v.index} symbol {v.symbol} "
                f"cells {_cell(v.first_cell)} {_cell(v.second_cell)}"
            )
    for pc in report.pairs:
        r = pc.report
        if r.ok:
            lines.append(f"pair {pc.i} {pc.j} ok")
        elif r.cells_differ:
            lines.append(f"pair {pc.i} {pc.j} fail cells-differ")
        else:
            c = r.collision
            lines.append(
                f"pair {pc.i} {pc.j} fail cells {_cell(c.first_cell)} "
                f"{_cell(c.second_cell)} pair {c.pair[0]},{c.pair[1]}"
            )
    lines.append(f"certified {'true' if report.ok else 'false'}")
    lines.extend(extra)
    if include_timing:
        lines.append(f"timing-ms {report.elapsed * 1000:.3f}")
    return "\n".join(lines) + "\n"
