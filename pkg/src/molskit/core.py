"""Domain types and verification primitives for (partial) Latin squares.

Symbols are 0-based integers: an order-n square holds values in [0, n).
Grids are numpy int32 arrays; partial squares mark empty cells with
EMPTY (-1).  All types are immutable after construction, and every
verifier reports the first violation in row-major scan order so test
assertions are reproducible.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from . import kernels

EMPTY = -1
GRID_DTYPE = np.int32

# Flattened composite symbols must fit int32: block * n + offset < 2**31.
MAX_COMPOSITE_ORDER = 46340


class MolskitError(Exception):
    """Base class for all molskit errors."""


class GridFormatError(MolskitError, ValueError):
    """Malformed input: wrong dimensions, out-of-range entry, bad parse.

    Deliberately distinct from a Latin violation, which is a well-formed
    grid failing the Latin property.
    """


class NotLatinError(MolskitError, ValueError):
    """A grid required to be Latin is not; carries the failing report."""

    def __init__(self, report: "LatinReport"):
        self.report = report
        super().__init__(f"grid is not Latin: {report.violation}")


class CertificationError(MolskitError):
    """A set asserted mutually orthogonal failed verification."""

    def __init__(self, report: "MolsReport | None" = None, message: str = "MOLS certification failed"):
        self.report = report
        super().__init__(message)


class UncertifiedInputError(MolskitError):
    """A construction whose correctness rests on orthogonality hypotheses
    was handed an uncertified input set."""


class WitnessMismatchError(MolskitError, ValueError):
    """A claimed cell disagrees with the host square's content."""


class SearchCapExceeded(MolskitError):
    """Exact search refused: order above the configured cap."""


class InvariantViolation(MolskitError):
    """An internal step the theory guarantees cannot fail, failed."""


def as_grid(data, *, allow_empty: bool = False) -> np.ndarray:
    """Coerce to a validated square int32 grid (read-only).

    Entries must lie in [0, n) for order n; EMPTY is accepted only when
    allow_empty is set.  Raises GridFormatError otherwise.  The range
    check runs before the int32 cast so oversized values cannot wrap
    into range.
    """
    try:
        raw = np.asarray(data)
    except ValueError as exc:
        raise GridFormatError(f"ragged or malformed grid: {exc}") from None
    if not np.issubdtype(raw.dtype, np.integer):
        raise GridFormatError(f"grid entries must be integers, got dtype {raw.dtype}")
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] == 0:
        raise GridFormatError(f"expected a nonempty square grid, got shape {raw.shape}")
    n = raw.shape[0]
    low = EMPTY if allow_empty else 0
    if raw.min() < low or raw.max() >= n:
        bad = np.argwhere((raw < low) | (raw >= n))[0]
        raise GridFormatError(
            f"entry {raw[bad[0], bad[1]]} at cell ({bad[0]}, {bad[1]}) "
            f"out of range for order {n}"
        )
    grid = np.array(raw, dtype=GRID_DTYPE, order="C")
    grid.setflags(write=False)
    return grid


def _check_permutation(perm, n: int) -> np.ndarray:
    arr = np.asarray(perm)
    if arr.shape != (n,) or not np.array_equal(np.sort(arr), np.arange(n)):
        raise GridFormatError(f"not a permutation of [0, {n})")
    return arr.astype(GRID_DTYPE)


class CompositeIndex(NamedTuple):
    """A (block, offset) coordinate of a square of composite order n*n."""

    block: int
    offset: int

    def flatten(self, n: int) -> int:
        return self.block * n + self.offset

    @classmethod
    def split(cls, value: int, n: int) -> "CompositeIndex":
        return cls(value // n, value % n)


@dataclass(frozen=True)
class LatinViolation:
    axis: str  # 'row' or 'col'
    index: int
    symbol: int
    first_cell: tuple[int, int]
    second_cell: tuple[int, int]


@dataclass(frozen=True)
class LatinReport:
    ok: bool
    violation: LatinViolation | None = None


@dataclass(frozen=True)
class OrthCollision:
    first_cell: tuple[int, int]
    second_cell: tuple[int, int]
    pair: tuple[int, int]


@dataclass(frozen=True)
class OrthReport:
    ok: bool
    collision: OrthCollision | None = None
    cells_differ: bool = False  # partial pairs only: filled patterns disagree


@dataclass(frozen=True)
class PairCheck:
    i: int
    j: int
    report: OrthReport


@dataclass(frozen=True)
class MolsReport:
    order: int
    count: int
    latin: tuple[LatinReport, ...]
    pairs: tuple[PairCheck, ...]
    ok: bool
    elapsed: float

    def failing_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((p.i, p.j) for p in self.pairs if not p.report.ok)


class LatinSquare:
    """A fully filled order-n grid, validated Latin at construction."""

    __slots__ = ("grid",)

    def __init__(self, grid):
        g = as_grid(grid)
        hit = kernels.latin_violation(g)
        if hit is not None:
            raise NotLatinError(LatinReport(False, LatinViolation(*hit)))
        object.__setattr__(self, "grid", g)

    def __setattr__(self, name, value):
        raise AttributeError("LatinSquare is immutable")

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return int(self.grid[rc])

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinSquare) and np.array_equal(self.grid, other.grid)

    def __hash__(self) -> int:
        return hash((self.order, self.grid.tobytes()))

    def __repr__(self) -> str:
        return f"LatinSquare(order={self.order})"

    def block(self, p: int, q: int, side: int) -> np.ndarray:
        """The side x side sub-array at block (p, q) under composite indexing."""
        return self.grid[p * side : (p + 1) * side, q * side : (q + 1) * side]

    def rows(self) -> list[list[int]]:
        return self.grid.tolist()


class PartialLatinSquare:
    """An order-n set of (row, col, symbol) triples with Latin constraints."""

    __slots__ = ("grid",)

    def __init__(self, grid):
        g = as_grid(grid, allow_empty=True)
        n = g.shape[0]
        filled = g != EMPTY
        rr, cc = np.nonzero(filled)
        ss = g[rr, cc]
        for keys, what in (
            (rr * n + ss, "row"),
            (cc * n + ss, "column"),
        ):
            counts = np.bincount(keys, minlength=n * n)
            dup = np.nonzero(counts > 1)[0]
            if dup.size:
                idx, sym = divmod(int(dup[0]), n)
                raise GridFormatError(
                    f"symbol {sym} repeats in {what} {idx}: not a partial Latin square"
                )
        object.__setattr__(self, "grid", g)

    def __setattr__(self, name, value):
        raise AttributeError("PartialLatinSquare is immutable")

    @classmethod
    def from_cells(
        cls, order: int, cells: Iterable[tuple[int, int, int]]
    ) -> "PartialLatinSquare":
        grid = np.full((order, order), EMPTY, dtype=GRID_DTYPE)
        for r, c, s in cells:
            if not (0 <= r < order and 0 <= c < order and 0 <= s < order):
                raise GridFormatError(f"triple ({r}, {c}, {s}) out of range for order {order}")
            if grid[r, c] != EMPTY and grid[r, c] != s:
                raise GridFormatError(f"cell ({r}, {c}) assigned two symbols")
            grid[r, c] = s
        return cls(grid)

    @classmethod
    def empty(cls, order: int) -> "PartialLatinSquare":
        return cls(np.full((order, order), EMPTY, dtype=GRID_DTYPE))

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    @property
    def volume(self) -> int:
        return int(np.count_nonzero(self.grid != EMPTY))

    def cells(self) -> tuple[tuple[int, int, int], ...]:
        rr, cc = np.nonzero(self.grid != EMPTY)
        return tuple((int(r), int(c), int(self.grid[r, c])) for r, c in zip(rr, cc))

    def filled_mask(self) -> np.ndarray:
        return self.grid != EMPTY

    def idempotent_compatible(self) -> bool:
        """Every filled diagonal cell (i, i) holds symbol i."""
        diag = np.diagonal(self.grid)
        return bool(np.all((diag == EMPTY) | (diag == np.arange(self.order))))

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialLatinSquare) and np.array_equal(
            self.grid, other.grid
        )

    def __hash__(self) -> int:
        return hash((self.order, self.grid.tobytes()))

    def __repr__(self) -> str:
        return f"PartialLatinSquare(order={self.order}, volume={self.volume})"


@dataclass(frozen=True)
class Transversal:
    """Order-many cells of a host square: rows, cols, symbols all distinct."""

    cells: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class EmbeddingWitness:
    """Three injections (rows, cols, symbols) carrying a PLS into a host."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    syms: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "EmbeddingWitness":
        ident = tuple(range(n))
        return cls(ident, ident, ident)


class MolsSet:
    """An ordered list of same-order Latin squares asserted pairwise orthogonal."""

    __slots__ = ("squares", "certified")

    def __init__(self, squares: Sequence[LatinSquare], *, certified: bool = False):
        squares = tuple(squares)
        if not squares:
            raise GridFormatError("a MOLS set must contain at least one square")
        order = squares[0].order
        for i, sq in enumerate(squares):
            if sq.order != order:
                raise GridFormatError(
                    f"square {i} has order {sq.order}, expected {order}"
                )
        object.__setattr__(self, "squares", squares)
        object.__setattr__(self, "certified", bool(certified))

    def __setattr__(self, name, value):
        raise AttributeError("MolsSet is immutable")

    @classmethod
    def certify(cls, squares: Sequence[LatinSquare]) -> "MolsSet":
        """Verify pairwise orthogonality and return a certified set."""
        made = cls(squares)
        report = verify_mols(made)
        if not report.ok:
            raise CertificationError(report)
        return cls(made.squares, certified=True)

    @property
    def order(self) -> int:
        return self.squares[0].order

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self) -> Iterator[LatinSquare]:
        return iter(self.squares)

    def __getitem__(self, i: int) -> LatinSquare:
        return self.squares[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, MolsSet) and self.squares == other.squares

    def __hash__(self) -> int:
        return hash(self.squares)

    def __repr__(self) -> str:
        tag = "certified" if self.certified else "uncertified"
        return f"MolsSet(order={self.order}, count={len(self)}, {tag})"

    def grids(self) -> list[np.ndarray]:
        return [sq.grid for sq in self.squares]


def is_latin(grid) -> LatinReport:
    """Check the Latin property; reports the first violation if any.

    Malformed input (wrong shape, out-of-range entry) raises
    GridFormatError instead of producing a report.
    """
    if isinstance(grid, LatinSquare):
        return LatinReport(True)
    g = grid if isinstance(grid, np.ndarray) and grid.dtype == GRID_DTYPE else None
    if g is None or g.ndim != 2:
        g = as_grid(grid)
    else:
        g = as_grid(g)
    hit = kernels.latin_violation(g)
    if hit is None:
        return LatinReport(True)
    return LatinReport(False, LatinViolation(*hit))


def _coerce_latin(square) -> LatinSquare:
    if isinstance(square, LatinSquare):
        return square
    return LatinSquare(square)  # raises NotLatinError with the is_latin report


def are_orthogonal(a, b) -> OrthReport:
    """Orthogonality check: all n^2 superposition pairs distinct.

    Total squares use a dense seen-table of n^2 slots, one pass.  Two
    partial squares use the partial definition: same non-empty cells,
    then distinct pairs over the filled cells.  Mixed partial/total
    comparisons are rejected.
    """
    a_partial = isinstance(a, PartialLatinSquare)
    b_partial = isinstance(b, PartialLatinSquare)
    if a_partial != b_partial:
        raise GridFormatError("cannot compare a partial square with a total one")
    if a_partial:
        return _orthogonal_partial(a, b)
    sa, sb = _coerce_latin(a), _coerce_latin(b)
    if sa.order != sb.order:
        raise GridFormatError(f"order mismatch: {sa.order} vs {sb.order}")
    return _orth_report(sa.grid, sb.grid, sa.order)


def _orth_report(ga: np.ndarray, gb: np.ndarray, n: int) -> OrthReport:
    hit = kernels.orth_violation(ga, gb)
    if hit is None:
        return OrthReport(True)
    i, j = hit
    first = (i // n, i % n)
    second = (j // n, j % n)
    pair = (int(ga[second]), int(gb[second]))
    return OrthReport(False, OrthCollision(first, second, pair))


def _orthogonal_partial(a: PartialLatinSquare, b: PartialLatinSquare) -> OrthReport:
    if a.order != b.order:
        raise GridFormatError(f"order mismatch: {a.order} vs {b.order}")
    if not np.array_equal(a.filled_mask(), b.filled_mask()):
        return OrthReport(False, None, cells_differ=True)
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for r, c, s in a.cells():
        pair = (s, int(b.grid[r, c]))
        if pair in seen:
            return OrthReport(False, OrthCollision(seen[pair], (r, c), pair))
        seen[pair] = (r, c)
    return OrthReport(True)


def verify_mols(mols) -> MolsReport:
    """Certification report for a MOLS set: per-square Latin status, then
    every unordered pair, in deterministic index order.

    Accepts a MolsSet, a sequence of LatinSquare, or raw grids (so a
    mutated, no-longer-Latin grid can still be diagnosed).  Pair checks
    run regardless of Latin failures: a single mutated cell shows up both
    as a Latin violation and in every pair involving that square.
    """
    start = time.perf_counter()
    if isinstance(mols, MolsSet):
        grids = mols.grids()
    else:
        items = list(mols)
        if not items:
            raise GridFormatError("empty MOLS set")
        grids = [
            sq.grid if isinstance(sq, LatinSquare) else as_grid(sq) for sq in items
        ]
    order = grids[0].shape[0]
    for i, g in enumerate(grids):
        if g.shape[0] != order:
            raise GridFormatError(f"square {i} has order {g.shape[0]}, expected {order}")
    latin = []
    for g in grids:
        hit = kernels.latin_violation(g)
        latin.append(
            LatinReport(True) if hit is None else LatinReport(False, LatinViolation(*hit))
        )
    pairs = [
        PairCheck(i, j, _orth_report(grids[i], grids[j], order))
        for i, j in combinations(range(len(grids)), 2)
    ]
    ok = all(r.ok for r in latin) and all(p.report.ok for p in pairs)
    return MolsReport(
        order=order,
        count=len(grids),
        latin=tuple(latin),
        pairs=tuple(pairs),
        ok=ok,
        elapsed=time.perf_counter() - start,
    )


def is_transversal(host: LatinSquare, t: Transversal) -> bool:
    """True iff t has order-many cells with rows, cols, symbols all distinct.

    A cell that disagrees with the host's content raises
    WitnessMismatchError rather than returning False.
    """
    n = host.order
    for r, c, s in t.cells:
        if not (0 <= r < n and 0 <= c < n and 0 <= s < n):
            raise GridFormatError(f"cell ({r}, {c}, {s}) out of range for order {n}")
        if host[r, c] != s:
            raise WitnessMismatchError(
                f"transversal claims ({r}, {c}) = {s} but host holds {host[r, c]}"
            )
    if len(t.cells) != n:
        return False
    rows = {r for r, _, _ in t.cells}
    cols = {c for _, c, _ in t.cells}
    syms = {s for _, _, s in t.cells}
    return len(rows) == n and len(cols) == n and len(syms) == n


def find_transversal_decomposition(
    host: LatinSquare, cap: int = 9
) -> tuple[Transversal, ...] | None:
    """Partition the host into n disjoint transversals by exact search.

    Success witnesses an orthogonal mate.  Returns None when exhaustive
    search proves no decomposition exists.  Orders above the cap raise
    SearchCapExceeded; at large order mate-ness is certified
    constructively, never by search.
    """
    n = host.order
    if n > cap:
        raise SearchCapExceeded(f"order {n} above search cap {cap}")
    grid = host.grid.tolist()
    full = (1 << n) - 1
    avail_row = [full] * n
    avail_col = [full] * n
    avail_sym = [full] * n
    assign = [[-1] * n for _ in range(n)]
    cells = [(r, c) for r in range(n) for c in range(n)]

    def pick() -> tuple[int, int] | None:
        best, best_count = None, n + 1
        for r, c in cells:
            if assign[r][c] != -1:
                continue
            options = avail_row[r] & avail_col[c] & avail_sym[grid[r][c]]
            count = options.bit_count()
            if count == 0:
                return (r, c)
            if count < best_count:
                best, best_count = (r, c), count
                if count == 1:
                    break
        return best

    def solve() -> bool:
        spot = pick()
        if spot is None:
            return True
        r, c = spot
        s = grid[r][c]
        options = avail_row[r] & avail_col[c] & avail_sym[s]
        while options:
            bit = options & -options
            options ^= bit
            k = bit.bit_length() - 1
            assign[r][c] = k
            avail_row[r] ^= bit
            avail_col[c] ^= bit
            avail_sym[s] ^= bit
            if solve():
                return True
            assign[r][c] = -1
            avail_row[r] |= bit
            avail_col[c] |= bit
            avail_sym[s] |= bit
        return False

    if not solve():
        return None
    groups: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for r in range(n):
        for c in range(n):
            groups[assign[r][c]].append((r, c, grid[r][c]))
    return tuple(Transversal(tuple(g)) for g in groups)


def is_idempotent(square: LatinSquare) -> bool:
    """True iff cell (i, i) holds symbol i for every i."""
    return bool(
        np.array_equal(np.diagonal(square.grid), np.arange(square.order))
    )


def check_embedding(
    source: PartialLatinSquare, host: LatinSquare, witness: EmbeddingWitness
) -> bool:
    """True iff the witness maps are injective and carry every source
    triple onto a host triple."""
    n = source.order
    m = host.order
    for name, mapping in (("rows", witness.rows), ("cols", witness.cols), ("syms", witness.syms)):
        if len(mapping) != n:
            raise GridFormatError(f"witness {name} map has {len(mapping)} entries, expected {n}")
        if any(v < 0 or v >= m for v in mapping):
            raise GridFormatError(f"witness {name} map leaves codomain [0, {m})")
    for mapping in (witness.rows, witness.cols, witness.syms):
        if len(set(mapping)) != n:
            return False
    for r, c, s in source.cells():
        if host[witness.rows[r], witness.cols[c]] != witness.syms[s]:
            return False
    return True


def direct_product(a: LatinSquare, b: LatinSquare) -> LatinSquare:
    """Kronecker-style product: cell ((p,r),(q,c)) = (a(p,q), b(r,c)),
    composite symbols flattened as block * order(b) + offset."""
    m, n = a.order, b.order
    if m * n > MAX_COMPOSITE_ORDER:
        raise GridFormatError(f"product order {m * n} exceeds supported maximum")
    ones = np.ones((n, n), dtype=GRID_DTYPE)
    grid = np.kron(a.grid, ones) * n + np.tile(b.grid, (m, m))
    return LatinSquare(grid.astype(GRID_DTYPE))


def permute_rows(square: LatinSquare, perm) -> LatinSquare:
    """Row i of the output is row perm(i) of the input."""
    p = _check_permutation(perm, square.order)
    return LatinSquare(square.grid[p, :])


def rename_symbols(square: LatinSquare, perm) -> LatinSquare:
    """Each symbol s is replaced by perm(s)."""
    p = _check_permutation(perm, square.order)
    return LatinSquare(p[square.grid])
