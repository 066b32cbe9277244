"""Constructive completion of partial Latin squares.

evans_complete embeds a PLS(n) in a Latin square of any order t >= 2n
(the classical tight bound); idempotent_complete embeds a diagonal-
compatible PLS in an idempotent square of any order t >= 2n+1.  Both
place the input in the top-left corner so the embedding witness is the
identity.

The machinery is bipartite: a greedy corner fill, a proper edge coloring
of the row/symbol deficiency graph (Koenig bound, realized by padding to
a regular multigraph and peeling perfect matchings), and one perfect
matching per remaining row.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from heapq import heapify, heappop, heappush

import numpy as np

from .core import (
    EMPTY,
    GRID_DTYPE,
    GridFormatError,
    InvariantViolation,
    LatinSquare,
    PartialLatinSquare,
)

# Randomized retries for the idempotent filler before the exact solver.
_MAX_ATTEMPTS = 40


@dataclass(frozen=True)
class BipartiteGraph:
    """Edge multiset between [0, n_left) and [0, n_right)."""

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]

    def degrees(self) -> tuple[list[int], list[int]]:
        left = [0] * self.n_left
        right = [0] * self.n_right
        for u, v in self.edges:
            left[u] += 1
            right[v] += 1
        return left, right


def _augment(root: int, adj, match_l, match_r) -> bool:
    """One augmenting-path search (iterative), updating the matching."""
    parent: dict[int, int] = {}
    stack = [(root, iter(adj.get(root, ())))]
    while stack:
        u, it = stack[-1]
        moved = False
        for v in it:
            if v in parent:
                continue
            parent[v] = u
            w = match_r.get(v, -1)
            if w == -1:
                while v is not None:
                    u2 = parent[v]
                    prev = match_l.get(u2)
                    match_l[u2] = v
                    match_r[v] = u2
                    v = prev
                return True
            stack.append((w, iter(adj.get(w, ()))))
            moved = True
            break
        if not moved:
            stack.pop()
    return False


def _max_matching(left_order, adj) -> tuple[dict[int, int], dict[int, int]]:
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    for u in left_order:
        if u not in match_l:
            _augment(u, adj, match_l, match_r)
    return match_l, match_r


def bipartite_max_matching(g: BipartiteGraph) -> dict[int, int]:
    """Maximum matching (left -> right), certified by augmenting paths."""
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in sorted(set(g.edges)):
        adj[u].append(v)
    match_l, _ = _max_matching(range(g.n_left), adj)
    return match_l


def bipartite_edge_coloring(
    g: BipartiteGraph, colors: int, rng: random.Random | None = None
) -> tuple[int, ...]:
    """Proper edge coloring with the requested number of colors.

    Requires colors >= max degree.  Returns one color per edge, aligned
    with g.edges.  Pads the graph to a colors-regular bipartite
    multigraph on equal sides, then peels one perfect matching per color;
    regularity keeps every peel feasible, so each real vertex of full
    degree appears in every color class.
    """
    edges = list(g.edges)
    if not edges:
        return ()
    deg_l, deg_r = g.degrees()
    if colors < max(max(deg_l), max(deg_r)):
        raise ValueError(f"{colors} colors below max degree")
    n = max(g.n_left, g.n_right)

    real = Counter(edges)
    index_pool: dict[tuple[int, int], deque[int]] = defaultdict(deque)
    for i, e in enumerate(edges):
        index_pool[e].append(i)
    count: Counter = Counter(real)

    heap_l = [(-(colors - d), u) for u, d in enumerate(deg_l + [0] * (n - g.n_left)) if d < colors]
    heap_r = [(-(colors - d), v) for v, d in enumerate(deg_r + [0] * (n - g.n_right)) if d < colors]
    heapify(heap_l)
    heapify(heap_r)
    while heap_l:
        du, u = heappop(heap_l)
        dv, v = heappop(heap_r)
        take = min(-du, -dv)
        count[(u, v)] += take
        if -du - take:
            heappush(heap_l, (du + take, u))
        if -dv - take:
            heappush(heap_r, (dv + take, v))

    assigned = [0] * len(edges)
    for color in range(colors):
        adj: dict[int, list[int]] = defaultdict(list)
        for (u, v), m in sorted(count.items()):
            if m > 0:
                adj[u].append(v)
        if rng is not None:
            for vs in adj.values():
                rng.shuffle(vs)
        match_l, _ = _max_matching(range(n), adj)
        if len(match_l) != n:
            raise InvariantViolation("regular multigraph failed to yield a perfect matching")
        for u, v in match_l.items():
            count[(u, v)] -= 1
            if real[(u, v)] > 0:
                real[(u, v)] -= 1
                assigned[index_pool[(u, v)].popleft()] = color
    return tuple(assigned)


def _fill_corner(grid: np.ndarray, n: int, t: int, rng: random.Random | None = None) -> None:
    """Greedy row-major fill of the empty corner cells with any symbol from
    [0, t) absent from the cell's row and column; at most 2n - 2 symbols
    (2n with a pre-placed diagonal) are forbidden, so a choice exists."""
    for r in range(n):
        for c in range(n):
            if grid[r, c] != EMPTY:
                continue
            used = set(int(x) for x in grid[r, :] if x != EMPTY)
            used.update(int(x) for x in grid[:, c] if x != EMPTY)
            free = [s for s in range(t) if s not in used]
            if not free:
                raise InvariantViolation(f"corner cell ({r}, {c}) has no available symbol")
            grid[r, c] = free[0] if rng is None else rng.choice(free)


def _row_deficiency_graph(grid: np.ndarray, n: int, t: int) -> BipartiteGraph:
    edges = []
    for r in range(n):
        present = set(int(x) for x in grid[r, :] if x != EMPTY)
        edges.extend((r, s) for s in range(t) if s not in present)
    return BipartiteGraph(n, t, tuple(edges))


def _check_rows_complete(grid: np.ndarray, rows: int, t: int) -> None:
    want = np.arange(t)
    for r in range(rows):
        if not np.array_equal(np.sort(grid[r, :]), want):
            raise InvariantViolation(f"row {r} is not a permutation after column extension")


def evans_complete(pls: PartialLatinSquare, t: int) -> LatinSquare:
    """Complete a PLS(n) to a Latin square of order t >= 2n containing it
    in the top-left corner (identity embedding witness).

    Three phases: greedy corner fill; extension to an n x t Latin
    rectangle by edge-coloring the row/symbol deficiency graph with t - n
    colors (color c fills column n + c); then t - n perfect matchings on
    the column/symbol graph, one per new row.  Every phase is guaranteed
    feasible at t >= 2n; a matching failure is an internal error, never a
    silent wrong answer.
    """
    n = pls.order
    if t < 2 * n:
        raise ValueError(f"target order {t} is below the embedding bound {2 * n}")
    grid = np.full((t, t), EMPTY, dtype=GRID_DTYPE)
    grid[:n, :n] = pls.grid
    _fill_corner(grid, n, t)
    if t > n:
        graph = _row_deficiency_graph(grid, n, t)
        coloring = bipartite_edge_coloring(graph, t - n)
        for (r, s), color in zip(graph.edges, coloring):
            grid[r, n + color] = s
        _check_rows_complete(grid, n, t)
        _extend_rows_by_matching(grid, n, t)
    return LatinSquare(grid)


def _extend_rows_by_matching(grid: np.ndarray, start: int, t: int) -> None:
    """Fill rows start..t-1 of a Latin rectangle, one perfect matching on
    the column/symbol deficiency graph per row.  The graph is regular, so
    each matching exists."""
    col_used = [set(int(x) for x in grid[:, c] if x != EMPTY) for c in range(t)]
    for r in range(start, t):
        adj = {c: [s for s in range(t) if s not in col_used[c]] for c in range(t)}
        match_l, _ = _max_matching(range(t), adj)
        if len(match_l) != t:
            raise InvariantViolation(f"no perfect matching available for row {r}")
        for c, s in match_l.items():
            grid[r, c] = s
            col_used[c].add(s)


def idempotent_complete(pls: PartialLatinSquare, t: int) -> LatinSquare:
    """Complete a diagonal-compatible PLS(n) to an idempotent Latin square
    of order t >= 2n + 1 containing it in the top-left corner.

    The full diagonal (i, i) = i is pre-placed, then the corner and
    extension phases run with the diagonal as fixed cells.  The diagonal
    constrains the matchings, so a deterministic pass can strand itself;
    failed phases are retried with seeded randomized choices, and a
    bounded exact search over the original fixed cells is the last
    resort.  Exhausting that too raises InvariantViolation.

    Beyond holding i in every filled (i, i) cell, the square must avoid
    off-diagonal cells (r, c, c) and (r, c, r): those collide with the
    host's diagonal under the identity witness.
    """
    n = pls.order
    if t < 2 * n + 1:
        raise ValueError(f"target order {t} is below the idempotent embedding bound {2 * n + 1}")
    if not pls.idempotent_compatible():
        raise GridFormatError("a filled diagonal cell does not hold its own index")
    for r, c, s in pls.cells():
        if r != c and (s == c or s == r):
            raise GridFormatError(
                f"cell ({r}, {c}) = {s} collides with the fixed diagonal of an idempotent host"
            )
    base = np.full((t, t), EMPTY, dtype=GRID_DTYPE)
    base[:n, :n] = pls.grid
    np.fill_diagonal(base, np.arange(t, dtype=GRID_DTYPE))

    for attempt in range(_MAX_ATTEMPTS):
        rng = random.Random(attempt) if attempt else None
        result = _idempotent_attempt(base.copy(), n, t, rng)
        if result is not None:
            return LatinSquare(result)
    solved = _complete_exact(base.copy(), t)
    if solved is None:
        raise InvariantViolation(
            f"exhaustive search found no idempotent completion at order {t}"
        )
    return LatinSquare(solved)


def _idempotent_attempt(
    grid: np.ndarray, n: int, t: int, rng: random.Random | None
) -> np.ndarray | None:
    _fill_corner(grid, n, t, rng)
    if n:
        graph = _row_deficiency_graph(grid, n, t)
        try:
            coloring = bipartite_edge_coloring(graph, t - n, rng)
        except InvariantViolation:
            return None
        # Column n+c may not take symbol n+c: the host diagonal owns it.
        class_syms: list[set[int]] = [set() for _ in range(t - n)]
        for (_, s), color in zip(graph.edges, coloring):
            class_syms[color].add(s)
        adj = {
            color: [j for j in range(t - n) if (n + j) not in class_syms[color]]
            for color in range(t - n)
        }
        if rng is not None:
            for vs in adj.values():
                rng.shuffle(vs)
        match_l, _ = _max_matching(range(t - n), adj)
        if len(match_l) != t - n:
            return None
        by_color: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for edge, color in zip(graph.edges, coloring):
            by_color[color].append(edge)
        for color, j in match_l.items():
            for r, s in by_color[color]:
                grid[r, n + j] = s
    col_used = [set(int(x) for x in grid[:, c] if x != EMPTY) for c in range(t)]
    for r in range(n, t):
        adj2 = {
            c: [
                s
                for s in range(t)
                if s not in col_used[c] and s != r and not (s == c and c > r)
            ]
            for c in range(t)
            if c != r
        }
        if rng is not None:
            for vs in adj2.values():
                rng.shuffle(vs)
        match_l, _ = _max_matching(sorted(adj2), adj2)
        if len(match_l) != t - 1:
            return None
        for c, s in match_l.items():
            grid[r, c] = s
            col_used[c].add(s)
    return grid


def _complete_exact(grid: np.ndarray, t: int) -> np.ndarray | None:
    """Exact completion of a partial grid by MRV backtracking.

    Exhaustive: returns None only when no completion exists.  Used as the
    last resort for diagonal-constrained completions, where order is
    small (the pipelines stay below a few dozen).
    """
    full = (1 << t) - 1
    row_used = [0] * t
    col_used = [0] * t
    cells = []
    g = grid.tolist()
    for r in range(t):
        for c in range(t):
            s = g[r][c]
            if s == EMPTY:
                cells.append((r, c))
            else:
                row_used[r] |= 1 << s
                col_used[c] |= 1 << s

    def solve() -> bool:
        best = None
        best_count = t + 1
        for r, c in cells:
            if g[r][c] != EMPTY:
                continue
            avail = full & ~(row_used[r] | col_used[c])
            cnt = avail.bit_count()
            if cnt == 0:
                return False
            if cnt < best_count:
                best, best_count = (r, c), cnt
                if cnt == 1:
                    break
        if best is None:
            return True
        r, c = best
        avail = full & ~(row_used[r] | col_used[c])
        while avail:
            bit = avail & -avail
            avail ^= bit
            s = bit.bit_length() - 1
            g[r][c] = s
            row_used[r] |= bit
            col_used[c] |= bit
            if solve():
                return True
            g[r][c] = EMPTY
            row_used[r] ^= bit
            col_used[c] ^= bit
        return False

    if not solve():
        return None
    return np.array(g, dtype=GRID_DTYPE)
