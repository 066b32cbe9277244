"""Shared test fixtures: random square generators and independent oracles.

The oracles here deliberately avoid the library's verification paths
(seen-tables, kernels): Latin-ness by set comparison, orthogonality by
counting distinct pairs, construction formulas by naive quadruple loops.
"""

import random

import numpy as np

from molskit import EMPTY, LatinSquare, PartialLatinSquare, idempotent_complete


def brute_latin(grid) -> bool:
    rows = np.asarray(grid).tolist()
    n = len(rows)
    want = set(range(n))
    cols = [[rows[r][c] for r in range(n)] for c in range(n)]
    return all(set(r) == want for r in rows) and all(set(c) == want for c in cols)


def brute_orthogonal(a, b) -> bool:
    ga = np.asarray(a.grid if hasattr(a, "grid") else a)
    gb = np.asarray(b.grid if hasattr(b, "grid") else b)
    n = ga.shape[0]
    pairs = {(int(ga[r, c]), int(gb[r, c])) for r in range(n) for c in range(n)}
    return len(pairs) == n * n


def random_latin(n: int, rng: random.Random) -> LatinSquare:
    """A shuffled cyclic square: isotopy-limited but plenty for test fodder."""
    base = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    rows = rng.sample(range(n), n)
    cols = rng.sample(range(n), n)
    syms = np.array(rng.sample(range(n), n))
    return LatinSquare(syms[base[np.ix_(rows, cols)]])


def random_pls(n: int, rng: random.Random, fill: float = 0.4) -> PartialLatinSquare:
    """A random partial square: a cell subset of a random Latin square."""
    full = random_latin(n, rng)
    grid = np.full((n, n), EMPTY, dtype=np.int32)
    for r in range(n):
        for c in range(n):
            if rng.random() < fill:
                grid[r, c] = full.grid[r, c]
    return PartialLatinSquare(grid)


def random_idempotent_latin(n: int, rng: random.Random) -> LatinSquare:
    """A random idempotent Latin square (n = 2 has none)."""
    if n == 1:
        return LatinSquare([[0]])
    if n % 2:
        base = (2 * np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    else:
        base = idempotent_complete(PartialLatinSquare.empty((n - 1) // 2 or 1), n).grid
    # conjugating rows, cols, symbols by one permutation keeps idempotency
    perm = np.array(rng.sample(range(n), n))
    inv = np.empty(n, dtype=int)
    inv[perm] = np.arange(n)
    return LatinSquare(perm[np.asarray(base)[np.ix_(inv, inv)]])


def random_idempotent_pls(n: int, rng: random.Random, fill: float = 0.4) -> PartialLatinSquare:
    """Idempotent-compatible partial square: a cell subset of an idempotent
    Latin square (so no off-diagonal cell uses its row or column index)."""
    if n == 2:
        # no idempotent square of order 2 exists; only diagonal cells are
        # compatible
        cells = [(i, i, i) for i in range(2) if rng.random() < fill]
        return PartialLatinSquare.from_cells(2, cells)
    full = random_idempotent_latin(n, rng)
    grid = np.full((n, n), EMPTY, dtype=np.int32)
    for r in range(n):
        for c in range(n):
            if rng.random() < fill:
                grid[r, c] = full.grid[r, c]
    return PartialLatinSquare(grid)


def naive_square_embed(base_rows, f_stack):
    """Quadruple-loop evaluation of the one-square embedding formulas."""
    n = len(base_rows)
    t = len(f_stack)
    big = n * n
    f1 = f_stack[0]
    host = [[0] * big for _ in range(big)]
    mates = [[[0] * big for _ in range(big)] for _ in range(t)]
    for p in range(n):
        for r in range(n):
            for q in range(n):
                for c in range(n):
                    host[p * n + r][q * n + c] = f1[p][q] * n + base_rows[f1[p][r]][c]
                    for k in range(t):
                        mates[k][p * n + r][q * n + c] = (
                            f_stack[k][f1[p][r]][q] * n + f_stack[k][f1[p][q]][c]
                        )
    return host, mates


def naive_pair_embed(a1, a2, d1, d2, cs, f):
    """Quadruple-loop evaluation of the pair embedding formulas."""
    n = len(a1)
    t = len(cs)
    big = n * n
    b1 = [[0] * big for _ in range(big)]
    b2 = [[0] * big for _ in range(big)]
    mates = [[[0] * big for _ in range(big)] for _ in range(t)]
    for p in range(n):
        for r in range(n):
            for q in range(n):
                for c in range(n):
                    row, col = p * n + r, q * n + c
                    b1[row][col] = a1[p][q] * n + d1[r][c]
                    b2[row][col] = a2[p][q] * n + d2[r][c]
                    for i in range(t):
                        mates[i][row][col] = (
                            cs[i][p][d1[r][c]] * n + cs[f[i]][q][d2[r][c]]
                        )
    return b1, b2, mates


# A canonical pair of orthogonal partial Latin squares of order 4
# (volume 11, same filled cells), used as a fixture throughout.
OPLS4_LEFT = [
    [0, 1, 2, EMPTY],
    [2, 0, 1, 3],
    [3, EMPTY, 0, EMPTY],
    [EMPTY, 2, EMPTY, 1],
]

OPLS4_RIGHT = [
    [0, 2, 1, EMPTY],
    [3, 1, 0, 2],
    [1, EMPTY, 2, EMPTY],
    [EMPTY, 0, EMPTY, 3],
]
