"""Pure-Python kernels, the fallback when the compiled extension is absent.

Semantics (scan order, return values) match molskit._kernels exactly; the
backend parity tests in tests/test_kernels.py hold the two to byte-equal
outputs.  Callers guarantee entries are in range: a grid of order n holds
values in [0, n) only.
"""

import numpy as np


def latin_violation(grid):
    """First Latin violation of an n x n grid in row-major scan order.

    Returns None if every row and column is duplicate-free, else a tuple
    (axis, index, symbol, first_cell, second_cell) with axis 'row' or
    'col', cells as (row, col) pairs.
    """
    n = grid.shape[0]
    rows = grid.tolist()
    # col_first[c*n + s] = first row where symbol s was seen in column c
    col_first = [-1] * (n * n)
    row_first = [-1] * n
    for r in range(n):
        row = rows[r]
        for s in range(n):
            row_first[s] = -1
        for c in range(n):
            s = row[c]
            prev = row_first[s]
            if prev >= 0:
                return ("row", r, s, (r, prev), (r, c))
            row_first[s] = c
            prev = col_first[c * n + s]
            if prev >= 0:
                return ("col", c, s, (prev, c), (r, c))
            col_first[c * n + s] = r
    return None


def orth_violation(a, b):
    """First duplicated superposition pair of two order-n grids.

    Returns None when all n^2 ordered pairs (a(r,c), b(r,c)) are distinct,
    else (i, j): the flattened indexes of the first colliding cell pair in
    row-major order.  Dense seen-table, one pass, O(n^2) time and memory.
    """
    n = a.shape[0]
    flat_a = a.ravel().tolist()
    flat_b = b.ravel().tolist()
    seen = [-1] * (n * n)
    for i in range(n * n):
        p = flat_a[i] * n + flat_b[i]
        first = seen[p]
        if first >= 0:
            return (first, i)
        seen[p] = i
    return None


def fill_square_embed(base, mols):
    """Cell fill for the one-square embedding construction.

    base is an order-n grid L, mols a (t, n, n) stack F with F[0] the
    distinguished square.  Returns (host, mates): host of order n^2 with
    cell ((p,r),(q,c)) = F1(p,q)*n + L(F1(p,r), c), and mates[k] with cell
    ((p,r),(q,c)) = Fk(F1(p,r), q)*n + Fk(F1(p,q), c), flattened row
    p*n + r, column q*n + c.
    """
    n = base.shape[0]
    t = mols.shape[0]
    big = n * n
    ls = base.tolist()
    fs = mols.tolist()
    f1 = fs[0]
    host = np.empty((big, big), dtype=np.int32)
    mates = np.empty((t, big, big), dtype=np.int32)
    host_rows = host.tolist()
    mate_rows = mates.tolist()
    for p in range(n):
        f1p = f1[p]
        for r in range(n):
            f1pr = f1p[r]
            lrow = ls[f1pr]
            hrow = host_rows[p * n + r]
            for q in range(n):
                f1pq = f1p[q]
                col0 = q * n
                for c in range(n):
                    hrow[col0 + c] = f1pq * n + lrow[c]
            for k in range(t):
                fk = fs[k]
                fk_pr = fk[f1pr]
                xrow = mate_rows[k][p * n + r]
                for q in range(n):
                    fk_pq = fk[f1p[q]]
                    col0 = q * n
                    for c in range(n):
                        xrow[col0 + c] = fk_pr[q] * n + fk_pq[c]
    host[:] = host_rows
    mates[:] = mate_rows
    return host, mates


def fill_pair_embed(a1, a2, d1, d2, cset, fmap):
    """Cell fill for the pair embedding construction.

    Returns (b1, b2, mates): b1 cell ((p,r),(q,c)) = A1(p,q)*n + D1(r,c),
    b2 likewise with A2, D2, and mates[i] cell = Ci(p, D1(r,c))*n +
    C_f(i)(q, D2(r,c)) for the bijection fmap on [0, t).
    """
    n = a1.shape[0]
    t = cset.shape[0]
    big = n * n
    a1l, a2l = a1.tolist(), a2.tolist()
    d1l, d2l = d1.tolist(), d2.tolist()
    cl = cset.tolist()
    fl = list(fmap)
    b1 = np.empty((big, big), dtype=np.int32)
    b2 = np.empty((big, big), dtype=np.int32)
    mates = np.empty((t, big, big), dtype=np.int32)
    b1_rows = b1.tolist()
    b2_rows = b2.tolist()
    mate_rows = mates.tolist()
    for p in range(n):
        a1p, a2p = a1l[p], a2l[p]
        for r in range(n):
            d1r, d2r = d1l[r], d2l[r]
            row = p * n + r
            b1row, b2row = b1_rows[row], b2_rows[row]
            for q in range(n):
                a1pq = a1p[q] * n
                a2pq = a2p[q] * n
                col0 = q * n
                for c in range(n):
                    b1row[col0 + c] = a1pq + d1r[c]
                    b2row[col0 + c] = a2pq + d2r[c]
            for i in range(t):
                ci_p = cl[i][p]
                xrow = mate_rows[i][row]
                for q in range(n):
                    cf_q = cl[fl[i]][q]
                    col0 = q * n
                    for c in range(n):
                        xrow[col0 + c] = ci_p[d1r[c]] * n + cf_q[d2r[c]]
    b1[:] = b1_rows
    b2[:] = b2_rows
    mates[:] = mate_rows
    return b1, b2, mates
