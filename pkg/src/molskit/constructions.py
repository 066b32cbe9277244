"""Embeddings of (partial) Latin squares into squares of composite order
with many mutually orthogonal mates, and the MOLS-count amplification
MOLS(n^2) >= MOLS(n) + 2.

square_embed hosts one order-n square inside an order-n^2 square with t
mates built from a MOLS(n) set; pair_embed hosts an orthogonal pair with
t mates built from two pairs and a MOLS(n) set.  Composite coordinates
and symbols are flattened block * n + offset throughout, so outputs are
byte-reproducible.  Every construction re-verifies its output before
returning: a bug can never ship an uncertified set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import kernels
from .completion import evans_complete, idempotent_complete
from .core import (
    EmbeddingWitness,
    GRID_DTYPE,
    GridFormatError,
    LatinSquare,
    MAX_COMPOSITE_ORDER,
    MolsSet,
    PartialLatinSquare,
    UncertifiedInputError,
    are_orthogonal,
    permute_rows,
    rename_symbols,
)
from .fields import gen_mols_prime_power, macneish_product


@dataclass(frozen=True)
class SquareEmbedResult:
    """Host of order n^2, its mates, and the witness locating the embedded
    square (or the partial square it completes) in block (0, 0)."""

    host: LatinSquare
    mates: tuple[LatinSquare, ...]
    witness: EmbeddingWitness
    notes: tuple[str, ...] = ()
    certified: bool = True

    def mols(self) -> MolsSet:
        return MolsSet([self.host, *self.mates], certified=self.certified)


@dataclass(frozen=True)
class PairEmbedInputs:
    """Inputs for pair_embed: two orthogonal pairs and a MOLS set.

    The second pair (d1, d2) lands in block (0, 0) of the two output
    hosts; f is any bijection of [0, t) pairing the mate factors.
    """

    a1: LatinSquare
    a2: LatinSquare
    d1: LatinSquare
    d2: LatinSquare
    cset: MolsSet
    f: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.a1.order
        for name, sq in (("a2", self.a2), ("d1", self.d1), ("d2", self.d2)):
            if sq.order != n:
                raise GridFormatError(f"{name} has order {sq.order}, expected {n}")
        if self.cset.order != n:
            raise GridFormatError(f"mate set has order {self.cset.order}, expected {n}")
        if not self.cset.certified:
            raise UncertifiedInputError("pair_embed requires a certified MOLS set")
        for name, pair in (("a1/a2", (self.a1, self.a2)), ("d1/d2", (self.d1, self.d2))):
            if not are_orthogonal(*pair).ok:
                raise UncertifiedInputError(f"input pair {name} is not orthogonal")
        t = len(self.cset)
        f = self.f if self.f else tuple(range(t))
        if sorted(f) != list(range(t)):
            raise GridFormatError(f"f is not a bijection of [0, {t})")
        object.__setattr__(self, "f", tuple(f))


@dataclass(frozen=True)
class PairEmbedResult:
    mols: MolsSet  # host1, host2, then the t mates, certified
    witness_d1: EmbeddingWitness
    witness_d2: EmbeddingWitness


def _check_composite_order(n: int) -> None:
    if n * n > MAX_COMPOSITE_ORDER:
        raise GridFormatError(
            f"host order {n * n} exceeds the supported maximum {MAX_COMPOSITE_ORDER}"
        )


def square_embed(base: LatinSquare, mols: MolsSet, verify: bool = True) -> SquareEmbedResult:
    """Embed an order-n Latin square in an order-n^2 host with t mates.

    With F the input set and F1 its first square, the host holds
    composite (F1(p,q), base(F1(p,r), c)) at cell ((p,r),(q,c)) and mate
    k holds (Fk(F1(p,r), q), Fk(F1(p,q), c)).  The t+1 outputs are
    mutually orthogonal; the witness locates base inside block (0, 0),
    reducing to the identity when F1 is in standard form.  verify=False
    skips the output certification pass (timing experiments only) and
    marks the result uncertified.
    """
    n = base.order
    if mols.order != n:
        raise GridFormatError(f"MOLS order {mols.order} does not match square order {n}")
    if not mols.certified:
        raise UncertifiedInputError("square_embed requires a certified MOLS set")
    _check_composite_order(n)
    stack = np.ascontiguousarray(np.stack(mols.grids()))
    host_grid, mate_grids = kernels.fill_square_embed(base.grid, stack)
    host = LatinSquare(host_grid)
    mates = tuple(LatinSquare(g) for g in mate_grids)
    if verify:
        MolsSet.certify([host, *mates])  # re-verify, never assume
    f1 = mols[0].grid
    row_map = tuple(int(np.nonzero(f1[0] == r)[0][0]) for r in range(n))
    sym_base = int(f1[0, 0]) * n
    witness = EmbeddingWitness(
        rows=row_map,
        cols=tuple(range(n)),
        syms=tuple(sym_base + e for e in range(n)),
    )
    return SquareEmbedResult(host, mates, witness, certified=verify)


def host_order_for(n: int) -> int:
    """The embedding side m: the unique power of two with m > 2n >= m/2."""
    m = 1
    while m <= 2 * n:
        m *= 2
    return m


def embed_pls_with_mates(
    pls: PartialLatinSquare, idempotent: bool = False, verify: bool = True
) -> SquareEmbedResult:
    """Full pipeline: complete a PLS(n) at the power-of-two order m with
    m > 2n >= m/2, build the order-m field MOLS, and embed.

    The host has order m^2 <= 16 n^2 and exactly m - 1 >= 2n certified
    mates; the witness composes the corner embedding with the block-(0,0)
    location, giving identity maps into [0, n).  With the idempotent
    flag, the completion is idempotent (valid since m >= 2n + 1) and the
    host is reshaped to be idempotent while keeping block (0, 0) intact.
    """
    n = pls.order
    m = host_order_for(n)
    _check_composite_order(m)
    completed = idempotent_complete(pls, m) if idempotent else evans_complete(pls, m)
    mols = gen_mols_prime_power(m)
    # With the idempotent flag only the final, reshaped set is shipped, so
    # the intermediate embedding skips its verification pass.
    result = square_embed(completed, mols, verify=verify and not idempotent)
    witness = EmbeddingWitness.identity(n)
    notes = result.notes
    if n < 3:
        notes = notes + (f"order {n} is below the n >= 3 regime of the sizing analysis",)
    result = SquareEmbedResult(result.host, result.mates, witness, notes, result.certified)
    if idempotent:
        result = make_idempotent(result, verify=verify)
    return result


def make_idempotent(result: SquareEmbedResult, verify: bool = True) -> SquareEmbedResult:
    """Reshape an embedding so the host is idempotent, preserving block
    (0, 0) and certification.

    Within each row block p the rows are permuted so the cells holding
    second coordinate r land on the diagonal, then symbols (a, b) are
    renamed to (pi^-1(a), b) where pi(p) is the constant first coordinate
    of diagonal block p.  The same row permutation and renaming are
    applied to every mate.  Block 0 needs the identity permutation and
    renaming exactly when the embedded square is idempotent, which is
    required; pi must be a permutation, which holds when the generating
    square's main diagonal is a transversal.  Applying the transform
    twice equals applying it once.
    """
    host = result.host
    big = host.order
    m = isqrt(big)
    if m * m != big:
        raise GridFormatError(f"host order {big} is not a square")
    first = host.grid // m
    second = host.grid % m
    pi = np.array([first[p * m, p * m] for p in range(m)], dtype=GRID_DTYPE)
    if len(set(pi.tolist())) != m:
        raise GridFormatError(
            "diagonal blocks repeat a first coordinate: the generating square's "
            "main diagonal is not a transversal"
        )
    if not np.array_equal(np.diagonal(host.grid)[:m], np.arange(m)):
        raise GridFormatError("embedded square is not idempotent")

    row_perm = np.empty(big, dtype=GRID_DTYPE)
    idx = np.arange(m)
    for p in range(m):
        block = second[p * m : (p + 1) * m, p * m : (p + 1) * m]
        sigma = np.argmax(block == idx[None, :], axis=0)
        if not np.array_equal(block[sigma, idx], idx):
            raise GridFormatError("block diagonal extraction failed: host is malformed")
        row_perm[p * m : (p + 1) * m] = p * m + sigma
    inv_pi = np.empty(m, dtype=GRID_DTYPE)
    inv_pi[pi] = np.arange(m, dtype=GRID_DTYPE)
    renaming = (inv_pi[:, None] * m + np.arange(m)[None, :]).ravel().astype(GRID_DTYPE)

    def reshape(sq: LatinSquare) -> LatinSquare:
        return rename_symbols(permute_rows(sq, row_perm), renaming)

    new_host = reshape(host)
    new_mates = tuple(reshape(x) for x in result.mates)
    if verify:
        MolsSet.certify([new_host, *new_mates])
    witness = EmbeddingWitness.identity(len(result.witness.rows))
    # certified either by the fresh verification or carried over: the
    # shared row permutation and per-square renaming preserve orthogonality
    return SquareEmbedResult(
        new_host, new_mates, witness, result.notes, verify or result.certified
    )


def pair_embed(inputs: PairEmbedInputs, verify: bool = True) -> PairEmbedResult:
    """Embed an orthogonal pair in a set of t + 2 MOLS of order n^2.

    The two hosts are the direct products A1 x D1 and A2 x D2; mate i
    holds composite (Ci(p, D1(r,c)), C_f(i)(q, D2(r,c))) at cell
    ((p,r),(q,c)).  Block (0, 0) of host 1 is a symbol-renamed copy of
    D1 (symbols shifted by A1(0,0) * n), and likewise for host 2.
    """
    n = inputs.a1.order
    _check_composite_order(n)
    stack = np.ascontiguousarray(np.stack(inputs.cset.grids()))
    fmap = np.asarray(inputs.f, dtype=np.int64)
    b1, b2, mate_grids = kernels.fill_pair_embed(
        inputs.a1.grid, inputs.a2.grid, inputs.d1.grid, inputs.d2.grid, stack, fmap
    )
    squares = [LatinSquare(b1), LatinSquare(b2)] + [LatinSquare(g) for g in mate_grids]
    mols = MolsSet.certify(squares) if verify else MolsSet(squares)
    ident = tuple(range(n))
    w1 = EmbeddingWitness(
        ident, ident, tuple(int(inputs.a1.grid[0, 0]) * n + e for e in range(n))
    )
    w2 = EmbeddingWitness(
        ident, ident, tuple(int(inputs.a2.grid[0, 0]) * n + e for e in range(n))
    )
    return PairEmbedResult(mols, w1, w2)


def amplify(mols: MolsSet, verify: bool = True) -> MolsSet:
    """MOLS(n^2) >= MOLS(n) + 2: from t >= 2 squares of order n, build
    t + 2 of order n^2 by reusing the first two squares as both input
    pairs of pair_embed (sound: the construction only needs the pairwise
    orthogonality of its inputs)."""
    if len(mols) < 2:
        raise GridFormatError(f"amplification needs at least 2 squares, got {len(mols)}")
    if not mols.certified:
        raise UncertifiedInputError("amplify requires a certified MOLS set")
    inputs = PairEmbedInputs(mols[0], mols[1], mols[0], mols[1], mols)
    return pair_embed(inputs, verify=verify).mols


def fallback_mols24() -> MolsSet:
    """The bundled order-24 set: the MacNeish product of the order-8 and
    order-3 field sets (2 squares)."""
    return macneish_product(gen_mols_prime_power(8), gen_mols_prime_power(3))


def build_576(mols24: MolsSet | None = None, verify: bool = True) -> MolsSet:
    """MOLS(576) via amplification of an order-24 set.

    With a supplied set of k certified MOLS(24) the result has k + 2
    squares (7 published squares give 9); without one, the bundled
    fallback yields 4.
    """
    if mols24 is None:
        mols24 = fallback_mols24()
    else:
        if mols24.order != 24:
            raise GridFormatError(f"expected order 24, got {mols24.order}")
        mols24 = MolsSet.certify(list(mols24))
    return amplify(mols24, verify=verify)
