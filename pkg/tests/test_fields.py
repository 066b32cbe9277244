import itertools
import random

import numpy as np
import pytest

import molskit as mk
from molskit.fields import (
    MODULUS_TABLE,
    is_irreducible,
    mols_multiplier_order,
    modulus_terms,
)
from helpers import brute_orthogonal


def gf8_mul_oracle(a: int, b: int) -> int:
    """Independent GF(8) multiply: carry-less product reduced by x^3+x+1."""
    prod = 0
    for i in range(3):
        if (b >> i) & 1:
            prod ^= a << i
    for i in range(5, 2, -1):
        if (prod >> i) & 1:
            prod ^= 0b1011 << (i - 3)
    return prod


class TestFiniteField:
    def test_gf2_is_xor_and_and(self):
        f = mk.FiniteField(2, 1)
        for a, b in itertools.product(range(2), repeat=2):
            assert f.add(a, b) == a ^ b
            assert f.mul(a, b) == a & b

    def test_gf8_multiplication_against_oracle(self):
        f = mk.FiniteField(2, 3)
        assert f.modulus == 11  # x^3 + x + 1
        for a, b in itertools.product(range(8), repeat=2):
            assert f.mul(a, b) == gf8_mul_oracle(a, b)
        assert f.mul(2, 4) == 3  # x * x^2 = x^3 = x + 1

    def test_gf8_inverse_exhaustive(self):
        f = mk.FiniteField(2, 3)
        # oracle: the exhaustive inverse table
        table = {a: next(b for b in range(1, 8) if gf8_mul_oracle(a, b) == 1) for a in range(1, 8)}
        for a in range(1, 8):
            assert f.inv(a) == table[a]
        assert f.inv(2) == 5  # x has inverse x^2 + 1

    def test_non_prime_rejected(self):
        with pytest.raises(ValueError):
            mk.FiniteField(4, 1)

    def test_gf3_add(self):
        assert mk.FiniteField(3).add(1, 2) == 0

    def test_gf5_inverse(self):
        assert mk.FiniteField(5).inv(2) == 3  # 2 * 3 = 6 = 1 (mod 5)

    def test_inv_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            mk.FiniteField(2, 3).inv(0)

    def test_outside_table_without_modulus(self):
        with pytest.raises(ValueError):
            mk.FiniteField(29, 2)

    def test_reducible_user_modulus_rejected(self):
        # x^2 (encoding 4) is reducible over GF(2)
        with pytest.raises(ValueError):
            mk.FiniteField(2, 2, modulus=4)

    def test_user_modulus_accepted(self):
        # x^2 + x + 2 is irreducible over GF(3) (no roots)
        f = mk.FiniteField(3, 2, modulus=9 + 3 + 2)
        assert f.mul(1, 1) == 1

    @pytest.mark.parametrize("p,k", sorted(MODULUS_TABLE))
    def test_table_entries_irreducible(self, p, k):
        if k > 1:
            assert is_irreducible(MODULUS_TABLE[(p, k)], p, k)

    def test_field_axioms_exhaustive_small(self):
        # associativity, commutativity, distributivity on all triples, q <= 16
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16):
            p, k = mk.prime_power_decompose(q)
            f = mk.FiniteField(p, k)
            elems = range(q)
            for a, b, c in itertools.product(elems, repeat=3):
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            for a, b in itertools.product(elems, repeat=2):
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
            for a in range(1, q):
                assert f.mul(a, f.inv(a)) == 1

    def test_field_axioms_sampled_large(self):
        rng = random.Random(19)
        for p, k in ((2, 8), (2, 12), (2, 16), (3, 4), (5, 2), (7, 2)):
            f = mk.FiniteField(p, k)
            for _ in range(60):
                a, b, c = (rng.randrange(f.order) for _ in range(3))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            for _ in range(20):
                a = rng.randrange(1, f.order)
                assert f.mul(a, f.inv(a)) == 1

    def test_modulus_terms(self):
        assert modulus_terms(11, 2) == "x^3 + x + 1"
        assert modulus_terms(283, 2) == "x^8 + x^4 + x^3 + x + 1"


class TestGenMols:
    def test_q3_exact_squares(self):
        mols = mk.gen_mols_prime_power(3)
        assert mols[0].grid.tolist() == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
        assert mols[1].grid.tolist() == [[0, 1, 2], [2, 0, 1], [1, 2, 0]]
        assert np.diagonal(mols[0].grid).tolist() == [0, 2, 1]
        assert brute_orthogonal(mols[0], mols[1])

    def test_q2_single_square(self):
        mols = mk.gen_mols_prime_power(2)
        assert len(mols) == 1
        assert mols[0].grid.tolist() == [[0, 1], [1, 0]]

    def test_q8_standard_form_certified(self):
        mols = mk.gen_mols_prime_power(8)
        assert len(mols) == 7 and mols.certified
        for sq in mols:
            assert sq.grid[0].tolist() == list(range(8))

    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
    def test_all_table_orders(self, q):
        mols = mk.gen_mols_prime_power(q)
        assert len(mols) == q - 1
        assert mk.verify_mols(mols).ok
        for sq in mols:
            assert sq.grid[0].tolist() == list(range(q))

    @pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
    def test_first_square_diagonal_transversal(self, q):
        f1 = mk.gen_mols_prime_power(q)[0]
        diag = mk.Transversal(tuple((i, i, int(f1.grid[i, i])) for i in range(q)))
        assert mk.is_transversal(f1, diag)
        assert f1.grid[0, 0] == 0  # transversal through (0, 0, 0)

    def test_char2_multiplier_order_skips_one(self):
        # in characteristic 2, a = 1 has a + 1 = 0, so the first square
        # uses a = 2 and a = 1 follows
        f = mk.FiniteField(2, 2)
        assert mols_multiplier_order(f) == [2, 1, 3]

    def test_q1_rejected(self):
        with pytest.raises(ValueError):
            mk.gen_mols_prime_power(1)

    def test_non_prime_power_rejected(self):
        with pytest.raises(ValueError):
            mk.gen_mols_prime_power(6)


class TestMacneish:
    def test_mols24(self):
        mols24 = mk.macneish_product(mk.gen_mols_prime_power(8), mk.gen_mols_prime_power(3))
        assert len(mols24) == 2 and mols24.order == 24 and mols24.certified

    def test_singletons(self):
        a = mk.gen_mols_prime_power(2)
        prod = mk.macneish_product(a, a)
        assert len(prod) == 1 and prod.order == 4

    def test_identity_factor(self):
        one = mk.MolsSet.certify([mk.LatinSquare([[0]])])
        b = mk.gen_mols_prime_power(3)
        prod = mk.macneish_product(one, b)
        assert len(prod) == 1
        assert np.array_equal(prod[0].grid, b[0].grid)

    def test_size_is_min(self):
        a = mk.gen_mols_prime_power(5)  # 4 squares
        b = mk.gen_mols_prime_power(4)  # 3 squares
        assert len(mk.macneish_product(a, b)) == 3

    def test_certification_exhaustive_small_orders(self):
        for qa, qb in itertools.product((2, 3, 4, 5), repeat=2):
            prod = mk.macneish_product(
                mk.gen_mols_prime_power(qa), mk.gen_mols_prime_power(qb)
            )
            assert prod.certified

    def test_uncertified_rejected(self):
        a = mk.gen_mols_prime_power(3, verify=False)
        b = mk.gen_mols_prime_power(3)
        with pytest.raises(mk.UncertifiedInputError):
            mk.macneish_product(a, b)


def test_prime_power_decompose():
    assert mk.prime_power_decompose(8) == (2, 3)
    assert mk.prime_power_decompose(9) == (3, 2)
    assert mk.prime_power_decompose(23) == (23, 1)
    for bad in (1, 6, 12, 24):
        with pytest.raises(ValueError):
            mk.prime_power_decompose(bad)
