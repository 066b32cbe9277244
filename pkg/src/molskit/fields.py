"""GF(p^k) arithmetic and MOLS generation for prime-power orders.

Field elements are integers in [0, p^k) whose base-p digits are the
polynomial coefficients (little-endian): value = sum c_i * p^i.  Each
(p, k) uses a fixed modulus from MODULUS_TABLE so generated squares are
bit-exact across runs and implementations.  The table rule: the monic
irreducible polynomial of degree k over GF(p) with the smallest integer
encoding.  For k = 1 the entry is the polynomial x (encoding p) and
arithmetic is plain mod p.
"""

from __future__ import annotations

from .core import LatinSquare, MolsSet, UncertifiedInputError, direct_product

# (p, k) -> integer encoding of the modulus polynomial.
MODULUS_TABLE: dict[tuple[int, int], int] = {
    (2, 1): 2,        # x
    (2, 2): 7,        # x^2 + x + 1
    (2, 3): 11,       # x^3 + x + 1
    (2, 4): 19,       # x^4 + x + 1
    (2, 5): 37,       # x^5 + x^2 + 1
    (2, 6): 67,       # x^6 + x + 1
    (2, 7): 131,      # x^7 + x + 1
    (2, 8): 283,      # x^8 + x^4 + x^3 + x + 1
    (2, 9): 515,      # x^9 + x + 1
    (2, 10): 1033,    # x^10 + x^3 + 1
    (2, 11): 2053,    # x^11 + x^2 + 1
    (2, 12): 4105,    # x^12 + x^3 + 1
    (2, 13): 8219,    # x^13 + x^4 + x^3 + x + 1
    (2, 14): 16417,   # x^14 + x^5 + 1
    (2, 15): 32771,   # x^15 + x + 1
    (2, 16): 65579,   # x^16 + x^5 + x^3 + x + 1
    (3, 1): 3,        # x
    (3, 2): 10,       # x^2 + 1
    (3, 3): 34,       # x^3 + 2x + 1
    (3, 4): 86,       # x^4 + x + 2
    (5, 1): 5,        # x
    (5, 2): 27,       # x^2 + 2
    (7, 1): 7,        # x
    (7, 2): 50,       # x^2 + 1
    (11, 1): 11,
    (13, 1): 13,
    (17, 1): 17,
    (19, 1): 19,
    (23, 1): 23,
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p^k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _enc_to_coeffs(value: int, p: int) -> list[int]:
    out = []
    while value:
        value, digit = divmod(value, p)
        out.append(digit)
    return out


def _coeffs_to_enc(coeffs: list[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - db, 0)
    while _trim(a) and len(a) - 1 >= db:
        shift = len(a) - 1 - db
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
    return _trim(quot), a


def _poly_ext_gcd(a: list[int], b: list[int], p: int):
    """Extended Euclid over GF(p)[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _trim(r1):
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    return r0, s0, t0


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _trim(out)


def is_irreducible(modulus: int, p: int, k: int) -> bool:
    """Trial factorization over GF(p); feasible for k <= 20."""
    f = _enc_to_coeffs(modulus, p)
    if len(f) - 1 != k:
        return False
    for d in range(1, k // 2 + 1):
        for enc in range(p**d, 2 * p**d):
            g = _enc_to_coeffs(enc, p)
            if g[-1] != 1:
                continue
            _, rem = _poly_divmod(f[:], g, p)
            if not rem:
                return False
    return True


def modulus_terms(modulus: int, p: int) -> str:
    """Human-readable polynomial, highest degree first."""
    coeffs = _enc_to_coeffs(modulus, p)
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}x^{i}" if i > 1 else f"{head}x")
    return " + ".join(parts) if parts else "0"


class FiniteField:
    """Arithmetic context for GF(p^k) with a fixed irreducible modulus."""

    __slots__ = ("p", "k", "order", "modulus", "_mod_coeffs")

    def __init__(self, p: int, k: int = 1, modulus: int | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            try:
                modulus = MODULUS_TABLE[(p, k)]
            except KeyError:
                raise ValueError(
                    f"no built-in modulus for GF({p}^{k}); supply one explicitly"
                ) from None
        if k > 1 and not is_irreducible(modulus, p, k):
            raise ValueError(
                f"modulus {modulus} ({modulus_terms(modulus, p)}) is reducible over GF({p})"
            )
        self.p = p
        self.k = k
        self.order = p**k
        self.modulus = modulus
        self._mod_coeffs = _enc_to_coeffs(modulus, p)

    def __repr__(self) -> str:
        return f"FiniteField(GF({self.p}^{self.k}), modulus={self.modulus})"

    def _check(self, *elems: int) -> None:
        for a in elems:
            if not (0 <= a < self.order):
                raise ValueError(f"{a} is not an element of GF({self.order})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        out, mult = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        if self.p == 2:
            return a
        p = self.p
        out, mult = 0, 1
        while a:
            a, d = divmod(a, p)
            out += (-d % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.k == 1:
            return a * b % self.p
        if self.p == 2:
            return self._mul2(a, b)
        prod = _poly_mul(_enc_to_coeffs(a, self.p), _enc_to_coeffs(b, self.p), self.p)
        _, rem = _poly_divmod(prod, self._mod_coeffs, self.p)
        rem += [0] * (self.k - len(rem))
        return _coeffs_to_enc(rem, self.p)

    def _mul2(self, a: int, b: int) -> int:
        mod, k = self.modulus, self.k
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if (a >> k) & 1:
                a ^= mod
        return out

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.k == 1:
            return pow(a, -1, self.p)
        g, s, _ = _poly_ext_gcd(_enc_to_coeffs(a, self.p), self._mod_coeffs, self.p)
        # g is a nonzero constant; scale s by its inverse
        scale = pow(g[0], -1, self.p)
        s = [c * scale % self.p for c in s]
        _, rem = _poly_divmod(s, self._mod_coeffs, self.p)
        rem += [0] * (self.k - len(rem))
        return _coeffs_to_enc(rem, self.p)

    @property
    def elements(self) -> range:
        return range(self.order)


def mols_multiplier_order(field: FiniteField) -> list[int]:
    """Multiplier sequence for gen_mols_prime_power.

    The first multiplier a satisfies a + 1 != 0 (smallest such encoding),
    making the first square's main diagonal (a+1)*x a transversal through
    (0, 0, 0).  Remaining nonzero multipliers follow in increasing
    encoding.  GF(2) has no valid choice (1 + 1 = 0); the requirement is
    waived there and the single multiplier 1 is used.
    """
    q = field.order
    if q == 2:
        return [1]
    first = next(a for a in range(1, q) if field.add(a, 1) != 0)
    return [first] + [a for a in range(1, q) if a != first]


def gen_mols_prime_power(q: int, modulus: int | None = None, verify: bool = True) -> MolsSet:
    """q - 1 mutually orthogonal Latin squares of prime-power order q.

    Square for multiplier a has cell (x, y) = a*x + y in GF(q), so every
    square is in standard form (row 0 reads 0..q-1).  The output is
    certified before return unless verify=False.
    """
    p, k = prime_power_decompose(q)
    field = FiniteField(p, k, modulus)
    squares = []
    for a in mols_multiplier_order(field):
        rows = []
        for x in range(q):
            ax = field.mul(a, x)
            rows.append([field.add(ax, y) for y in range(q)])
        squares.append(LatinSquare(rows))
    return MolsSet.certify(squares) if verify else MolsSet(squares)


def macneish_product(a: MolsSet, b: MolsSet, verify: bool = True) -> MolsSet:
    """Componentwise direct products: min(|a|, |b|) squares of order
    order(a) * order(b), certified before return."""
    if not (a.certified and b.certified):
        raise UncertifiedInputError("macneish_product requires certified input sets")
    size = min(len(a), len(b))
    made = [direct_product(a[i], b[i]) for i in range(size)]
    return MolsSet.certify(made) if verify else MolsSet(made)
