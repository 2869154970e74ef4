"""Arithmetic in GF(2^m) for 1 <= m <= 16.

Field elements are plain ints in [0, 2^m); bit i is the coefficient of
z^i in the polynomial basis {1, z, ..., z^(m-1)}.  Addition is XOR.
A GF2m context fixes the reduction modulus and carries the lookup
tables the rest of the package runs on.  All bit packing elsewhere
(parity-check columns, syndrome regrouping) uses this basis, LSB first.

Moduli used by default (lexicographically smallest irreducible
polynomial of each degree, encoded with the constant term in bit 0):

    m=1 : x + 1                 -> 0x3
    m=2 : x^2 + x + 1           -> 0x7
    m=3 : x^3 + x + 1           -> 0xb
    m=4 : x^4 + x + 1           -> 0x13
    m=8 : x^8 + x^4+x^3+x+1     -> 0x11b
    ... up to m=16
"""

from __future__ import annotations

from typing import Dict, Iterator, Optional, Tuple


class ZeroInverse(ZeroDivisionError):
    """Raised when inverting the zero element."""


class FieldMismatch(ValueError):
    """Raised when operands belong to different field contexts."""


# Lexicographically smallest irreducible polynomial per extension degree.
DEFAULT_MODULI: Dict[int, int] = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


def _f2_polymod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _f2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _f2_polymod(a, b)
    return a


def _f2_mulmod(a: int, b: int, mod: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a.bit_length() == mod.bit_length():
            a ^= mod
    return r


def is_irreducible_f2(f: int, m: int) -> bool:
    """Exact irreducibility test for a degree-m polynomial over F2.

    Checks that f has no irreducible factor of degree <= m/2 by walking
    h = x^(2^i) mod f and testing gcd(h + x, f).
    """
    if f.bit_length() - 1 != m:
        return False
    if m == 1:
        return True
    h = 2
    for _ in range(m // 2):
        h = _f2_mulmod(h, h, f)
        if _f2_gcd(h ^ 2, f).bit_length() > 1:
            return False
    return True


def _factor_small(n: int) -> Tuple[int, ...]:
    """Prime factors of n (n <= 2^16), by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


class GF2m:
    """Field context for GF(2^m); immutable after construction and safe
    to share, all operations are pure.

    Parameters
    ----------
    m : int
        Extension degree, 1 <= m <= 16.
    modulus : int, optional
        Irreducible degree-m polynomial over F2 as an (m+1)-bit int with
        bits 0 and m set.  Defaults to the table above.
    """

    __slots__ = (
        "m", "modulus", "order", "_exp", "_log", "_sqr", "_sqrt", "_artin",
    )

    def __init__(self, m: int, modulus: Optional[int] = None) -> None:
        if not 1 <= m <= 16:
            raise ValueError(f"extension degree m={m} out of range [1, 16]")
        if modulus is None:
            modulus = DEFAULT_MODULI[m]
        if not (modulus >> m) & 1 or not modulus & 1 or modulus.bit_length() != m + 1:
            raise ValueError(f"modulus 0x{modulus:x} is not a degree-{m} polynomial with nonzero constant term")
        if not is_irreducible_f2(modulus, m):
            raise ValueError(f"modulus 0x{modulus:x} is reducible over F2")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._build_tables()

    # ------------------------------------------------------------------
    # table construction
    # ------------------------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Carry-less multiply followed by reduction; table-free."""
        p = 0
        mod = self.modulus
        top = self.order
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return p

    def _find_generator(self) -> int:
        n = self.order - 1
        primes = _factor_small(n) if n > 1 else ()

        def pow_raw(a: int, k: int) -> int:
            r = 1
            while k:
                if k & 1:
                    r = self._mul_raw(r, a)
                a = self._mul_raw(a, a)
                k >>= 1
            return r

        for cand in range(2, self.order):
            if all(pow_raw(cand, n // p) != 1 for p in primes):
                return cand
        return 1  # m == 1

    def _build_tables(self) -> None:
        order = self.order
        exp = [0] * (2 * order)
        log = [0] * order
        gen = self._find_generator()
        v = 1
        for i in range(order - 1):
            exp[i] = v
            log[v] = i
            v = self._mul_raw(v, gen)
        for i in range(order - 1, 2 * order):
            exp[i] = exp[i - (order - 1)]
        self._exp = exp
        self._log = log
        self._sqr = [self.mul(a, a) for a in range(order)]
        # square roots: sqrt(a) = a^(2^(m-1)); squaring is a bijection
        sqrt = [0] * order
        for a in range(order):
            sqrt[self._sqr[a]] = a
        self._sqrt = sqrt
        # solutions of y^2 + y = d, one representative per solvable d
        artin: list = [None] * order
        for y in range(order):
            d = self._sqr[y] ^ y
            if artin[d] is None:
                artin[d] = y
        self._artin = artin

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        """Characteristic-2 addition (XOR)."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self._exp[self.order - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        """a^k for k >= 0, with 0^0 = 1."""
        if k < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def sqr(self, a: int) -> int:
        return self._sqr[a]

    def sqrt(self, a: int) -> int:
        """The unique b with b^2 = a (Frobenius is bijective)."""
        return self._sqrt[a]

    def quad_roots_monic(self, s: int, c: int) -> Tuple[int, ...]:
        """Roots in GF(2^m) of x^2 + s*x + c.

        Returns () when there is no root, a 1-tuple for the double root
        (s = 0), and a 2-tuple of distinct roots otherwise.
        """
        if s == 0:
            return (self._sqrt[c],)
        d = self.mul(c, self.inv(self._sqr[s]))
        y = self._artin[d]
        if y is None:
            return ()
        r = self.mul(s, y)
        return (r, r ^ s)

    # ------------------------------------------------------------------
    # misc
    # ------------------------------------------------------------------

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and self.m == other.m and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, modulus=0x{self.modulus:x})"

    def to_json(self) -> Dict[str, int]:
        return {"m": self.m, "modulus": self.modulus}

    @classmethod
    def from_json(cls, obj: Dict[str, int]) -> "GF2m":
        return cls(obj["m"], obj["modulus"])


def check_same_field(a: GF2m, b: GF2m) -> None:
    if a != b:
        raise FieldMismatch(f"field contexts differ: {a!r} vs {b!r}")


# validate the shipped table once at import
for _m, _mod in DEFAULT_MODULI.items():
    if not is_irreducible_f2(_mod, _m):  # pragma: no cover
        raise AssertionError(f"modulus table corrupt at m={_m}")
