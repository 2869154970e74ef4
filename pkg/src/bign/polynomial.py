"""Univariate polynomials over GF(2^m).

Dense coefficient representation, index = exponent, no trailing zeros.
The zero polynomial has an empty coefficient list and degree -1 (the
"minus infinity" marker).  Degrees stay small here (Goppa polynomials,
error locators, codeword sigma sums), so schoolbook arithmetic is fine.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .field import GF2m, check_same_field


class DivisionByZeroPoly(ZeroDivisionError):
    """Division by the zero polynomial."""


class BothZero(ValueError):
    """gcd(0, 0) is undefined."""


class NotInvertible(ValueError):
    """No inverse modulo the given polynomial."""


class Poly:
    """Polynomial over a GF2m context; value semantics."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF2m, coeffs: Iterable[int] = ()) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = cs

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field: GF2m) -> "Poly":
        return cls(field)

    @classmethod
    def one(cls, field: GF2m) -> "Poly":
        return cls(field, [1])

    @classmethod
    def x(cls, field: GF2m) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def monomial(cls, field: GF2m, deg: int, coeff: int = 1) -> "Poly":
        if coeff == 0:
            return cls(field)
        return cls(field, [0] * deg + [coeff])

    @classmethod
    def from_roots(cls, field: GF2m, roots: Sequence[int]) -> "Poly":
        """Monic product of (x - r) over the given roots."""
        mul = field.mul
        cs = [1]
        for r in roots:
            cs.append(0)
            for i in range(len(cs) - 1, 0, -1):
                cs[i] = cs[i - 1] ^ mul(r, cs[i])
            cs[0] = mul(r, cs[0])
        return cls(field, cs)

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"Poly({self.coeffs})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        check_same_field(self.field, other.field)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] ^= c
        return Poly(self.field, out)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "Poly") -> "Poly":
        check_same_field(self.field, other.field)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        mul = self.field.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] ^= mul(ca, cb)
        return Poly(self.field, out)

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly(self.field)
        mul = self.field.mul
        return Poly(self.field, [mul(c, a) for a in self.coeffs])

    def monic(self) -> "Poly":
        if self.is_zero or self.leading == 1:
            return self
        return self.scale(self.field.inv(self.leading))

    def divrem(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        check_same_field(self.field, other.field)
        if other.is_zero:
            raise DivisionByZeroPoly("polynomial division by zero")
        field = self.field
        mul = field.mul
        db = other.degree
        inv_lead = field.inv(other.leading)
        rem = list(self.coeffs)
        if len(rem) - 1 < db:
            return Poly(field), Poly(field, rem)
        quot = [0] * (len(rem) - db)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = mul(c, inv_lead)
            quot[i - db] = q
            off = i - db
            for j in range(db + 1):
                if b[j]:
                    rem[off + j] ^= mul(q, b[j])
        return Poly(field, quot), Poly(field, rem)

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divrem(other)[0]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor; gcd(f, 0) = monic(f)."""
        check_same_field(self.field, other.field)
        a, b = self, other
        if a.is_zero and b.is_zero:
            raise BothZero("gcd(0, 0) is undefined")
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def eval(self, a: int) -> int:
        """Horner evaluation."""
        mul = self.field.mul
        acc = 0
        for c in reversed(self.coeffs):
            acc = mul(acc, a) ^ c
        return acc

    def derivative(self) -> "Poly":
        """Formal derivative; even-exponent terms vanish in characteristic 2."""
        cs = self.coeffs
        return Poly(self.field, [cs[i] if i % 2 == 1 else 0 for i in range(1, len(cs))])

    def to_json(self) -> List[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, field: GF2m, coeffs: Sequence[int]) -> "Poly":
        return cls(field, coeffs)


def poly_mulmod(f: Poly, h: Poly, g: Poly) -> Poly:
    return (f * h) % g


def poly_sqrmod(f: Poly, g: Poly) -> Poly:
    """f^2 mod g; squaring is linear in characteristic 2."""
    field = f.field
    sqr = field._sqr
    cs = f.coeffs
    if not cs:
        return f
    out = [0] * (2 * len(cs) - 1)
    for i, c in enumerate(cs):
        out[2 * i] = sqr[c]
    return Poly(field, out) % g


def poly_powmod(f: Poly, e: int, g: Poly) -> Poly:
    """f^e mod g by square-and-multiply."""
    if e < 0:
        raise ValueError("negative exponent")
    result = Poly.one(f.field)
    base = f % g
    while e:
        if e & 1:
            result = (result * base) % g
        e >>= 1
        if e:
            base = poly_sqrmod(base, g)
    return result


def poly_modinv(f: Poly, g: Poly) -> Poly:
    """u with f*u = 1 (mod g), via the extended Euclidean algorithm."""
    check_same_field(f.field, g.field)
    field = f.field
    r_prev, r_cur = g, f % g
    u_prev, u_cur = Poly.zero(field), Poly.one(field)
    if r_cur.is_zero:
        raise NotInvertible("f is 0 modulo g")
    while not r_cur.is_zero:
        q, rem = r_prev.divrem(r_cur)
        r_prev, r_cur = r_cur, rem
        u_prev, u_cur = u_cur, u_prev + q * u_cur
    if r_prev.degree != 0:
        raise NotInvertible("gcd(f, g) is not constant")
    return u_prev.scale(field.inv(r_prev.coeffs[0])) % g


def poly_sqrt_mod(w: Poly, g: Poly) -> Poly:
    """s with s^2 = w (mod g), for irreducible g of degree t.

    Computed as w^(2^(mt-1)) mod g, i.e. mt-1 squarings in the field
    F_{2^m}[x]/(g) of 2^(mt) elements.
    """
    mt = w.field.m * g.degree
    s = w % g
    for _ in range(mt - 1):
        s = poly_sqrmod(s, g)
    return s


def is_irreducible(f: Poly) -> bool:
    """Exact irreducibility test over GF(2^m).

    Walks h = x^(q^i) mod f for i = 1..deg(f)/2 (q = 2^m) and rejects as
    soon as gcd(h + x, f) is nontrivial; a reducible f always has an
    irreducible factor of degree <= deg(f)/2.
    """
    t = f.degree
    if t < 1:
        return False
    if t == 1:
        return True
    if f.coeffs[0] == 0:  # divisible by x
        return False
    field = f.field
    x = Poly.x(field)
    h = x % f
    for _ in range(t // 2):
        for _ in range(field.m):
            h = poly_sqrmod(h, f)
        if (h + x).gcd(f).degree > 0:
            return False
    return True


def random_irreducible(t: int, field: GF2m, rng) -> Poly:
    """Random monic irreducible polynomial of degree t, deterministic per seed."""
    if t < 1:
        raise ValueError("degree must be positive")
    order = field.order
    while True:
        coeffs = [rng.randrange(order) for _ in range(t)] + [1]
        f = Poly(field, coeffs)
        if is_irreducible(f):
            return f
