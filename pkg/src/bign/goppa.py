"""Binary Goppa codes: generating pairs, parity-check matrices, syndrome
polynomials, a membership oracle, and syndrome decoding.

Two decoders live here.  `solve_key_equation` is the Patterson route for
an irreducible Goppa polynomial g: it corrects up to deg(g) errors and
is the decryption pipeline under attack.  `decode_bounded` is the
generic key-equation route used with extension polynomials of degree
>= 2t (not necessarily irreducible), correcting floor(deg/2) errors.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .field import GF2m, check_same_field
from .f2linalg import BitMatrix, Word, f2_kernel_basis, vec_mat_T
from .polynomial import Poly, poly_modinv, poly_sqrt_mod, random_irreducible, NotInvertible


class ParameterViolation(ValueError):
    """Code parameters outside mt < n <= 2^m, or an invalid generating pair."""


class DecodeFailure(ValueError):
    """Syndrome does not decode to a valid error pattern."""


class ZeroSyndrome(DecodeFailure):
    """The zero syndrome carries no error to locate."""


def validate_support(field: GF2m, alpha: Sequence[int]) -> Tuple[int, ...]:
    elems = tuple(alpha)
    if len(elems) > field.order:
        raise ParameterViolation(f"support length {len(elems)} exceeds field size {field.order}")
    if len(set(elems)) != len(elems):
        raise ParameterViolation("support elements must be pairwise distinct")
    for a in elems:
        if not 0 <= a < field.order:
            raise ParameterViolation(f"support element {a} outside the field")
    return elems


def sigma_hat_poly(field: GF2m, alpha: Sequence[int], indices: Sequence[int]) -> Poly:
    """Sum over i of prod_{j != i} (x - alpha_j), for i, j in `indices`.

    By the product rule this is exactly the formal derivative of
    prod_i (x - alpha_i), which is how it is computed.
    """
    sigma = Poly.from_roots(field, [alpha[i] for i in indices])
    return sigma.derivative()


class GeneratingPair:
    """Support tuple plus Goppa polynomial, with the caches decoding
    needs.  Treated as immutable once built; decode operations are pure.

    The classic mt < n constraint is enforced by `random_goppa`/keygen,
    not here: extension pairs with deg(g) >= 2t are legitimate inputs
    for alternative decryption even when m*deg(g) >= n.
    """

    __slots__ = ("field", "alpha", "g", "beta", "_index", "_H", "_sqrt_x", "_kernel")

    def __init__(self, field: GF2m, alpha: Sequence[int], g: Poly) -> None:
        check_same_field(field, g.field)
        self.field = field
        self.alpha = validate_support(field, alpha)
        if g.degree < 1:
            raise ParameterViolation("Goppa polynomial must have degree >= 1")
        self.g = g.monic()
        inv = field.inv
        vals = [self.g.eval(a) for a in self.alpha]
        if any(v == 0 for v in vals):
            raise ParameterViolation("Goppa polynomial vanishes on the support")
        self.beta = tuple(inv(v) for v in vals)
        self._index: Dict[int, int] = {a: i for i, a in enumerate(self.alpha)}
        self._H: Optional[BitMatrix] = None
        self._sqrt_x: Optional[Poly] = None
        self._kernel: Optional[List[Word]] = None

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def t(self) -> int:
        return self.g.degree

    @property
    def m(self) -> int:
        return self.field.m

    def index_of(self, elem: int) -> Optional[int]:
        return self._index.get(elem)

    @property
    def H(self) -> BitMatrix:
        if self._H is None:
            self._H = parity_check_matrix(self)
        return self._H

    @property
    def sqrt_x(self) -> Poly:
        """sqrt(x) modulo g, cached for Patterson decoding."""
        if self._sqrt_x is None:
            self._sqrt_x = poly_sqrt_mod(Poly.x(self.field), self.g)
        return self._sqrt_x

    @property
    def code_basis(self) -> List[Word]:
        if self._kernel is None:
            self._kernel = f2_kernel_basis(self.H)
        return self._kernel

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratingPair)
            and self.field == other.field
            and self.alpha == other.alpha
            and self.g == other.g
        )

    def __repr__(self) -> str:
        return f"GeneratingPair(m={self.m}, t={self.t}, n={self.n})"

    def to_json(self) -> Dict:
        return {"context": self.field.to_json(), "alpha": list(self.alpha), "g": self.g.to_json()}

    @classmethod
    def from_json(cls, obj: Dict) -> "GeneratingPair":
        field = GF2m.from_json(obj["context"])
        return cls(field, obj["alpha"], Poly(field, obj["g"]))


def parity_check_matrix(pair: GeneratingPair) -> BitMatrix:
    """mt x n parity check over F2.

    Row block j (rows j*m .. j*m+m-1) is the F2 expansion of the
    GF(2^m) row (alpha_i^j * beta_i)_i, bit b of the entry landing in
    row j*m + b.
    """
    field = pair.field
    m, t, n = pair.m, pair.t, pair.n
    mul = field.mul
    rows = [0] * (m * t)
    for i in range(n):
        a = pair.alpha[i]
        v = pair.beta[i]
        col = 1 << i
        for j in range(t):
            base = j * m
            w = v
            while w:
                low = w & -w
                rows[base + low.bit_length() - 1] |= col
                w ^= low
            if j + 1 < t:
                v = mul(v, a)
    return BitMatrix(m * t, n, rows)


def is_codeword(c: Word, pair: GeneratingPair) -> bool:
    """Membership by divisibility: g | sum_i prod_{j != i} (x - alpha_j).

    Independent of the parity-check matrix; used to cross-validate it.
    """
    if c.n != pair.n:
        raise ValueError("word length mismatch")
    if c.weight == 0:
        return True
    shat = sigma_hat_poly(pair.field, pair.alpha, c.indices())
    return (shat % pair.g).is_zero


def syndrome_word(e: Word, pair: GeneratingPair) -> Word:
    """e @ H^T."""
    return vec_mat_T(e, pair.H)


def syndrome_poly(s: Word, pair: GeneratingPair) -> Poly:
    """Syndrome polynomial from the mt-bit syndrome.

    Regroups s into t field elements s_hat (m bits each, same basis and
    block order as the parity check) and multiplies by the band matrix
    of Goppa coefficients: coefficient u of the result is
    sum_v g_{u+1+v} * s_hat_v.
    """
    field = pair.field
    m, t = pair.m, pair.t
    if s.n != m * t:
        raise ValueError(f"syndrome length {s.n} != m*t = {m * t}")
    mask = field.order - 1
    bits = s.bits
    shat = [(bits >> (j * m)) & mask for j in range(t)]
    g = pair.g.coeffs
    mul = field.mul
    out = [0] * t
    for u in range(t):
        acc = 0
        for v in range(t - u):
            c = shat[v]
            if c:
                gk = g[u + 1 + v]
                if gk:
                    acc ^= mul(gk, c)
        out[u] = acc
    return Poly(field, out)


def locate_errors(sigma: Poly, alpha: Sequence[int], index: Optional[Dict[int, int]] = None) -> Word:
    """e with e_i = 1 iff sigma(alpha_i) = 0.

    Degree <= 2 locators are resolved by closed-form root finding; higher
    degrees fall back to evaluation over the whole support.  The zero
    polynomial vanishes everywhere.
    """
    n = len(alpha)
    field = sigma.field
    if sigma.is_zero:
        return Word((1 << n) - 1, n)
    deg = sigma.degree
    if deg == 0:
        return Word(0, n)
    if deg <= 2 and index is not None:
        cs = sigma.coeffs
        if deg == 1:
            roots: Tuple[int, ...] = (field.div(cs[0], cs[1]),)
        else:
            inv2 = field.inv(cs[2])
            roots = field.quad_roots_monic(field.mul(cs[1], inv2), field.mul(cs[0], inv2))
        bits = 0
        for r in roots:
            i = index.get(r)
            if i is not None:
                bits |= 1 << i
        return Word(bits, n)
    bits = 0
    ev = sigma.eval
    for i, a in enumerate(alpha):
        if ev(a) == 0:
            bits |= 1 << i
    return Word(bits, n)


def _half_extended_euclid(g: Poly, r: Poly, stop_deg: int) -> Tuple[Poly, Poly]:
    """First remainder of degree <= stop_deg and its cofactor u (r_k = u_k * r mod g)."""
    field = g.field
    r_prev, r_cur = g, r % g
    u_prev, u_cur = Poly.zero(field), Poly.one(field)
    while r_cur.degree > stop_deg:
        q, rem = r_prev.divrem(r_cur)
        r_prev, r_cur = r_cur, rem
        u_prev, u_cur = u_cur, u_prev + q * u_cur
    return r_cur, u_cur


def solve_key_equation(s_poly: Poly, pair: GeneratingPair) -> Poly:
    """Monic error locator for a syndrome polynomial, by Patterson.

    Valid for 1 <= wt(e) <= t when g is irreducible.  T = 1/s mod g;
    if T = x the locator is x, otherwise r = sqrt(T + x) mod g and a
    truncated extended Euclid on (g, r) yields sigma = a^2 + x*b^2.
    """
    if s_poly.is_zero:
        raise ZeroSyndrome("zero syndrome")
    field = pair.field
    g = pair.g
    t = g.degree
    x = Poly.x(field)
    try:
        T = poly_modinv(s_poly, g)
    except NotInvertible as exc:
        raise DecodeFailure("syndrome polynomial not invertible modulo g") from exc
    if T == x:
        sigma = x
    else:
        w = T + x
        # sqrt via the cached sqrt(x): split w into even and odd parts
        sq = field.sqrt
        cs = w.coeffs
        even = Poly(field, [sq(cs[i]) for i in range(0, len(cs), 2)])
        odd = Poly(field, [sq(cs[i]) for i in range(1, len(cs), 2)])
        r = (even + (odd * pair.sqrt_x) % g) % g
        a, b = _half_extended_euclid(g, r, t // 2)
        # sigma = a^2 + x*b^2 without a polynomial multiply
        sqr = field.sqr
        out = [0] * (2 * max(len(a.coeffs), len(b.coeffs)))
        for i, c in enumerate(a.coeffs):
            out[2 * i] ^= sqr(c)
        for i, c in enumerate(b.coeffs):
            out[2 * i + 1] ^= sqr(c)
        sigma = Poly(field, out).monic()
    if sigma.degree < 1:
        raise DecodeFailure("constant locator")
    e = locate_errors(sigma, pair.alpha, pair._index)
    if e.weight != sigma.degree:
        raise DecodeFailure("locator does not split over the support")
    return sigma


def syndrome_decode(s: Word, pair: GeneratingPair) -> Word:
    """Recover e from s = e @ H^T for 1 <= wt(e) <= t (g irreducible)."""
    s_poly = syndrome_poly(s, pair)
    sigma = solve_key_equation(s_poly, pair)
    return locate_errors(sigma, pair.alpha, pair._index)


def decode_bounded(s: Word, pair: GeneratingPair) -> Word:
    """Generic key-equation decoder correcting up to floor(deg(g)/2) errors.

    Extended Euclid on (g, s_poly) stopped at the first remainder of
    degree <= ceil(deg(g)/2) - 1; the cofactor is the locator.  Works
    for non-irreducible g (extension polynomials g~ with deg >= 2t).
    """
    tt = pair.t
    max_errors = tt // 2
    s_poly = syndrome_poly(s, pair)
    if s_poly.is_zero:
        raise ZeroSyndrome("zero syndrome")
    omega, sigma = _half_extended_euclid(pair.g, s_poly, (tt + 1) // 2 - 1)
    if sigma.is_zero or sigma.degree < 1 or sigma.degree > max_errors:
        raise DecodeFailure("no locator within the correction radius")
    e = locate_errors(sigma, pair.alpha, pair._index)
    if e.weight != sigma.degree:
        raise DecodeFailure("locator does not split over the support")
    return e


def random_goppa(m: int, t: int, n: int, rng, field: Optional[GF2m] = None) -> GeneratingPair:
    """Uniform support (Fisher-Yates prefix) + random irreducible g of degree t."""
    if field is None:
        field = GF2m(m)
    if field.m != m:
        raise ParameterViolation("field does not match m")
    if not (m * t < n <= (1 << m)):
        raise ParameterViolation(f"need m*t < n <= 2^m, got m={m} t={t} n={n}")
    while True:
        g = random_irreducible(t, field, rng)
        pool = list(range(field.order))
        rng.shuffle(pool)
        alpha = pool[:n]
        # t = 1 is the only case where an irreducible g has a root to dodge
        if t == 1 and any(g.eval(a) == 0 for a in alpha):
            continue
        return GeneratingPair(field, alpha, g)
