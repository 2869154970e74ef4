import random

import pytest
from hypothesis import given, strategies as st

from bign.field import GF2m
from bign.polynomial import (
    BothZero,
    DivisionByZeroPoly,
    NotInvertible,
    Poly,
    is_irreducible,
    poly_modinv,
    poly_powmod,
    poly_sqrmod,
    poly_sqrt_mod,
    random_irreducible,
)


def rand_poly(field, deg, rng, monic=False):
    cs = [rng.randrange(field.order) for _ in range(deg)]
    cs.append(1 if monic else rng.randrange(1, field.order))
    return Poly(field, cs)


class TestArithmetic:
    def test_mul_identity_and_zero(self, gf16):
        rng = random.Random(1)
        f = rand_poly(gf16, 5, rng)
        assert f * Poly.one(gf16) == f
        assert (f * Poly.zero(gf16)).is_zero

    def test_square_of_linear_kills_cross_term(self, gf16):
        a = 0b0111
        f = Poly(gf16, [a, 1])  # x + a
        sq = f * f
        assert sq == Poly(gf16, [gf16.mul(a, a), 0, 1])

    def test_divrem_reconstruction(self, gf16):
        rng = random.Random(2)
        for _ in range(100):
            f = rand_poly(gf16, rng.randrange(0, 8), rng)
            h = rand_poly(gf16, rng.randrange(0, 5), rng)
            r = rand_poly(gf16, rng.randrange(0, max(h.degree, 1)), rng) if h.degree > 0 else Poly.zero(gf16)
            lhs = f * h + r
            q, rem = lhs.divrem(h)
            assert q == f
            assert rem == r

    def test_divrem_trivials(self, gf16):
        rng = random.Random(3)
        f = rand_poly(gf16, 6, rng)
        q, r = f.divrem(Poly.one(gf16))
        assert q == f and r.is_zero
        q, r = Poly.zero(gf16).divrem(f)
        assert q.is_zero and r.is_zero
        with pytest.raises(DivisionByZeroPoly):
            f.divrem(Poly.zero(gf16))

    def test_mul_then_divrem_roundtrip(self, gf16):
        rng = random.Random(4)
        for _ in range(100):
            f = rand_poly(gf16, rng.randrange(0, 6), rng)
            h = rand_poly(gf16, rng.randrange(0, 6), rng)
            q, r = (f * h).divrem(h)
            assert q == f and r.is_zero


class TestGcd:
    def test_gcd_with_zero_is_monic(self, gf16):
        f = Poly(gf16, [1, 3, 5])
        g = f.gcd(Poly.zero(gf16))
        assert g == f.monic()
        with pytest.raises(BothZero):
            Poly.zero(gf16).gcd(Poly.zero(gf16))

    def test_gcd_of_shared_linear_factor(self, gf16):
        a, b, c = 3, 7, 12
        f = Poly.from_roots(gf16, [a, b])
        h = Poly.from_roots(gf16, [a, c])
        assert f.gcd(h) == Poly(gf16, [a, 1])

    def test_gcd_divides_both_and_symmetric(self, gf16):
        rng = random.Random(5)
        for _ in range(60):
            f = rand_poly(gf16, rng.randrange(1, 7), rng)
            h = rand_poly(gf16, rng.randrange(1, 7), rng)
            g = f.gcd(h)
            assert (f % g).is_zero and (h % g).is_zero
            assert not g.is_zero and g.leading == 1
            assert h.gcd(f) == g


class TestEvalDerivative:
    def test_eval_trivials(self, gf16):
        f = Poly(gf16, [9, 0, 4])
        assert f.eval(0) == 9
        a = 11
        assert Poly(gf16, [a, 1]).eval(a) == 0

    def test_product_vanishes_exactly_on_roots(self, gf16):
        roots = [1, 5, 9]
        f = Poly.from_roots(gf16, roots)
        for a in gf16.elements():
            assert (f.eval(a) == 0) == (a in roots)

    def test_derivative_rules(self, gf16):
        assert Poly(gf16, [7]).derivative().is_zero
        assert Poly(gf16, [5, 0, 1]).derivative().is_zero  # x^2 + a
        b = 6
        assert Poly(gf16, [0, b, 0, 1]).derivative() == Poly(gf16, [b, 0, 1])  # x^3+bx -> x^2+b


class TestModularOps:
    def test_modinv_identity(self, gf16):
        g = Poly.from_roots(gf16, [2, 3]) + Poly.one(gf16)
        assert poly_modinv(Poly.one(gf16), g) == Poly.one(gf16)

    def test_modinv_random_coprime(self, gf256):
        rng = random.Random(6)
        g = random_irreducible(6, gf256, rng)
        for _ in range(40):
            f = rand_poly(gf256, rng.randrange(0, 6), rng)
            if (f % g).is_zero:
                continue
            u = poly_modinv(f, g)
            assert ((f * u) % g) == Poly.one(gf256)
            assert u.degree < g.degree

    def test_modinv_of_zero_raises(self, gf16):
        rng = random.Random(7)
        g = random_irreducible(3, gf16, rng)
        with pytest.raises(NotInvertible):
            poly_modinv(Poly.zero(gf16), g)

    def test_sqrt_mod_trivials(self, gf16):
        rng = random.Random(8)
        g = random_irreducible(4, gf16, rng)
        assert poly_sqrt_mod(Poly.zero(gf16), g).is_zero
        assert poly_sqrt_mod(Poly.one(gf16), g) == Poly.one(gf16)

    def test_sqrt_mod_of_square_roundtrips(self, gf16):
        rng = random.Random(9)
        g = random_irreducible(5, gf16, rng)
        for _ in range(30):
            v = rand_poly(gf16, rng.randrange(0, 5), rng)
            s = poly_sqrt_mod(poly_sqrmod(v, g), g)
            assert s == (v % g)

    def test_sqrt_mod_squared_reduces_back(self, gf256):
        rng = random.Random(10)
        g = random_irreducible(4, gf256, rng)
        for _ in range(100):
            w = rand_poly(gf256, rng.randrange(0, 4), rng)
            s = poly_sqrt_mod(w, g)
            assert poly_sqrmod(s, g) == (w % g)

    def test_powmod_matches_naive(self, gf16):
        rng = random.Random(11)
        g = random_irreducible(4, gf16, rng)
        f = rand_poly(gf16, 3, rng)
        acc = Poly.one(gf16)
        for e in range(12):
            assert poly_powmod(f, e, g) == acc
            acc = (acc * f) % g


_gf16 = GF2m(4)
_coeff_lists = st.lists(st.integers(0, 15), min_size=0, max_size=7)


class TestHypothesisProperties:
    @given(_coeff_lists, _coeff_lists)
    def test_mul_commutes(self, a, b):
        f, h = Poly(_gf16, a), Poly(_gf16, b)
        assert f * h == h * f

    @given(_coeff_lists, _coeff_lists)
    def test_divrem_reconstructs(self, a, b):
        f, h = Poly(_gf16, a), Poly(_gf16, b)
        if h.is_zero:
            return
        q, r = f.divrem(h)
        assert q * h + r == f
        assert r.degree < h.degree or r.is_zero

    @given(_coeff_lists, _coeff_lists, st.integers(0, 15))
    def test_eval_is_ring_hom(self, a, b, x):
        f, h = Poly(_gf16, a), Poly(_gf16, b)
        assert (f + h).eval(x) == f.eval(x) ^ h.eval(x)
        assert (f * h).eval(x) == _gf16.mul(f.eval(x), h.eval(x))

    @given(_coeff_lists, _coeff_lists)
    def test_derivative_product_rule(self, a, b):
        f, h = Poly(_gf16, a), Poly(_gf16, b)
        lhs = (f * h).derivative()
        rhs = f.derivative() * h + f * h.derivative()
        assert lhs == rhs


class TestRandomIrreducible:
    def test_degree_one_always(self, gf16):
        rng = random.Random(12)
        f = random_irreducible(1, gf16, rng)
        assert f.degree == 1 and f.leading == 1

    def test_no_roots_in_field(self, gf16):
        rng = random.Random(13)
        f = random_irreducible(2, gf16, rng)
        for a in gf16.elements():
            assert f.eval(a) != 0

    def test_deterministic_per_seed(self, gf64):
        f1 = random_irreducible(4, gf64, random.Random(99))
        f2 = random_irreducible(4, gf64, random.Random(99))
        assert f1 == f2

    def test_no_linear_factors_via_field_power_gcd(self, gf16):
        # gcd(g, x^(2^m) - x mod g) = 1 for t >= 2
        rng = random.Random(14)
        for t in (2, 3, 5):
            g = random_irreducible(t, gf16, rng)
            xq = poly_powmod(Poly.x(gf16), gf16.order, g)
            assert (xq + Poly.x(gf16)).gcd(g) == Poly.one(gf16)

    def test_is_irreducible_against_brute_force(self, gf16):
        # oracle: trial division by all monic polynomials of degree <= deg/2
        rng = random.Random(15)

        def brute(f):
            for d in range(1, f.degree // 2 + 1):
                for bits in range(gf16.order ** d):
                    cs = [(bits // gf16.order**i) % gf16.order for i in range(d)] + [1]
                    if (f % Poly(gf16, cs)).is_zero:
                        return False
            return True

        for _ in range(40):
            f = rand_poly(gf16, rng.randrange(2, 5), rng, monic=True)
            assert is_irreducible(f) == brute(f)
