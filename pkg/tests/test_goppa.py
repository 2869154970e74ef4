import random

import pytest

from bign.f2linalg import Word, f2_rref, vec_mat_T
from bign.goppa import (
    GeneratingPair,
    ParameterViolation,
    ZeroSyndrome,
    decode_bounded,
    is_codeword,
    locate_errors,
    parity_check_matrix,
    random_goppa,
    sigma_hat_poly,
    solve_key_equation,
    syndrome_decode,
    syndrome_poly,
    syndrome_word,
)
from bign.polynomial import Poly


def literal_sigma_hat(field, alpha, indices):
    """Oracle: the sum of products computed term by term, no shortcuts."""
    total = Poly.zero(field)
    for i in indices:
        prod = Poly.one(field)
        for j in indices:
            if j != i:
                prod = prod * Poly(field, [alpha[j], 1])
        total = total + prod
    return total


def syndrome_poly_direct(pair, e: Word):
    """Oracle: sum over error positions of beta_i * (g(x) - g(alpha_i)) / (x - alpha_i)."""
    field = pair.field
    total = Poly.zero(field)
    for i in e.indices():
        a = pair.alpha[i]
        num = pair.g + Poly(field, [pair.g.eval(a)])
        q, r = num.divrem(Poly(field, [a, 1]))
        assert r.is_zero
        total = total + q.scale(pair.beta[i])
    return total


def random_error(n, w, rng):
    return Word.from_indices(n, rng.sample(range(n), w))


@pytest.fixture(scope="module")
def small_pair():
    return random_goppa(4, 2, 12, random.Random(42))


@pytest.fixture(scope="module")
def mid_pair():
    return random_goppa(6, 4, 40, random.Random(43))


class TestParityCheck:
    def test_shape(self, small_pair):
        H = parity_check_matrix(small_pair)
        assert (H.nrows, H.ncols) == (8, 12)

    def test_kernel_words_are_codewords(self, small_pair):
        for c in small_pair.code_basis:
            assert is_codeword(c, small_pair)

    def test_column_for_zero_support_element(self):
        rng = random.Random(44)
        while True:
            pair = random_goppa(4, 2, 12, rng)
            if 0 in pair.alpha:
                break
        i = pair.alpha.index(0)
        H = pair.H
        m = pair.m
        col = [(H.rows[r] >> i) & 1 for r in range(H.nrows)]
        beta_bits = [(pair.beta[i] >> b) & 1 for b in range(m)]
        assert col == beta_bits + [0] * (H.nrows - m)


class TestIsCodeword:
    def test_zero_word(self, small_pair):
        assert is_codeword(Word.zero(12), small_pair)

    def test_weight_one_never(self, small_pair):
        for i in range(12):
            assert not is_codeword(Word.from_indices(12, [i]), small_pair)

    def test_agrees_with_parity_check_exhaustively(self, small_pair):
        H = small_pair.H
        for bits in range(1 << 12):
            w = Word(bits, 12)
            assert is_codeword(w, small_pair) == (vec_mat_T(w, H).bits == 0)

    def test_sigma_hat_matches_literal_sum(self, small_pair):
        rng = random.Random(45)
        for _ in range(25):
            idxs = rng.sample(range(12), rng.randrange(1, 7))
            got = sigma_hat_poly(small_pair.field, small_pair.alpha, idxs)
            assert got == literal_sigma_hat(small_pair.field, small_pair.alpha, idxs)


class TestSyndromePoly:
    def test_zero_syndrome(self, small_pair):
        assert syndrome_poly(Word.zero(8), small_pair).is_zero

    def test_single_error_formula(self, mid_pair):
        rng = random.Random(46)
        for i in rng.sample(range(mid_pair.n), 8):
            e = Word.from_indices(mid_pair.n, [i])
            got = syndrome_poly(syndrome_word(e, mid_pair), mid_pair)
            assert got == syndrome_poly_direct(mid_pair, e)

    def test_random_errors_match_direct_formula(self, mid_pair):
        rng = random.Random(47)
        for _ in range(30):
            e = random_error(mid_pair.n, rng.randrange(1, mid_pair.t + 1), rng)
            got = syndrome_poly(syndrome_word(e, mid_pair), mid_pair)
            assert got == syndrome_poly_direct(mid_pair, e)

    def test_length_guard(self, small_pair):
        with pytest.raises(ValueError):
            syndrome_poly(Word.zero(7), small_pair)


class TestKeyEquation:
    def test_single_error_locator(self, mid_pair):
        rng = random.Random(48)
        for i in rng.sample(range(mid_pair.n), 6):
            e = Word.from_indices(mid_pair.n, [i])
            sp = syndrome_poly(syndrome_word(e, mid_pair), mid_pair)
            sigma = solve_key_equation(sp, mid_pair)
            assert sigma == Poly(mid_pair.field, [mid_pair.alpha[i], 1])

    def test_full_weight_locator_coefficients(self, mid_pair):
        rng = random.Random(49)
        for _ in range(20):
            e = random_error(mid_pair.n, mid_pair.t, rng)
            sp = syndrome_poly(syndrome_word(e, mid_pair), mid_pair)
            sigma = solve_key_equation(sp, mid_pair)
            expected = Poly.from_roots(mid_pair.field, [mid_pair.alpha[i] for i in e.indices()])
            assert sigma == expected

    def test_partial_weights(self, mid_pair):
        rng = random.Random(50)
        for w in range(1, mid_pair.t):
            e = random_error(mid_pair.n, w, rng)
            sp = syndrome_poly(syndrome_word(e, mid_pair), mid_pair)
            sigma = solve_key_equation(sp, mid_pair)
            expected = Poly.from_roots(mid_pair.field, [mid_pair.alpha[i] for i in e.indices()])
            assert sigma == expected

    def test_zero_syndrome_raises(self, mid_pair):
        with pytest.raises(ZeroSyndrome):
            solve_key_equation(Poly.zero(mid_pair.field), mid_pair)


class TestLocate:
    def test_single_root(self, small_pair):
        for i in (0, 5, 11):
            sigma = Poly(small_pair.field, [small_pair.alpha[i], 1])
            e = locate_errors(sigma, small_pair.alpha, small_pair._index)
            assert e == Word.from_indices(12, [i])

    def test_constant_has_no_roots(self, small_pair):
        sigma = Poly(small_pair.field, [7])
        assert locate_errors(sigma, small_pair.alpha, small_pair._index).weight == 0

    def test_quadratic_fast_path_matches_evaluation(self, small_pair):
        field = small_pair.field
        rng = random.Random(51)
        for _ in range(200):
            cs = [rng.randrange(16), rng.randrange(16), rng.randrange(1, 16)]
            sigma = Poly(field, cs)
            fast = locate_errors(sigma, small_pair.alpha, small_pair._index)
            slow = locate_errors(sigma, small_pair.alpha, None)
            assert fast == slow


class TestDecode:
    def test_roundtrip_all_weights(self, mid_pair):
        rng = random.Random(52)
        for w in range(1, mid_pair.t + 1):
            for _ in range(5):
                e = random_error(mid_pair.n, w, rng)
                assert syndrome_decode(syndrome_word(e, mid_pair), mid_pair) == e

    def test_zero_syndrome_raises(self, mid_pair):
        with pytest.raises(ZeroSyndrome):
            syndrome_decode(Word.zero(mid_pair.m * mid_pair.t), mid_pair)

    def test_square_extension_same_code(self, small_pair):
        # the code of (alpha, g) equals the code of (alpha, g^2)
        sq = GeneratingPair(small_pair.field, small_pair.alpha, small_pair.g * small_pair.g)
        r1, p1 = f2_rref(small_pair.H)
        r2, p2 = f2_rref(sq.H)
        kept1 = [r for r in r1.rows if r]
        kept2 = [r for r in r2.rows if r]
        assert kept1 == kept2  # same row space in rref => same kernel

    def test_bounded_decoder_on_square_extension(self, small_pair):
        sq = GeneratingPair(small_pair.field, small_pair.alpha, small_pair.g * small_pair.g)
        rng = random.Random(53)
        for w in range(1, small_pair.t + 1):
            for _ in range(10):
                e = random_error(small_pair.n, w, rng)
                s = syndrome_word(e, sq)
                assert decode_bounded(s, sq) == e


class TestRandomGoppa:
    def test_dimension_bound(self, small_pair):
        from bign.f2linalg import f2_rank
        assert small_pair.n - f2_rank(small_pair.H) >= small_pair.n - small_pair.m * small_pair.t

    def test_parameter_violation(self):
        with pytest.raises(ParameterViolation):
            random_goppa(4, 2, 20, random.Random(0))  # n > 2^m
        with pytest.raises(ParameterViolation):
            random_goppa(4, 3, 12, random.Random(0))  # mt >= n

    def test_deterministic(self):
        a = random_goppa(4, 2, 12, random.Random(7))
        b = random_goppa(4, 2, 12, random.Random(7))
        assert a == b

    def test_distinct_support_enforced(self, gf16):
        g = Poly(gf16, [2, 0, 1])
        with pytest.raises(ParameterViolation):
            GeneratingPair(gf16, [1, 1, 2], g)

    def test_vanishing_polynomial_rejected(self, gf16):
        g = Poly.from_roots(gf16, [3, 5])
        with pytest.raises(ParameterViolation):
            GeneratingPair(gf16, [3, 4], g)

    def test_decode_corrects_up_to_t_errors_property(self):
        # irreducible g corrects every weight 1..t uniquely
        rng = random.Random(54)
        for seed in range(5):
            pair = random_goppa(5, 3, 25, random.Random(seed))
            for w in range(1, 4):
                e = random_error(25, w, rng)
                assert syndrome_decode(syndrome_word(e, pair), pair) == e

    def test_json_roundtrip(self, small_pair):
        assert GeneratingPair.from_json(small_pair.to_json()) == small_pair
