"""Candidate extension and the end-to-end key-recovery attack.

A support candidate is promoted to an alternative secret pair by running
a gcd over the public code's basis codewords: every codeword c of a
Goppa code divides its sigma-hat sum, so the gcd of those sums over a
basis is a multiple of any valid extension polynomial.  Candidates that
cannot reach degree 2t fail fast.
"""

from __future__ import annotations

import time
from typing import Dict, List, Optional, Sequence

from .attack import build_fault_equation_system
from .cryptosystem import (
    AlternativeSecretPair,
    PublicKey,
    alt_decrypt,
    encrypt,
    random_plaintext,
)
from .field import GF2m
from .f2linalg import Word, f2_kernel_basis, vec_mat_T
from .goppa import DecodeFailure, GeneratingPair, ParameterViolation, sigma_hat_poly
from .polynomial import Poly
from .solver import support_candidates


class ZeroWord(ValueError):
    """sigma-hat of the zero word is undefined."""


class ZeroScalar(ValueError):
    """Support scaling by zero is not invertible."""


class Exhausted(RuntimeError):
    """Every support candidate failed to extend."""


def sigma_hat(c: Word, alpha_tilde: Sequence[int], field: GF2m) -> Poly:
    """Sum over i in I_c of prod_{j in I_c, j != i} (x - alpha~_j)."""
    if c.weight == 0:
        raise ZeroWord("zero word")
    return sigma_hat_poly(field, alpha_tilde, c.indices())


def _contains_basis(pair: GeneratingPair, basis: Sequence[Word]) -> bool:
    H = pair.H
    return all(vec_mat_T(c, H).bits == 0 for c in basis)


def goppa_gcd(
    alpha_tilde: Sequence[int],
    t: int,
    basis: Sequence[Word],
    field: GF2m,
) -> Optional[Poly]:
    """Degree >= 2t extension of alpha~ containing the code spanned by
    `basis`, or None.

    Runs the gcd of sigma-hat sums over the basis, failing as soon as
    the degree drops below 2t.  When the degree lands exactly on 2t the
    loop stops early and the candidate is checked directly against the
    parity-check matrix of (alpha~, g~); otherwise linear factors over
    the support are stripped at the end and the degree re-checked.
    """
    alpha_tilde = tuple(alpha_tilde)
    g_tilde = Poly.zero(field)
    bound = 2 * t
    for idx, c in enumerate(basis):
        g_tilde = g_tilde.gcd(sigma_hat(c, alpha_tilde, field))
        if g_tilde.degree < bound:
            return None
        if g_tilde.degree == bound:
            # early exit: no room for linear factors, verify membership directly
            if any(g_tilde.eval(a) == 0 for a in alpha_tilde):
                return None
            pair = GeneratingPair(field, alpha_tilde, g_tilde)
            if _contains_basis(pair, basis[idx + 1:]):
                return g_tilde.monic()
            return None
    # strip all linear factors over the support, then re-check the degree
    for a in alpha_tilde:
        while not g_tilde.is_zero and g_tilde.eval(a) == 0:
            g_tilde = g_tilde.divrem(Poly(field, [a, 1]))[0]
    if g_tilde.degree < bound:
        return None
    return g_tilde.monic()


def scale_pair(pair: GeneratingPair, a: int) -> GeneratingPair:
    """(alpha, g(x)) and (a*alpha, g(x/a)) generate the same code."""
    if a == 0:
        raise ZeroScalar("scale factor must be nonzero")
    field = pair.field
    mul = field.mul
    inv_a = field.inv(a)
    alpha2 = [mul(a, x) for x in pair.alpha]
    # g(a^-1 x): coefficient k picks up a^-k
    coeffs = []
    scale = 1
    for c in pair.g.coeffs:
        coeffs.append(mul(c, scale))
        scale = mul(scale, inv_a)
    return GeneratingPair(field, alpha2, Poly(field, coeffs))


def fault_attack(
    oracle,
    pk: PublicKey,
    rng,
    budget_per_seq: Optional[int] = None,
    solver_method: str = "auto",
    verify_trials: int = 4,
    report: Optional[Dict] = None,
) -> AlternativeSecretPair:
    """Build a fault equation system, solve for support candidates, and
    extend the first candidate that survives GoppaGCD.

    Every returned pair has already decrypted `verify_trials` random
    ciphertexts through the alternative decryption route.  `report`,
    when provided, collects counts and per-phase wall-clock times.
    """
    field = oracle.field
    t = pk.t

    seq_log: Optional[List[Dict]] = [] if report is not None else None
    t0 = time.perf_counter()
    system = build_fault_equation_system(oracle, rng, budget_per_seq=budget_per_seq, seq_log=seq_log)
    t1 = time.perf_counter()
    cands = support_candidates(system, method=solver_method)
    t2 = time.perf_counter()

    basis = f2_kernel_basis(pk.H_pub)
    tested = 0
    found: Optional[AlternativeSecretPair] = None
    queue = list(cands)
    while queue:
        alpha_tilde = queue.pop(0)
        tested += 1
        g_tilde = goppa_gcd(alpha_tilde, t, basis, field)
        if g_tilde is None:
            continue
        alt = AlternativeSecretPair(field, alpha_tilde, g_tilde)
        try:
            ok = all(
                alt_decrypt(encrypt(p, pk), pk, alt) == p
                for p in (random_plaintext(pk.n, t, rng) for _ in range(verify_trials))
            )
        except (DecodeFailure, ParameterViolation):
            ok = False
        if ok:
            found = alt
            break
    t3 = time.perf_counter()

    if report is not None:
        report.update(
            {
                "injections": oracle.injections,
                "rejections": oracle.rejections,
                "L1": len(system.L1),
                "L2": len(system.L2),
                "reduced_indeterminates": cands.n_free,
                "reduced_equations": cands.n_equations,
                "candidates": len(cands),
                "candidates_tested": tested,
                "sequence_log": seq_log,
                "time_build_system": t1 - t0,
                "time_solve": t2 - t1,
                "time_extend": t3 - t2,
            }
        )
    if found is None:
        raise Exhausted(f"all {len(cands)} support candidates failed to extend")
    return found
