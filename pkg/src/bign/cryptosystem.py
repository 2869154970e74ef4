"""The Niederreiter cryptosystem over binary irreducible Goppa codes.

Keys are generated with a column permutation P and can be simplified to
the P-free form (support permuted instead); the public key is unchanged
by simplification.  Decryption follows the classic four-step pipeline
(syndrome, syndrome polynomial, error locator, evaluation) with an
explicit hook between locator computation and evaluation -- that seam
is the fault-injection surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .field import GF2m
from .f2linalg import (
    BitMatrix,
    Word,
    apply_perm_seq,
    apply_perm_word,
    f2_invert,
    f2_random_invertible,
    f2_solve_left,
    mat_mul,
    permute_cols,
    random_permutation,
    vec_mat_T,
)
from .goppa import (
    DecodeFailure,
    GeneratingPair,
    ParameterViolation,
    decode_bounded,
    locate_errors,
    random_goppa,
    solve_key_equation,
    syndrome_poly,
)
from .polynomial import Poly


class WeightViolation(ValueError):
    """Plaintext weight outside the allowed range."""


@dataclass
class PublicKey:
    m: int
    t: int
    n: int
    H_pub: BitMatrix

    @property
    def params(self) -> Dict[str, int]:
        return {"m": self.m, "t": self.t, "n": self.n}


@dataclass
class SecretKey:
    S: BitMatrix
    S_inv: BitMatrix
    H: BitMatrix
    perm: Optional[List[int]]
    pair: GeneratingPair

    @property
    def simplified(self) -> bool:
        return self.perm is None


def keygen(m: int, t: int, n: int, rng, field: Optional[GF2m] = None):
    """Fresh (SecretKey, PublicKey) with H_pub = S @ H @ P."""
    pair = random_goppa(m, t, n, rng, field=field)
    mt = m * t
    S = f2_random_invertible(mt, rng)
    perm = random_permutation(n, rng)
    H = pair.H
    H_pub = permute_cols(mat_mul(S, H), perm)
    sk = SecretKey(S=S, S_inv=f2_invert(S), H=H, perm=perm, pair=pair)
    pk = PublicKey(m=m, t=t, n=n, H_pub=H_pub)
    return sk, pk


def simplify_key(sk: SecretKey) -> SecretKey:
    """Fold the permutation into the support: (S, H@P, alpha@P, g), P dropped.

    Idempotent; the public parity-check matrix S @ (H@P) is unchanged.
    """
    if sk.perm is None:
        return sk
    pair = sk.pair
    alpha2 = apply_perm_seq(pair.alpha, sk.perm)
    pair2 = GeneratingPair(pair.field, alpha2, pair.g)
    return SecretKey(S=sk.S, S_inv=sk.S_inv, H=pair2.H, perm=None, pair=pair2)


def random_plaintext(n: int, t: int, rng) -> Word:
    return Word.from_indices(n, rng.sample(range(n), t))


def _encode(p: Word, pk: PublicKey) -> Word:
    if p.n != pk.n:
        raise ValueError("plaintext length mismatch")
    return vec_mat_T(p, pk.H_pub)


def encrypt(p: Word, pk: PublicKey) -> Word:
    """c = p @ H_pub^T for a legal plaintext (weight exactly t)."""
    if p.weight != pk.t:
        raise WeightViolation(f"plaintext weight {p.weight} != t = {pk.t}")
    return _encode(p, pk)


def encrypt_any(p: Word, pk: PublicKey) -> Word:
    """Relaxed entry point for the attack oracle: 0 < wt(p) <= t."""
    if not 0 < p.weight <= pk.t:
        raise WeightViolation(f"plaintext weight {p.weight} outside (0, {pk.t}]")
    return _encode(p, pk)


def error_locator(c: Word, sk: SecretKey) -> Poly:
    """Steps 1-3 of the decryption pipeline: ciphertext to monic locator."""
    s = vec_mat_T(c, sk.S_inv)  # c @ (S^T)^-1
    pair = sk.pair
    s_poly = syndrome_poly(s, pair)
    return solve_key_equation(s_poly, pair)


def decrypt(c: Word, sk: SecretKey, sigma_hook: Optional[Callable[[Poly], Poly]] = None) -> Word:
    """Invert encryption for any c = p @ H_pub^T with 0 < wt(p) <= t.

    `sigma_hook`, when given, replaces the locator between computation
    and evaluation; the evaluation result is returned unvalidated, which
    is exactly the behaviour the fault model exploits.
    """
    pair = sk.pair
    sigma = error_locator(c, sk)
    if sigma_hook is not None:
        sigma = sigma_hook(sigma)
    e = locate_errors(sigma, pair.alpha, pair._index)
    if sk.perm is not None:
        # e is p @ P^T; undo with (P^T)^-1 = P
        return apply_perm_word(e, sk.perm)
    return e


class AlternativeSecretPair:
    """Support tuple + extension polynomial of degree >= 2t that contains C."""

    __slots__ = ("field", "alpha_tilde", "g_tilde")

    def __init__(self, field: GF2m, alpha_tilde, g_tilde: Poly) -> None:
        self.field = field
        self.alpha_tilde = tuple(alpha_tilde)
        self.g_tilde = g_tilde

    def pair(self) -> GeneratingPair:
        return GeneratingPair(self.field, self.alpha_tilde, self.g_tilde)

    def to_json(self) -> Dict:
        return {
            "kind": "alternative_pair",
            "context": self.field.to_json(),
            "alpha_tilde": list(self.alpha_tilde),
            "g_tilde": self.g_tilde.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Dict) -> "AlternativeSecretPair":
        field = GF2m.from_json(obj["context"])
        return cls(field, obj["alpha_tilde"], Poly(field, obj["g_tilde"]))


def alt_decrypt(c: Word, pk: PublicKey, alt: AlternativeSecretPair) -> Word:
    """Decrypt with an alternative pair: build H~, solve S~ @ H_pub = H~,
    decode c @ S~^T in the extension code, and self-check by re-encryption."""
    if alt.g_tilde.degree < 2 * pk.t:
        raise ParameterViolation(f"extension degree {alt.g_tilde.degree} < 2t = {2 * pk.t}")
    pair = alt.pair()
    S_tilde = f2_solve_left(pk.H_pub, pair.H)
    c_tilde = vec_mat_T(c, S_tilde)
    p = decode_bounded(c_tilde, pair)
    if _encode(p, pk) != c:
        raise DecodeFailure("alternative decryption does not re-encrypt to c")
    return p


# -- key file formats ---------------------------------------------------------


def secret_key_to_json(sk: SecretKey, pk: PublicKey) -> Dict:
    return {
        "kind": "secret_key",
        "params": pk.params,
        "context": sk.pair.field.to_json(),
        "S": sk.S.to_json(),
        "perm": list(sk.perm) if sk.perm is not None else None,
        "alpha": list(sk.pair.alpha),
        "g": sk.pair.g.to_json(),
        "H_pub": pk.H_pub.to_json(),
    }


def secret_key_from_json(obj: Dict):
    field = GF2m.from_json(obj["context"])
    pair = GeneratingPair(field, obj["alpha"], Poly(field, obj["g"]))
    S = BitMatrix.from_json(obj["S"])
    sk = SecretKey(S=S, S_inv=f2_invert(S), H=pair.H, perm=obj["perm"], pair=pair)
    params = obj["params"]
    pk = PublicKey(m=params["m"], t=params["t"], n=params["n"], H_pub=BitMatrix.from_json(obj["H_pub"]))
    return sk, pk


def public_key_to_json(pk: PublicKey) -> Dict:
    return {"kind": "public_key", "params": pk.params, "H_pub": pk.H_pub.to_json()}


def public_key_from_json(obj: Dict) -> PublicKey:
    params = obj["params"]
    return PublicKey(m=params["m"], t=params["t"], n=params["n"], H_pub=BitMatrix.from_json(obj["H_pub"]))


def dump_json(obj: Dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_json(path) -> Dict:
    with open(path) as fh:
        return json.load(fh)
