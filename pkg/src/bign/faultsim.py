"""Fault-injection oracle for the decryption pipeline.

The oracle owns a key pair and a device model: decryption runs normally
up to the error locator, the chosen coefficient is overwritten with a
uniform random field element, and the corrupted locator is evaluated as
if nothing happened.  Countermeasure flags emulate a protected device
(weight check, re-encryption check); a rejection is an observable
marker, not an exception, because a real device would answer with a
failure response the attacker can see.

Attack code must only touch `pk`, `params`, `inject_fault` and the
counters; everything else is the device's side of the boundary.
Transparent mode (tests and statistics only) reveals the fault value
and allows forcing it.
"""

from __future__ import annotations

from dataclasses import dataclass
import json
from typing import Dict, Optional

from .cryptosystem import PublicKey, SecretKey, decrypt, encrypt_any, error_locator, simplify_key
from .f2linalg import Word, vec_mat_T
from .goppa import locate_errors
from .polynomial import Poly


@dataclass
class FaultInjectionRecord:
    """One injection (p, d, p_tilde); p_tilde is None when the device rejected."""

    p: Word
    d: int
    p_tilde: Optional[Word]
    rejected: bool
    epsilon: Optional[int] = None

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "p": list(self.p.indices()),
                "d": self.d,
                "p_tilde": list(self.p_tilde.indices()) if self.p_tilde is not None else None,
                "rejected": self.rejected,
            },
            sort_keys=True,
        )


class FaultOracle:
    """Decryption device with a controllable fault in the locator register.

    The coefficient register file transfers all deg(g)+1 locator
    coefficients, so any degree d <= t is a valid target.
    """

    def __init__(
        self,
        sk: SecretKey,
        pk: PublicKey,
        *,
        weight_check: bool = False,
        reencrypt_check: bool = False,
        transparent: bool = False,
    ) -> None:
        self._sk = simplify_key(sk)
        self.pk = pk
        self.weight_check = weight_check
        self.reencrypt_check = reencrypt_check
        self.transparent = transparent
        self.injections = 0
        self.successes = 0
        self.rejections = 0

    @property
    def field(self):
        return self._sk.pair.field

    @property
    def params(self) -> Dict[str, int]:
        return self.pk.params

    def inject_fault(self, p: Word, d: int, rng, forced_epsilon: Optional[int] = None) -> FaultInjectionRecord:
        """Encrypt p, decrypt with the d-th locator coefficient corrupted.

        The fault is drawn uniformly from the field (zero included) unless
        forced in transparent mode.
        """
        t = self.pk.t
        if not 0 < p.weight <= t:
            raise ValueError(f"word weight {p.weight} outside (0, {t}]")
        if not 0 <= d <= t:
            raise ValueError(f"target degree {d} outside [0, {t}]")
        if forced_epsilon is not None and not self.transparent:
            raise ValueError("forcing the fault requires transparent mode")
        field = self.field
        c = encrypt_any(p, self.pk)
        eps = forced_epsilon if forced_epsilon is not None else rng.randrange(field.order)
        fault = Poly.monomial(field, d, eps)
        p_tilde = decrypt(c, self._sk, sigma_hook=lambda sigma: sigma + fault)
        self.injections += 1
        rejected = False
        if self.weight_check and p_tilde.weight != t:
            rejected = True
        if not rejected and self.reencrypt_check and vec_mat_T(p_tilde, self.pk.H_pub) != c:
            rejected = True
        if rejected:
            self.rejections += 1
        elif p_tilde.weight == 2:
            self.successes += 1
        return FaultInjectionRecord(
            p=p,
            d=d,
            p_tilde=None if rejected else p_tilde,
            rejected=rejected,
            epsilon=eps if self.transparent else None,
        )

    def enumerate_successful_faults(self, p: Word, d: int) -> int:
        """Count, over all 2^m fault values, those that terminate the
        matching injection-sequence loop.

        Constant shape (d=0, wt=2): terminates when wt(p~) = 2 and p~ != p.
        Quadratic shape (d=2, wt=1): terminates when wt(p~) = 2 (the
        alpha_i = 0 exit is subsumed: its output also has two roots in
        the support whenever it fires).  Countermeasures are ignored;
        this is a model computation, not a device interaction.
        """
        if not self.transparent:
            raise ValueError("enumeration requires transparent mode")
        constant = d == 0 and p.weight == 2
        quadratic = d == 2 and p.weight == 1
        if not constant and not quadratic:
            raise ValueError("word/degree shape is neither a constant nor a quadratic injection")
        field = self.field
        pair = self._sk.pair
        sigma = error_locator(encrypt_any(p, self.pk), self._sk)
        count = 0
        for eps in range(field.order):
            fault = Poly.monomial(field, d, eps)
            p_tilde = locate_errors(sigma + fault, pair.alpha, pair._index)
            if constant:
                if p_tilde.weight == 2 and p_tilde != p:
                    count += 1
            else:
                if p_tilde.weight == 2:
                    count += 1
        return count
