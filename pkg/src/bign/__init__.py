"""Niederreiter cryptosystem over binary irreducible Goppa codes (BIG-N),
a fault-injection oracle for its decryption pipeline, and the key-recovery
attack that extracts an alternative secret pair from harvested faults."""

__version__ = "0.1.0"

from .field import GF2m
from .f2linalg import BitMatrix, Word
from .polynomial import Poly
from .goppa import GeneratingPair, random_goppa
from .cryptosystem import (
    AlternativeSecretPair,
    PublicKey,
    SecretKey,
    alt_decrypt,
    decrypt,
    encrypt,
    encrypt_any,
    keygen,
    simplify_key,
)
from .faultsim import FaultOracle
from .extender import fault_attack

__all__ = [
    "GF2m",
    "BitMatrix",
    "Word",
    "Poly",
    "GeneratingPair",
    "random_goppa",
    "AlternativeSecretPair",
    "PublicKey",
    "SecretKey",
    "keygen",
    "simplify_key",
    "encrypt",
    "encrypt_any",
    "decrypt",
    "alt_decrypt",
    "FaultOracle",
    "fault_attack",
]
