"""Fault-injection sequences and assembly of the fault equation system.

Harvested relations are sparse multivariate polynomials over GF(2^m) in
the unknown support coordinates x_0..x_{n-1}.  A monomial is a sorted
tuple of variable indices with multiplicity (() is the constant
monomial, (3, 3) is x_3^2); the canonical term order is graded
lexicographic with x_0 > x_1 > ... > x_{n-1}.

Everything here talks to the oracle through `inject_fault` and the
public key only; the secret material never crosses into this module.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .field import GF2m
from .f2linalg import Word
from .faultsim import FaultInjectionRecord


class BudgetExceeded(RuntimeError):
    """A Las Vegas sequence hit its injection cap."""


class NoQuadraticAnchor(RuntimeError):
    """No quadratic relation materialized, so no variable can be normalized."""


class TooFewRoots(ValueError):
    """General fault equations need at least two set bits in p~."""


Mono = Tuple[int, ...]


def _mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(sorted(a + b))


def _term_sort_key(mono: Mono):
    # graded lex, x_0 > x_1 > ...: higher degree first, then smaller index tuple
    return (-len(mono), mono)


class MultiPoly:
    """Sparse multivariate polynomial over a GF2m context."""

    __slots__ = ("field", "terms")

    def __init__(self, field: GF2m, terms: Optional[Dict[Mono, int]] = None) -> None:
        self.field = field
        self.terms: Dict[Mono, int] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    key = tuple(sorted(mono))
                    prev = self.terms.get(key, 0)
                    nxt = prev ^ c
                    if nxt:
                        self.terms[key] = nxt
                    else:
                        self.terms.pop(key, None)

    # -- constructors --

    @classmethod
    def zero(cls, field: GF2m) -> "MultiPoly":
        return cls(field)

    @classmethod
    def constant(cls, field: GF2m, c: int) -> "MultiPoly":
        return cls(field, {(): c})

    @classmethod
    def variable(cls, field: GF2m, v: int) -> "MultiPoly":
        return cls(field, {(v,): 1})

    # -- queries --

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(mo) for mo in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for mo in self.terms:
            out.update(mo)
        return out

    def is_homogeneous(self) -> bool:
        degs = {len(mo) for mo in self.terms}
        return len(degs) <= 1

    def sorted_terms(self) -> List[Tuple[Mono, int]]:
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]))

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.field == other.field and self.terms == other.terms

    def __repr__(self) -> str:
        if self.is_zero:
            return "MultiPoly(0)"
        bits = []
        for mo, c in self.sorted_terms():
            mono = "*".join(f"x{v}" for v in mo) if mo else "1"
            bits.append(f"{c:#x}*{mono}" if c != 1 or not mo else mono)
        return "MultiPoly(" + " + ".join(bits) + ")"

    # -- arithmetic --

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for mo, c in other.terms.items():
            nxt = out.get(mo, 0) ^ c
            if nxt:
                out[mo] = nxt
            else:
                out.pop(mo, None)
        res = MultiPoly(self.field)
        res.terms = out
        return res

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        mul = self.field.mul
        out: Dict[Mono, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                c = mul(ca, cb)
                if not c:
                    continue
                mo = _mono_mul(ma, mb)
                nxt = out.get(mo, 0) ^ c
                if nxt:
                    out[mo] = nxt
                else:
                    out.pop(mo, None)
        res = MultiPoly(self.field)
        res.terms = out
        return res

    def scale(self, c: int) -> "MultiPoly":
        if c == 0:
            return MultiPoly(self.field)
        mul = self.field.mul
        res = MultiPoly(self.field)
        res.terms = {mo: mul(c, cc) for mo, cc in self.terms.items()}
        return res

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point indexable by variable number."""
        mul = self.field.mul
        acc = 0
        for mo, c in self.terms.items():
            v = c
            for var in mo:
                v = mul(v, point[var])
                if not v:
                    break
            acc ^= v
        return acc

    def assign(self, var: int, value: int) -> "MultiPoly":
        """Substitute a single variable with a field value."""
        mul = self.field.mul
        out = MultiPoly(self.field)
        acc: Dict[Mono, int] = {}
        for mo, c in self.terms.items():
            if var not in mo:
                nxt = acc.get(mo, 0) ^ c
            else:
                rest = tuple(v for v in mo if v != var)
                k = len(mo) - len(rest)
                c = mul(c, self.field.pow(value, k))
                if not c:
                    continue
                mo = rest
                nxt = acc.get(mo, 0) ^ c
            if nxt:
                acc[mo] = nxt
            else:
                acc.pop(mo, None)
        out.terms = acc
        return out

    def substitute(self, images: Dict[int, "MultiPoly"]) -> "MultiPoly":
        """Replace each variable by its image (identity where absent)."""
        if not any(v in images for v in self.variables()):
            return self
        field = self.field
        total = MultiPoly(field)
        for mo, c in self.terms.items():
            prod = MultiPoly.constant(field, c)
            for var in mo:
                factor = images.get(var)
                if factor is None:
                    factor = MultiPoly.variable(field, var)
                prod = prod * factor
            total = total + prod
        return total

    # -- serialization --

    def to_json(self) -> List[Dict]:
        out = []
        for mo, c in self.sorted_terms():
            exps: Dict[str, int] = {}
            for v in mo:
                exps[str(v)] = exps.get(str(v), 0) + 1
            out.append({"coeff": c, "exps": exps})
        return out

    @classmethod
    def from_json(cls, field: GF2m, obj: Iterable[Dict]) -> "MultiPoly":
        terms: Dict[Mono, int] = {}
        for item in obj:
            mono: List[int] = []
            for v, e in item["exps"].items():
                mono.extend([int(v)] * e)
            terms[tuple(sorted(mono))] = item["coeff"]
        return cls(field, terms)


class FaultEquationSystem:
    """Harvested relations: linear set L1, quadratic-sequence set L2, and
    the normalizer x_i - 1 that fixes the scaling degree of freedom."""

    __slots__ = ("field", "n", "L1", "L2", "normalizer")

    def __init__(self, field: GF2m, n: int, L1: List[MultiPoly], L2: List[MultiPoly], normalizer: MultiPoly) -> None:
        self.field = field
        self.n = n
        self.L1 = L1
        self.L2 = L2
        self.normalizer = normalizer

    def all_polys(self) -> Iterator[MultiPoly]:
        yield from self.L1
        yield from self.L2
        yield self.normalizer

    def to_json(self) -> Dict:
        return {
            "context": self.field.to_json(),
            "n": self.n,
            "L1": [p.to_json() for p in self.L1],
            "L2": [p.to_json() for p in self.L2],
            "normalizer": self.normalizer.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Dict) -> "FaultEquationSystem":
        field = GF2m.from_json(obj["context"])
        return cls(
            field,
            obj["n"],
            [MultiPoly.from_json(field, p) for p in obj["L1"]],
            [MultiPoly.from_json(field, p) for p in obj["L2"]],
            MultiPoly.from_json(field, obj["normalizer"]),
        )


def default_budget(m: int) -> int:
    # expected cost per sequence is single digits; the cap only guards
    # pathological codes and countermeasure-protected devices
    return 64 << m


def constant_injection_sequence(oracle, i1: int, i2: int, rng, budget: Optional[int] = None) -> MultiPoly:
    """Inject p = e_(i1) + e_(i2) at degree 0 until the output is a fresh
    weight-2 word; return x_i1 + x_i2 + x_j1 + x_j2."""
    if i1 == i2:
        raise ValueError("indices must differ")
    if budget is None:
        budget = default_budget(oracle.pk.m)
    if budget < 1:
        raise ValueError("budget must be positive")
    field = oracle.field
    n = oracle.pk.n
    p = Word.from_indices(n, [i1, i2])
    for _ in range(budget):
        rec = oracle.inject_fault(p, 0, rng)
        if rec.rejected:
            continue
        pt = rec.p_tilde
        if pt.weight == 2 and pt != p:
            j1, j2 = pt.indices()
            return MultiPoly(field, {(i1,): 1, (i2,): 1, (j1,): 1, (j2,): 1})
    raise BudgetExceeded(f"constant sequence ({i1},{i2}) exhausted {budget} injections")


def quadratic_injection_sequence(oracle, i: int, rng, budget: Optional[int] = None) -> MultiPoly:
    """Inject p = e_(i) at degree 2 until a relation appears.

    Returns x_i when the output keeps index i with extra roots (meaning
    alpha_i = 0), else the quadratic x_i*x_j1 + x_i*x_j2 + x_j1*x_j2.
    """
    if budget is None:
        budget = default_budget(oracle.pk.m)
    if budget < 1:
        raise ValueError("budget must be positive")
    field = oracle.field
    n = oracle.pk.n
    p = Word.from_indices(n, [i])
    for _ in range(budget):
        rec = oracle.inject_fault(p, 2, rng)
        if rec.rejected:
            continue
        pt = rec.p_tilde
        if pt.weight > 1 and pt.bit(i):
            return MultiPoly.variable(field, i)
        if pt.weight == 2:
            j1, j2 = pt.indices()
            return MultiPoly(field, {(i, j1): 1, (i, j2): 1, (j1, j2): 1})
    raise BudgetExceeded(f"quadratic sequence ({i}) exhausted {budget} injections")


def general_fault_equations(rec: FaultInjectionRecord, field: GF2m) -> List[MultiPoly]:
    """One relation per pair {i, j} of set bits of p~:

        x_i^d * prod_k (x_j - x_k)  +  x_j^d * prod_k (x_i - x_k)

    over k in the support of p; degree d + wt(p), and C(wt(p~), 2)
    polynomials per injection.
    """
    if rec.p_tilde is None or rec.p_tilde.weight < 2:
        raise TooFewRoots("need at least two set bits in p~")
    d = rec.d
    idx_p = rec.p.indices()
    out = []
    for i, j in combinations(rec.p_tilde.indices(), 2):
        prod_j = MultiPoly.constant(field, 1)
        prod_i = MultiPoly.constant(field, 1)
        for k in idx_p:
            # built by addition so that (x_i - x_i) cancels to zero when k = i
            xk = MultiPoly.variable(field, k)
            prod_j = prod_j * (MultiPoly.variable(field, j) + xk)
            prod_i = prod_i * (MultiPoly.variable(field, i) + xk)
        xi_d = MultiPoly(field, {(i,) * d: 1})
        xj_d = MultiPoly(field, {(j,) * d: 1})
        out.append(xi_d * prod_j + xj_d * prod_i)
    return out


def build_fault_equation_system(
    oracle,
    rng,
    budget_per_seq: Optional[int] = None,
    max_anchor_retries: int = 16,
    seq_log: Optional[List[Dict]] = None,
) -> FaultEquationSystem:
    """Run constant sequences on the n cyclic index pairs and quadratic
    sequences on floor(n/10) random indices, then dehomogenize.

    The normalizer variable is the one that occurs most often in L1
    among variables present in some degree-2 member of L2 (ties to the
    lowest index).  A batch of quadratic sequences that yields no
    quadratic at all is discarded and redrawn.  `seq_log` collects one
    row per sequence with its injection count.
    """
    field = oracle.field
    n = oracle.pk.n

    def logged(kind, index, run):
        before = oracle.injections
        poly = run()
        if seq_log is not None:
            seq_log.append({"kind": kind, "index": index, "injections": oracle.injections - before})
        return poly

    L1 = [
        logged("constant", i, lambda i=i: constant_injection_sequence(oracle, i, (i + 1) % n, rng, budget_per_seq))
        for i in range(n)
    ]
    L2: List[MultiPoly] = []
    for _ in range(max_anchor_retries):
        idxs = sorted(rng.sample(range(n), n // 10))
        L2 = [
            logged("quadratic", i, lambda i=i: quadratic_injection_sequence(oracle, i, rng, budget_per_seq))
            for i in idxs
        ]
        if any(p.degree == 2 for p in L2):
            break
    else:
        raise NoQuadraticAnchor(f"no quadratic relation in {max_anchor_retries} batches")
    counts = Counter(v for poly in L1 for v in poly.variables())
    anchor_pool = {v for poly in L2 if poly.degree == 2 for v in poly.variables()}
    anchor = max(anchor_pool, key=lambda v: (counts[v], -v))
    normalizer = MultiPoly(field, {(anchor,): 1, (): 1})  # x_anchor - 1
    return FaultEquationSystem(field, n, L1, L2, normalizer)
