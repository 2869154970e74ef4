"""Command line interface: keygen, encrypt, decrypt, inject, attack,
stats, verify.  Everything is reproducible from --seed."""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from statistics import pstdev
from typing import Dict, List, Optional, Tuple

from . import cryptosystem as cs
from .attack import BudgetExceeded, NoQuadraticAnchor, default_budget
from .extender import Exhausted, fault_attack
from .f2linalg import Word
from .faultsim import FaultOracle
from .goppa import DecodeFailure, ParameterViolation
from .solver import SolverOverflow


# recommended code parameters per security level (n, m, t)
SECURITY_LEVELS: Dict[str, Tuple[int, int, int]] = {
    "insec": (1024, 10, 38),
    "short1": (2048, 11, 27),
    "short2": (1632, 11, 33),
    "mid1": (2960, 12, 56),
    "mid2": (3408, 12, 67),
    "long1": (4624, 13, 95),
    "long2": (6624, 13, 115),
    "long3": (6960, 13, 119),
}

_LARGE_M = 10  # anything above needs --large


@dataclass
class RunConfig:
    m: int
    t: int
    n: int
    seed: int = 0
    countermeasures: Tuple[str, ...] = ()
    budget: Optional[int] = None
    codes: int = 3
    words: int = 200
    out: Optional[Path] = None
    large: bool = False

    def __post_init__(self):
        if not (self.m * self.t < self.n <= (1 << self.m)):
            raise ParameterViolation(f"need m*t < n <= 2^m, got m={self.m} t={self.t} n={self.n}")
        for c in self.countermeasures:
            if c not in ("weight", "reencrypt"):
                raise ParameterViolation(f"unknown countermeasure {c!r}")
        if self.m > _LARGE_M and not self.large:
            raise ParameterViolation(
                f"m={self.m} implies a multi-minute run; pass --large to confirm"
            )


def _parse_params(args) -> Tuple[int, int, int]:
    if args.level is not None:
        n, m, t = SECURITY_LEVELS[args.level]
        return m, t, n
    if args.params is None:
        raise ParameterViolation("one of --params or --level is required")
    try:
        m, t, n = (int(x) for x in args.params.split(","))
    except ValueError as exc:
        raise ParameterViolation(f"--params must be m,t,n: {args.params!r}") from exc
    return m, t, n


def _config(args) -> RunConfig:
    m, t, n = _parse_params(args)
    return RunConfig(
        m=m,
        t=t,
        n=n,
        seed=args.seed,
        countermeasures=tuple(args.countermeasures.split(",")) if getattr(args, "countermeasures", "") else (),
        budget=getattr(args, "budget", None),
        codes=getattr(args, "codes", 3),
        words=getattr(args, "words", 200),
        out=Path(args.out) if getattr(args, "out", None) else None,
        large=getattr(args, "large", False),
    )


def _emit(obj: Dict) -> None:
    print(json.dumps(obj, sort_keys=True))


# -- subcommands ---------------------------------------------------------------


def cmd_keygen(args) -> int:
    cfg = _config(args)
    rng = random.Random(cfg.seed)
    sk, pk = cs.keygen(cfg.m, cfg.t, cfg.n, rng)
    prefix = cfg.out or Path("key")
    sk_path = prefix.with_suffix(".sk.json")
    pk_path = prefix.with_suffix(".pk.json")
    cs.dump_json(cs.secret_key_to_json(sk, pk), sk_path)
    cs.dump_json(cs.public_key_to_json(pk), pk_path)
    _emit({"secret_key": str(sk_path), "public_key": str(pk_path), "params": pk.params})
    return 0


def _load_public(path: str) -> cs.PublicKey:
    obj = cs.load_json(path)
    if obj.get("kind") == "secret_key":
        return cs.secret_key_from_json(obj)[1]
    return cs.public_key_from_json(obj)


def cmd_encrypt(args) -> int:
    pk = _load_public(args.key)
    if args.plaintext:
        p = Word.from_json({"hex": args.plaintext, "bits": pk.n})
    else:
        p = cs.random_plaintext(pk.n, pk.t, random.Random(args.seed))
    c = cs.encrypt(p, pk)
    out = {"plaintext": p.to_json(), "ciphertext": c.to_json()}
    if args.out:
        cs.dump_json(c.to_json(), Path(args.out))
        out["path"] = args.out
    _emit(out)
    return 0


def cmd_decrypt(args) -> int:
    sk, pk = cs.secret_key_from_json(cs.load_json(args.key))
    obj = cs.load_json(args.ciphertext)
    c = Word.from_json(obj)
    p = cs.decrypt(c, sk)
    _emit({"plaintext": p.to_json(), "weight": p.weight})
    return 0


def cmd_inject(args) -> int:
    sk, pk = cs.secret_key_from_json(cs.load_json(args.key))
    oracle = FaultOracle(
        sk,
        pk,
        weight_check="weight" in (args.countermeasures or "").split(","),
        reencrypt_check="reencrypt" in (args.countermeasures or "").split(","),
    )
    indices = [int(x) for x in args.indices.split(",")]
    p = Word.from_indices(pk.n, indices)
    rng = random.Random(args.seed)
    for _ in range(args.count):
        rec = oracle.inject_fault(p, args.degree, rng)
        print(rec.to_json_line())
    return 0


def cmd_attack(args) -> int:
    from .report import write_attack_outputs

    cfg = _config(args)
    rng = random.Random(cfg.seed)
    if args.key:
        sk, pk = cs.secret_key_from_json(cs.load_json(args.key))
    else:
        sk, pk = cs.keygen(cfg.m, cfg.t, cfg.n, rng)
    oracle = FaultOracle(
        sk,
        pk,
        weight_check="weight" in cfg.countermeasures,
        reencrypt_check="reencrypt" in cfg.countermeasures,
    )
    budget = cfg.budget if cfg.budget is not None else default_budget(cfg.m)
    report: Dict = {
        "params": pk.params,
        "seed": cfg.seed,
        "countermeasures": list(cfg.countermeasures),
        "budget_per_sequence": budget,
    }
    inner: Dict = {}
    t0 = time.perf_counter()
    try:
        alt = fault_attack(oracle, pk, rng, budget_per_seq=budget, report=inner)
        defeated = False
    except (BudgetExceeded, NoQuadraticAnchor) as exc:
        defeated = True
        report.update(
            {
                "defeated": True,
                "injections": oracle.injections,
                "rejections": oracle.rejections,
                "reason": f"{type(exc).__name__}: {exc}",
                "verdict": "DEFEATED",
            }
        )
        seq_rows: List[Dict] = []
    if not defeated:
        seq_rows = inner.pop("sequence_log") or []
        t1 = time.perf_counter()
        verify_rng = random.Random(cfg.seed + 0x5EED)
        good = 0
        trials = args.verify_trials
        for _ in range(trials):
            p = cs.random_plaintext(pk.n, pk.t, verify_rng)
            try:
                good += cs.alt_decrypt(cs.encrypt(p, pk), pk, alt) == p
            except DecodeFailure:
                pass
        t2 = time.perf_counter()
        measured = inner["injections"]
        expected = report_expected_injections(pk.n, report_p_hats(oracle, pk, rng))
        report.update(inner)
        report.update(
            {
                "defeated": False,
                "verdict": "PASS" if good == trials else "FAIL",
                "verified": f"{good}/{trials}",
                "expected_injections_from_measured_rates": expected,
                "timings": {
                    "build_system": inner["time_build_system"],
                    "solve": inner["time_solve"],
                    "extend": inner["time_extend"],
                    "verify": t2 - t1,
                    "total": t2 - t0,
                },
            }
        )
        if cfg.out:
            cfg.out.mkdir(parents=True, exist_ok=True)
            alt_path = cfg.out / "alternative_pair.json"
            cs.dump_json(alt.to_json(), alt_path)
            report["alternative_pair"] = str(alt_path)
            pk_path = cfg.out / "public_key.json"
            cs.dump_json(cs.public_key_to_json(pk), pk_path)
            report["public_key"] = str(pk_path)
    if cfg.out:
        paths = write_attack_outputs(report, seq_rows, cfg.out)
        report["outputs"] = [str(p) for p in paths]
    _emit(report)
    return 0 if report["verdict"] in ("PASS", "DEFEATED") else 1


def report_p_hats(oracle: FaultOracle, pk: cs.PublicKey, rng, sample: int = 24) -> Tuple[float, float]:
    """Estimated success probabilities from exhaustive fault enumeration on
    a small sample of words (transparent clone of the oracle)."""
    probe = FaultOracle(oracle._sk, pk, transparent=True)
    n = pk.n
    const_counts = []
    quad_counts = []
    for _ in range(sample):
        i1, i2 = rng.sample(range(n), 2)
        const_counts.append(probe.enumerate_successful_faults(Word.from_indices(n, [i1, i2]), 0))
        quad_counts.append(probe.enumerate_successful_faults(Word.from_indices(n, [rng.randrange(n)]), 2))
    order = probe.field.order
    return (sum(const_counts) / len(const_counts) / order,
            sum(quad_counts) / len(quad_counts) / order)


def report_expected_injections(n: int, p_hats: Tuple[float, float]) -> float:
    p0, p2 = p_hats
    if p0 == 0 or p2 == 0:
        return float("inf")
    return n / p0 + (n // 10) / p2


def cmd_stats(args) -> int:
    from .report import write_stats_outputs

    cfg = _config(args)
    rng = random.Random(cfg.seed)
    order = 1 << cfg.m
    rows: List[Dict] = []
    const_avgs: List[float] = []
    quad_avgs: List[float] = []
    for code_idx in range(cfg.codes):
        sk, pk = cs.keygen(cfg.m, cfg.t, cfg.n, rng)
        oracle = FaultOracle(sk, pk, transparent=True)
        n = cfg.n
        npairs = n * (n - 1) // 2
        pairs = set()
        while len(pairs) < min(cfg.words, npairs):
            i1, i2 = rng.sample(range(n), 2)
            pairs.add((min(i1, i2), max(i1, i2)))
        const_counts = []
        for i1, i2 in sorted(pairs):
            count = oracle.enumerate_successful_faults(Word.from_indices(n, [i1, i2]), 0)
            const_counts.append(count)
            rows.append({"code": code_idx, "kind": "constant", "word": f"{i1}+{i2}", "successful_faults": count})
        idxs = rng.sample(range(n), min(cfg.words, n))
        quad_counts = []
        for i in sorted(idxs):
            count = oracle.enumerate_successful_faults(Word.from_indices(n, [i]), 2)
            quad_counts.append(count)
            rows.append({"code": code_idx, "kind": "quadratic", "word": str(i), "successful_faults": count})
        const_avgs.append(sum(const_counts) / len(const_counts))
        quad_avgs.append(sum(quad_counts) / len(quad_counts))

    const_all = [r["successful_faults"] for r in rows if r["kind"] == "constant"]
    quad_all = [r["successful_faults"] for r in rows if r["kind"] == "quadratic"]
    p0 = sum(const_avgs) / len(const_avgs) / order
    p2 = sum(quad_avgs) / len(quad_avgs) / order
    report = {
        "params": {"m": cfg.m, "t": cfg.t, "n": cfg.n},
        "seed": cfg.seed,
        "codes": cfg.codes,
        "words": cfg.words,
        "constant": {
            "avg_successful_faults": sum(const_avgs) / len(const_avgs),
            "std_dev": pstdev(const_all) if len(const_all) > 1 else 0.0,
            "p_hat": p0,
        },
        "quadratic": {
            "avg_successful_faults": sum(quad_avgs) / len(quad_avgs),
            "std_dev": pstdev(quad_all) if len(quad_all) > 1 else 0.0,
            "p_hat": p2,
        },
        "expected_total_injections": report_expected_injections(cfg.n, (p0, p2)),
    }
    if cfg.out:
        paths = write_stats_outputs(report, rows, cfg.out)
        report["outputs"] = [str(p) for p in paths]
    _emit(report)
    return 0


def cmd_verify(args) -> int:
    pk = _load_public(args.key)
    alt = cs.AlternativeSecretPair.from_json(cs.load_json(args.alt))
    rng = random.Random(args.seed)
    good = 0
    for _ in range(args.trials):
        p = cs.random_plaintext(pk.n, pk.t, rng)
        try:
            good += cs.alt_decrypt(cs.encrypt(p, pk), pk, alt) == p
        except (DecodeFailure, ParameterViolation):
            pass
    verdict = "PASS" if good == args.trials else "FAIL"
    _emit({"verdict": verdict, "verified": f"{good}/{args.trials}"})
    return 0 if verdict == "PASS" else 1


# -- parser --------------------------------------------------------------------


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--params", help="m,t,n")
    p.add_argument("--level", choices=sorted(SECURITY_LEVELS), help="named parameter set")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--large", action="store_true", help="confirm multi-minute parameter sets")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_param_flags(p)
    p.add_argument("--out", help="output path prefix (default: key)")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a weight-t plaintext")
    p.add_argument("--key", required=True, help="public (or secret) key file")
    p.add_argument("--plaintext", help="hex word of length n; random when omitted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="ciphertext output file")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext")
    p.add_argument("--key", required=True, help="secret key file")
    p.add_argument("--ciphertext", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("inject", help="run fault injections and stream JSON lines")
    p.add_argument("--key", required=True, help="secret key file (the device under test)")
    p.add_argument("--indices", required=True, help="comma-separated set bits of p")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--countermeasures", default="", help="comma subset of weight,reencrypt")
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("attack", help="run the full key-recovery attack")
    _add_param_flags(p)
    p.add_argument("--key", help="attack an existing secret-key file instead of a fresh key")
    p.add_argument("--countermeasures", default="", help="comma subset of weight,reencrypt")
    p.add_argument("--budget", type=int, help="injection cap per sequence (default 64*2^m)")
    p.add_argument("--verify-trials", type=int, default=100)
    p.add_argument("--out", help="report directory (JSON, CSV and figures)")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("stats", help="success-probability harness")
    _add_param_flags(p)
    p.add_argument("--codes", type=int, default=3)
    p.add_argument("--words", type=int, default=200)
    p.add_argument("--out", help="report directory (JSON, CSV and figures)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check an alternative pair against a public key")
    p.add_argument("--key", required=True, help="public key file")
    p.add_argument("--alt", required=True, help="alternative pair file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterViolation as exc:
        print(json.dumps({"error": "ParameterViolation", "message": str(exc)}), file=sys.stderr)
        return 2
    except (DecodeFailure, BudgetExceeded, NoQuadraticAnchor, Exhausted, SolverOverflow,
            cs.WeightViolation, ValueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
