import random
from itertools import product

import pytest

from bign.attack import MultiPoly, build_fault_equation_system
from bign.cryptosystem import keygen
from bign.faultsim import FaultOracle
from bign.field import GF2m
from bign.solver import (
    InconsistentLinear,
    SolverOverflow,
    interreduce_linear,
    reduce_system,
    support_candidates,
    zero_set,
)


def brute_force_zeros(polys, variables, field):
    """Referee oracle: scan the full cartesian product, no pruning."""
    out = []
    dense_len = max(variables) + 1 if variables else 0
    for vals in product(range(field.order), repeat=len(variables)):
        point = [0] * dense_len
        for v, a in zip(variables, vals):
            point[v] = a
        if all(p.evaluate(point) == 0 for p in polys):
            out.append(vals)
    return sorted(out)


def make_system(m, t, n, seed):
    sk, pk = keygen(m, t, n, random.Random(seed))
    oracle = FaultOracle(sk, pk, transparent=True)
    rng = random.Random(seed + 1000)
    system = build_fault_equation_system(oracle, rng)
    return oracle, system


def lin(field, terms, const=0):
    d = {(v,): c for v, c in terms.items()}
    if const:
        d[()] = const
    return MultiPoly(field, d)


class TestInterreduce:
    def test_two_step_elimination(self, gf16):
        polys = [lin(gf16, {0: 1, 1: 1}), lin(gf16, {1: 1, 2: 1})]
        ells, submap = interreduce_linear(polys, gf16, 3)
        assert submap.r == 2
        assert set(submap.pivot_vars) == {0, 1}
        assert submap.free_vars == (2,)
        # images contain no eliminated variables
        for img in submap.images.values():
            assert img.variables() <= {2}
        # applying the map to each generator gives zero
        for ell in ells:
            assert submap.apply(ell).is_zero

    def test_empty_input(self, gf16):
        ells, submap = interreduce_linear([], gf16, 5)
        assert ells == [] and submap.r == 0
        assert submap.free_vars == (0, 1, 2, 3, 4)

    def test_inconsistent(self, gf16):
        polys = [lin(gf16, {0: 1}), lin(gf16, {0: 1}, const=1)]
        with pytest.raises(InconsistentLinear):
            interreduce_linear(polys, gf16, 2)

    def test_dependent_rows_are_dropped(self, gf16):
        polys = [lin(gf16, {0: 1, 1: 1}), lin(gf16, {0: 1, 1: 1})]
        _, submap = interreduce_linear(polys, gf16, 2)
        assert submap.r == 1

    def test_generators_vanish_at_normalized_support(self):
        # the linear set includes the normalizer, so the anchored scaling
        # of the true support is the honest witness
        oracle, system = make_system(4, 2, 16, 40)
        field = system.field
        alpha = oracle._sk.pair.alpha
        anchor = next(iter(system.normalizer.variables()))
        inv = field.inv(alpha[anchor])
        scaled = [field.mul(inv, a) for a in alpha]
        linear = [p for p in system.all_polys() if p.degree == 1]
        ells, submap = interreduce_linear(linear, system.field, 16)
        assert ells
        for ell in ells:
            assert ell.evaluate(scaled) == 0


class TestReduceSystem:
    def test_all_linear_system_reduces_to_nothing(self, gf16):
        from bign.attack import FaultEquationSystem
        L1 = [lin(gf16, {0: 1, 1: 1, 2: 1, 3: 1})]
        norm = lin(gf16, {0: 1}, const=1)
        system = FaultEquationSystem(gf16, 4, L1, [], norm)
        linear = [p for p in system.all_polys() if p.degree <= 1]
        _, submap = interreduce_linear(linear, gf16, 4)
        assert reduce_system(system, submap) == []

    def test_reduced_lives_on_free_vars_and_keeps_truth(self):
        oracle, system = make_system(6, 4, 40, 41)
        alpha = oracle._sk.pair.alpha
        linear = [p for p in system.all_polys() if p.degree <= 1]
        _, submap = interreduce_linear(linear, system.field, 40)
        reduced = reduce_system(system, submap)
        free = set(submap.free_vars)
        gamma = list(alpha)
        for poly in reduced:
            assert poly.variables() <= free
            assert poly.degree <= 2
        # the true support normalized by the anchor satisfies the reduced system
        anchor = next(iter(system.normalizer.variables()))
        inv = system.field.inv(alpha[anchor])
        scaled = [system.field.mul(inv, a) for a in alpha]
        for poly in reduced:
            assert poly.evaluate(scaled) == 0

    def test_lift_point_roundtrip(self):
        oracle, system = make_system(4, 2, 16, 42)
        field = system.field
        linear = [p for p in system.all_polys() if p.degree <= 1]
        _, submap = interreduce_linear(linear, field, 16)
        alpha = oracle._sk.pair.alpha
        anchor = next(iter(system.normalizer.variables()))
        inv = field.inv(alpha[anchor])
        scaled = [field.mul(inv, a) for a in alpha]
        assignment = {v: scaled[v] for v in submap.free_vars}
        assert submap.lift_point(assignment) == tuple(scaled)


class TestZeroSet:
    def test_empty_system_no_vars(self, gf16):
        assert zero_set([], (), gf16) == [()]

    def test_single_square_equation(self, gf16):
        a = 11
        poly = MultiPoly(gf16, {(0, 0): 1, (): gf16.mul(a, a)})  # x^2 + a^2
        assert zero_set([poly], (0,), gf16) == [(a,)]

    def test_methods_agree_on_random_small_systems(self, gf16):
        rng = random.Random(43)
        for _ in range(40):
            k = rng.randrange(1, 4)
            vars_ = tuple(range(k))
            polys = []
            for _ in range(rng.randrange(1, 4)):
                terms = {}
                for _ in range(rng.randrange(1, 5)):
                    mono = tuple(sorted(rng.sample(range(k), rng.randrange(1, min(3, k + 1)))))
                    terms[mono] = rng.randrange(1, 16)
                if rng.getrandbits(1):
                    terms[()] = rng.randrange(16)
                polys.append(MultiPoly(gf16, terms))
            brute = brute_force_zeros(polys, vars_, gf16)
            assert zero_set(polys, vars_, gf16, method="enumerate") == brute
            assert zero_set(polys, vars_, gf16, method="groebner") == brute

    def test_var_cap(self, gf16):
        with pytest.raises(SolverOverflow):
            zero_set([], tuple(range(30)), gf16)

    def test_attack_instance_matches_brute_force(self):
        # real reduced systems at m=4: engine output == full product scan
        field = GF2m(4)
        for seed in (50, 51, 52):
            oracle, system = make_system(4, 2, 16, seed)
            linear = [p for p in system.all_polys() if p.degree <= 1]
            _, submap = interreduce_linear(linear, field, 16)
            reduced = reduce_system(system, submap)
            free = submap.free_vars
            if len(free) > 4:
                continue
            brute = brute_force_zeros(reduced, free, field)
            assert zero_set(reduced, free, field, method="groebner") == brute
            assert zero_set(reduced, free, field, method="enumerate") == brute


class TestSupportCandidates:
    def test_normalized_true_support_is_found(self):
        for (m, t, n, seed) in [(4, 2, 16, 60), (4, 2, 12, 61)]:
            oracle, system = make_system(m, t, n, seed)
            field = system.field
            alpha = oracle._sk.pair.alpha
            cands = support_candidates(system)
            anchor = next(iter(system.normalizer.variables()))
            inv = field.inv(alpha[anchor])
            scaled = tuple(field.mul(inv, a) for a in alpha)
            assert scaled in set(cands.candidates)

    def test_candidates_satisfy_system_and_distinctness(self):
        oracle, system = make_system(4, 2, 16, 62)
        cands = support_candidates(system)
        assert len(cands) > 0
        for cand in cands:
            assert len(set(cand)) == system.n
            for poly in system.all_polys():
                assert poly.evaluate(cand) == 0

    def test_scaling_classes_are_separated(self):
        # multiplying a candidate by b != 1 violates the normalizer
        oracle, system = make_system(4, 2, 16, 63)
        field = system.field
        cands = support_candidates(system)
        cand_set = set(cands.candidates)
        cand = cands.candidates[0]
        for b in range(2, field.order):
            scaled = tuple(field.mul(b, x) for x in cand)
            assert scaled not in cand_set

    def test_deterministic_order(self):
        _, system = make_system(4, 2, 16, 64)
        a = support_candidates(system).candidates
        b = support_candidates(system).candidates
        assert a == b
        assert a == sorted(a)

    def test_resolve_from_free_coordinates_reproduces_candidate(self):
        # dropping a candidate to the free coordinates and lifting again is the identity
        oracle, system = make_system(4, 2, 16, 65)
        linear = [p for p in system.all_polys() if p.degree <= 1]
        _, submap = interreduce_linear(linear, system.field, 16)
        cands = support_candidates(system)
        for cand in cands.candidates[:20]:
            assignment = {v: cand[v] for v in submap.free_vars}
            assert submap.lift_point(assignment) == cand
