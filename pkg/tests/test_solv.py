import random
from fractions import Fraction

import pytest

from oracles import (
    direct_pair_solvable,
    direct_sol_of_algebra,
    direct_solvabilizer,
    is_additively_closed_indices,
)
from solvgraph.liealg import (
    LinearMap,
    center,
    centralizer,
    conjugation_automorphism,
    make_t,
    radical,
)
from solvgraph.solv import (
    SolvCache,
    conjecture_sum,
    divisibility_report,
    equivariance_check,
    is_s_lie,
    pair_solvable,
    quotient_compatibility_check,
    sol_of_algebra,
    solvabilizer,
    solvabilizer_set,
)

# frozen by the elementwise oracle: indices of sol_L(h) in sl2(F_3)
SL2_3_SOL_H = (0, 1, 2, 3, 6, 9, 10, 11, 12, 15, 18, 19, 20, 21, 24)

# frozen lexicographically smallest failing triple in sl2(F_3): the first
# solvabilizer that is not additively closed belongs to e+f (index 4)
SL2_3_WITNESS = ((1, 1, 0), (1, 0, 1), (2, 0, 1))


class TestPairSolvable:
    def test_h_with_e(self, sl2_3):
        assert pair_solvable(sl2_3, (0, 0, 1), (1, 0, 0))

    def test_h_with_e_plus_f(self, sl2_3):
        assert not pair_solvable(sl2_3, (0, 0, 1), (1, 1, 0))

    def test_anything_with_zero(self, sl2_3, w3):
        for L in (sl2_3, w3):
            for m in range(L.size):
                assert pair_solvable(L, L.vector(m), L.zero())

    def test_b_with_c_in_w3(self, w3):
        assert not pair_solvable(w3, (0, 1, 0), (0, 0, 1))

    def test_cache_agrees_with_direct_computation(self, sl2_3, w3):
        # the memo key assumes the generated subalgebra only depends on the
        # span of the pair; check every pair against fresh closures
        for L in (sl2_3, w3):
            cache = SolvCache()
            for i in range(L.size):
                x = L.vector(i)
                for j in range(L.size):
                    y = L.vector(j)
                    assert pair_solvable(L, x, y, cache) == \
                        direct_pair_solvable(L, x, y)

    def test_symmetry_exhaustive_small_fields(self, sl2_2, sl2_3, w3):
        for L in (sl2_2, w3, sl2_3):
            for i in range(L.size):
                x = L.vector(i)
                for j in range(i + 1, L.size):
                    y = L.vector(j)
                    assert direct_pair_solvable(L, x, y) == \
                        direct_pair_solvable(L, y, x)

    def test_scale_invariance_exhaustive_f3(self, sl2_3):
        L = sl2_3
        for i in range(L.size):
            x = L.vector(i)
            for j in range(i, L.size):
                y = L.vector(j)
                base = direct_pair_solvable(L, x, y)
                for a in (1, 2):
                    for b in (1, 2):
                        xs = tuple(a * v % 3 for v in x)
                        ys = tuple(b * v % 3 for v in y)
                        assert direct_pair_solvable(L, xs, ys) == base

    def test_scale_invariance_randomized_f5(self, sl2_5):
        L = sl2_5
        rng = random.Random(20)
        cache = SolvCache()
        for _ in range(200):
            x = tuple(rng.randrange(5) for _ in range(3))
            y = tuple(rng.randrange(5) for _ in range(3))
            base = pair_solvable(L, x, y, cache)
            a, b = rng.randrange(1, 5), rng.randrange(1, 5)
            xs = tuple(a * v % 5 for v in x)
            ys = tuple(b * v % 5 for v in y)
            assert pair_solvable(L, xs, ys, cache) == base
            assert pair_solvable(L, y, x, cache) == base


class TestSolvabilizer:
    def test_w3_a_sees_everything(self, w3):
        assert solvabilizer(w3, (1, 0, 0)) == tuple(range(8))

    def test_w3_b(self, w3):
        # 0, a, b, a+b
        assert solvabilizer(w3, (0, 1, 0)) == (0, 1, 2, 3)

    def test_sl2_3_h(self, sl2_3):
        sol = solvabilizer(sl2_3, (0, 0, 1))
        assert len(sol) == 15
        assert sol == SL2_3_SOL_H

    def test_zero_sees_everything(self, sl2_3):
        assert solvabilizer(sl2_3, (0, 0, 0)) == tuple(range(27))

    def test_matches_elementwise_oracle(self, sl2_3, w3, gl2_3):
        for L in (w3, sl2_3, gl2_3):
            for line in L.lines()[:6]:
                x = L.vector(line[0])
                assert solvabilizer(L, x) == direct_solvabilizer(L, x)

    def test_own_multiples_always_present(self, sl2_3, w3):
        for L in (sl2_3, w3):
            p = L.field.p
            for line in L.lines():
                x = L.vector(line[0])
                members = set(solvabilizer(L, x))
                for t in range(p):
                    assert L.index(tuple(t * v % p for v in x)) in members


class TestSolvabilizerSet:
    def test_empty_a_gives_empty(self, w3):
        assert solvabilizer_set(w3, [], [1, 2]) == ()

    def test_empty_b_gives_a(self, w3):
        assert solvabilizer_set(w3, [3, 1, 2], []) == (1, 2, 3)

    def test_w3_whole_algebra_against_b(self, w3):
        assert solvabilizer_set(w3, range(8), [2]) == (0, 1, 2, 3)

    def test_monotonicity_and_intersection_identities(self, sl2_3, w3):
        # for A subset of B: sol_A(C) = A n sol_B(C) and the two
        # inclusion directions; plus the union/intersection laws
        for L in (sl2_3, w3):
            rng = random.Random(21)
            universe = list(range(L.size))
            for _ in range(20):
                B = rng.sample(universe, rng.randrange(1, 8))
                A = rng.sample(B, rng.randrange(1, len(B) + 1))
                C = rng.sample(universe, rng.randrange(1, 8))
                sol_a_c = set(solvabilizer_set(L, A, C))
                sol_b_c = set(solvabilizer_set(L, B, C))
                assert sol_a_c <= sol_b_c
                assert set(solvabilizer_set(L, C, B)) <= set(solvabilizer_set(L, C, A))
                assert sol_a_c == set(A) & sol_b_c
                union = set(A) | set(C)
                inter = set(A) & set(C)
                sol_c_union = set(solvabilizer_set(L, B, union))
                assert sol_c_union == (set(solvabilizer_set(L, B, A))
                                       & set(solvabilizer_set(L, B, C)))
                sol_c_inter = set(solvabilizer_set(L, B, inter))
                assert sol_c_inter >= (set(solvabilizer_set(L, B, A))
                                       | set(solvabilizer_set(L, B, C)))

    def test_reflexivity_identity_reported(self, sl2_3, w3):
        # sol_A(sol_B(A)) should give back A; collect violations instead of
        # asserting pair by pair so a failure names the offending sets
        violations = []
        for L in (sl2_3, w3):
            rng = random.Random(22)
            universe = list(range(L.size))
            for _ in range(25):
                A = rng.sample(universe, rng.randrange(1, 8))
                B = rng.sample(universe, rng.randrange(1, 8))
                inner = solvabilizer_set(L, B, A)
                outer = solvabilizer_set(L, A, inner)
                if set(outer) != set(A):
                    violations.append((L.name, sorted(A), sorted(B), outer))
        assert not violations, f"reflexivity identity failed: {violations}"

    def test_pointwise_intersection_identity(self, w3):
        # sol_A(B) = intersection over b of sol_A({b})
        universe = list(range(8))
        rng = random.Random(23)
        for _ in range(20):
            A = rng.sample(universe, rng.randrange(1, 8))
            B = rng.sample(universe, rng.randrange(1, 8))
            expected = set(A)
            for b in B:
                expected &= set(solvabilizer_set(w3, A, [b]))
            assert set(solvabilizer_set(w3, A, B)) == expected


class TestSolOfAlgebra:
    def test_sl2_f3_trivial(self, sl2_3):
        assert sol_of_algebra(sl2_3) == (0,)

    def test_sl2_f2_everything(self, sl2_2):
        assert sol_of_algebra(sl2_2) == tuple(range(8))

    def test_gl2_f3_scalars(self, gl2_3):
        got = sol_of_algebra(gl2_3)
        scalars = sorted(gl2_3.index((t, 0, 0, t)) for t in range(3))
        assert got == tuple(scalars)

    def test_agrees_with_elementwise_oracle(self, sl2_2, sl2_3, w3, gl2_3, t2_3):
        for L in (sl2_2, w3, sl2_3, gl2_3, t2_3):
            assert sol_of_algebra(L) == direct_sol_of_algebra(L)

    def test_equals_intersection_of_solvabilizers(self, sl2_3, w3):
        for L in (sl2_3, w3):
            cache = SolvCache()
            expected = set(range(L.size))
            for m in range(L.size):
                expected &= set(solvabilizer(L, L.vector(m), cache))
            assert set(sol_of_algebra(L, cache)) == expected

    def test_absorbed_by_every_solvabilizer(self, sl2_3, w3, gl2_3):
        # sol(L) + sol_L(x) = sol_L(x), elementwise
        for L in (sl2_3, w3, gl2_3):
            p = L.field.p
            cache = SolvCache()
            sol_l = [L.vector(m) for m in sol_of_algebra(L, cache)]
            for line in L.lines()[:8]:
                x = L.vector(line[0])
                members = set(solvabilizer(L, x, cache))
                for a in list(members):
                    av = L.vector(a)
                    for s in sol_l:
                        shifted = tuple((u + v) % p for u, v in zip(av, s))
                        assert L.index(shifted) in members


class TestSLie:
    def test_w3_is_s_lie(self, w3):
        assert is_s_lie(w3) == (True, None)

    def test_solvable_algebra_is_s_lie(self, t2_3):
        verdict, witness = is_s_lie(t2_3)
        assert verdict and witness is None

    def test_sl2_f3_fails_with_smallest_witness(self, sl2_3):
        verdict, witness = is_s_lie(sl2_3)
        assert not verdict
        assert witness == SL2_3_WITNESS

    def test_witness_is_valid(self, sl2_3):
        _, (x, a, b) = is_s_lie(sl2_3)
        members = set(solvabilizer(sl2_3, x))
        assert sl2_3.index(a) in members
        assert sl2_3.index(b) in members
        total = tuple((u + v) % 3 for u, v in zip(a, b))
        assert (sl2_3.index(total) not in members
                or sl2_3.index(sl2_3.bracket(a, b)) not in members)

    def test_classic_sum_escape_from_h(self, sl2_3):
        # e and f both pair solvably with h, yet e+f does not: the standard
        # demonstration that a solvabilizer need not be closed under addition
        sol_h = set(solvabilizer(sl2_3, (0, 0, 1)))
        assert sl2_3.index((1, 0, 0)) in sol_h
        assert sl2_3.index((0, 1, 0)) in sol_h
        assert sl2_3.index((1, 1, 0)) not in sol_h

    def test_s_lie_example_solvabilizers_are_subalgebras(self, w3):
        # every solvabilizer of the char-2 simple algebra is a subalgebra:
        # they are spans of (a and one other line), checked additively here
        for line in w3.lines():
            x = w3.vector(line[0])
            sol = solvabilizer(w3, x)
            assert is_additively_closed_indices(w3, sol)


class TestConjectureSum:
    def test_published_values(self, sl2_3, sl2_5, gl2_3):
        assert conjecture_sum(sl2_3) == (297, 27, True, 11)
        assert conjecture_sum(sl2_5) == (3625, 125, True, 29)
        assert conjecture_sum(gl2_3) == (2673, 81, True, 33)

    def test_line_shortcut_matches_direct_sum(self, sl2_3, w3):
        for L in (sl2_3, w3):
            direct = sum(len(direct_solvabilizer(L, L.vector(m)))
                         for m in range(L.size))
            assert conjecture_sum(L).total == direct

    def test_solvable_algebra_distribution(self, t2_3):
        res = conjecture_sum(t2_3)
        # every solvabilizer is the whole algebra
        assert res.total == t2_3.size ** 2
        assert res.divisible and res.quotient == t2_3.size

    def test_quotient_exact_type(self, sl2_3):
        res = conjecture_sum(sl2_3)
        assert isinstance(res.quotient, int)
        assert Fraction(res.total, res.order) == res.quotient


class TestDivisibilityReport:
    def test_sl2_3_h(self, sl2_3):
        rep = divisibility_report(sl2_3, (0, 0, 1))
        assert rep.sol_size == 15
        assert rep.p_divides
        assert rep.sol_of_algebra_size == 1
        assert rep.sol_divides is True
        assert rep.centralizer_size == 3
        assert rep.centralizer_divides is None  # not an S-Lie algebra
        assert rep.coset_closed

    def test_w3_b(self, w3):
        rep = divisibility_report(w3, (0, 1, 0))
        assert rep.sol_size == 4
        assert rep.p_divides
        assert rep.sol_of_algebra_size == 2
        assert rep.sol_divides is True
        assert rep.centralizer_size == 2
        assert rep.centralizer_divides is True
        assert rep.coset_closed

    def test_zero_element(self, w3):
        rep = divisibility_report(w3, (0, 0, 0))
        assert rep.sol_size == 8
        assert rep.p_divides and rep.sol_divides and rep.centralizer_divides
        assert rep.coset_closed

    def test_p_divides_and_coset_everywhere_small(self, sl2_2, sl2_3, w3, gl2_3):
        for L in (sl2_2, w3, sl2_3, gl2_3):
            p = L.field.p
            cache = SolvCache()
            for line in L.lines():
                rep = divisibility_report(L, L.vector(line[0]), cache)
                assert rep.sol_size % p == 0
                assert rep.coset_closed

    def test_centralizer_inside_solvabilizer(self, sl2_3, w3, gl2_3):
        for L in (sl2_3, w3, gl2_3):
            cache = SolvCache()
            for line in L.lines():
                x = L.vector(line[0])
                members = set(solvabilizer(L, x, cache))
                for c in centralizer(L, x).elements():
                    assert L.index(c) in members

    def test_radical_inside_sol(self, sl2_3, w3, gl2_3, t2_3):
        for L in (sl2_3, w3, gl2_3, t2_3):
            members = set(sol_of_algebra(L))
            for v in radical(L).elements():
                assert L.index(v) in members


class TestEquivariance:
    def test_identity_map(self, sl2_3):
        eye = LinearMap(sl2_3.field, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        assert equivariance_check(sl2_3, eye, (1, 0, 0))

    def test_swap_conjugation_on_e(self, sl2_3):
        phi = conjugation_automorphism(sl2_3, ((0, 1), (1, 0)))
        assert equivariance_check(sl2_3, phi, (1, 0, 0))
        # and directly: sol_L(f) is the image of sol_L(e)
        sol_e = solvabilizer(sl2_3, (1, 0, 0))
        image = sorted(sl2_3.index(phi.apply(sl2_3.vector(m))) for m in sol_e)
        assert tuple(image) == solvabilizer(sl2_3, (0, 1, 0))

    def test_scaling_leaves_solvabilizer_alone(self, sl2_3):
        assert solvabilizer(sl2_3, (0, 0, 2)) == solvabilizer(sl2_3, (0, 0, 1))

    def test_invalid_map_rejected(self, sl2_3):
        broken = LinearMap(sl2_3.field, ((1, 0, 0), (0, 1, 0), (0, 1, 0)))
        with pytest.raises(ValueError, match="automorphism"):
            equivariance_check(sl2_3, broken, (1, 0, 0))


class TestQuotientCompatibility:
    def test_gl2_mod_center(self, gl2_3):
        assert quotient_compatibility_check(gl2_3, center(gl2_3))

    def test_zero_ideal_trivial(self, sl2_3):
        assert quotient_compatibility_check(sl2_3, sl2_3.zero_space())

    def test_solvable_algebra_mod_itself(self, t2_3):
        assert quotient_compatibility_check(t2_3, t2_3.full_space())

    def test_non_ideal_rejected(self, w3):
        from solvgraph.ffalg import rref
        span_a = rref([(1, 0, 0)], w3.field, ambient=3)
        with pytest.raises(ValueError, match="ideal"):
            quotient_compatibility_check(w3, span_a)

    def test_nonsolvable_ideal_rejected(self, gl2_3):
        # the traceless part is an ideal of gl2 but not a solvable one
        from solvgraph.ffalg import rref
        sl_part = rref([(1, 0, 0, 2), (0, 1, 0, 0), (0, 0, 1, 0)],
                       gl2_3.field, ambient=4)
        with pytest.raises(ValueError, match="solvable"):
            quotient_compatibility_check(gl2_3, sl_part)


class TestSolvableFamily:
    def test_every_solvabilizer_is_everything(self):
        for L in (make_t(2, 3), make_t(3, 2)):
            cache = SolvCache()
            for line in L.lines():
                x = L.vector(line[0])
                assert len(solvabilizer(L, x, cache)) == L.size
