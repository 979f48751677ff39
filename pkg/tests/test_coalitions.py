import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrvote.coalitions import (
    Coalition,
    _phi_argmax_masks,
    _phi_argmax_weak_literal,
    is_gsc,
    maximal_supporters,
    periphery,
    phi_argmax,
    strict_prefix_sets,
    underrep,
)
from scrvote.core import PreferenceProfile, bitset, mask_of
from scrvote.errors import ModeError, SizeGuardError
from scrvote.generate import (
    all_strict_orders,
    random_profile,
    seeded_profiles,
)

from fixtures import PERIPHERY_WEAK, REFINEMENT_FIVE, TWO_BLOC_EIGHT


def coalition(voters, support):
    return Coalition(frozenset(voters), frozenset(support))


class TestIsGsc:
    def test_weak_pair_supported_by_three(self):
        assert is_gsc(PERIPHERY_WEAK, [0, 1, 2], [0, 1])

    def test_strict_bloc_supports_triple(self):
        assert is_gsc(TWO_BLOC_EIGHT, [0, 1, 2, 3], [0, 1, 2])

    def test_own_top_class_always_supported(self):
        for profile in (TWO_BLOC_EIGHT, PERIPHERY_WEAK):
            for voter, order in enumerate(profile.orders):
                assert is_gsc(profile, [voter], order.classes[0])

    def test_non_prefix_rejected(self):
        assert not is_gsc(TWO_BLOC_EIGHT, [0], [1])


class TestPeriphery:
    def test_three_voter_closure(self):
        assert periphery(PERIPHERY_WEAK, coalition([0, 1, 2], [0, 1])) == {0, 1, 2, 3}

    def test_two_voter_closure_is_smaller(self):
        assert periphery(PERIPHERY_WEAK, coalition([0, 1], [0, 1])) == {0, 1, 3}

    def test_strict_periphery_equals_support(self):
        for c in strict_prefix_sets(TWO_BLOC_EIGHT):
            assert periphery(TWO_BLOC_EIGHT, c) == c.support


class TestUnderrep:
    def test_empty_committee(self):
        c = coalition([0, 1, 2], [0, 1, 2])
        assert underrep(frozenset(), c, c.support).value == 3

    def test_partial_committee(self):
        c = coalition([0, 1, 2], [0, 1, 2])
        score = underrep({0, 3}, c, c.support)
        assert score.value == Fraction(3, 2)
        assert score.seats_held == 1

    def test_fully_held_singleton(self):
        c = coalition([4], [2])
        assert underrep({2}, c, c.support).value == Fraction(1, 2)


class TestStrictPrefixSets:
    def test_refinement_profile_contains_expected_sets(self):
        found = {(c.support, c.voters) for c in strict_prefix_sets(REFINEMENT_FIVE)}
        assert (frozenset({0}), frozenset({0, 1})) in found
        assert (frozenset({0, 1, 2}), frozenset({0, 1, 2})) in found
        assert (frozenset({3}), frozenset({3, 4})) in found

    def test_single_voter(self):
        profile = PreferenceProfile.truncated([[0, 1]], m=3)
        sets = [(sorted(c.support), sorted(c.voters)) for c in strict_prefix_sets(profile)]
        assert sets == [([0], [0]), ([0, 1], [0])]

    def test_two_bloc_profile_merges_supporters(self):
        found = {c.support: c.voters for c in strict_prefix_sets(TWO_BLOC_EIGHT)}
        assert found[frozenset({0, 1, 2})] == {0, 1, 2, 3}

    def test_count_bounded_by_nm(self):
        for seed in range(30):
            profile = random_profile(random.Random(seed), "strict", 6, 6)
            assert len(strict_prefix_sets(profile)) <= profile.n * profile.m

    def test_mode_error_on_weak(self):
        with pytest.raises(ModeError):
            strict_prefix_sets(PERIPHERY_WEAK)


class TestPhiArgmax:
    def test_first_seat_full_domain(self):
        chosen, perif, score = phi_argmax(REFINEMENT_FIVE, (), range(4))
        assert chosen == coalition([0, 1, 2], [0, 1, 2])
        assert score.value == 3

    def test_first_seat_refined_domain(self):
        chosen, _, score = phi_argmax(REFINEMENT_FIVE, (), [0, 1, 2])
        assert chosen == coalition([0, 1], [0])
        assert score.value == 2

    def test_third_seat_refined_domain(self):
        chosen, _, score = phi_argmax(REFINEMENT_FIVE, {0, 3}, [0, 1, 2])
        assert chosen == coalition([2], [2])
        assert score.value == 1

    def test_weak_guard(self):
        rng = random.Random(0)
        big = random_profile(rng, "weak", n_max=13, m_max=4, n=13, m=4)
        with pytest.raises(SizeGuardError):
            phi_argmax(big, (), range(4))
        phi_argmax(big, (), range(4), allow_large=True)


def exhaustive_strict_argmax(profile, w, d):
    """All (voter subset, candidate subset) pairs, definition-level."""
    w_mask, d_mask = mask_of(w), mask_of(d)
    best = None
    for c_mask in range(1, 1 << profile.m):
        if c_mask & ~d_mask or c_mask == d_mask or not c_mask & ~w_mask:
            continue
        supporters = maximal_supporters(profile, bitset(c_mask))
        for size in range(1, len(supporters) + 1):
            for group in combinations(sorted(supporters), size):
                rho = Fraction(size, (c_mask & w_mask).bit_count() + 1)
                key = (
                    -rho,
                    (c_mask.bit_count(), tuple(sorted(bitset(c_mask)))),
                    (-size, group),
                )
                if best is None or key < best[0]:
                    best = (key, frozenset(group), bitset(c_mask))
    return best and (best[1], best[2])


class TestPhiEquivalence:
    def test_strict_matches_exhaustive_enumeration(self):
        rng = random.Random(5)
        profiles = [random_profile(rng, "strict", 4, 4) for _ in range(300)]
        # tiny exhaustive cell on top of the random sample
        for a in all_strict_orders(2):
            for b in all_strict_orders(2):
                profiles.append(PreferenceProfile(2, (a, b), "strict"))
        for profile in profiles:
            w = frozenset(rng.sample(range(profile.m), rng.randint(0, profile.m - 1)))
            d = frozenset(range(profile.m))
            expected = exhaustive_strict_argmax(profile, w, d)
            if expected is None:
                continue
            chosen, perif, _ = phi_argmax(profile, w, d)
            assert (chosen.voters, chosen.support) == expected
            assert perif == chosen.support

    def test_weak_lattice_matches_literal_subset_search(self):
        rng = random.Random(17)
        for _ in range(250):
            profile = random_profile(rng, "weak", 5, 4)
            w = frozenset(rng.sample(range(profile.m), rng.randint(0, profile.m - 1)))
            w_mask = mask_of(w)
            d_mask = profile.full_mask
            fast = _phi_argmax_masks(profile, w_mask, d_mask)
            slow = _phi_argmax_weak_literal(profile, w_mask, d_mask)
            assert fast == slow


class TestMonotonicityProperties:
    @given(st.integers(0, 3000))
    def test_rho_weakly_decreases_as_committee_grows(self, seed):
        rng = random.Random(seed)
        profile = random_profile(rng, "weak", 5, 5)
        sets = [c for c in range(1, profile.full_mask + 1)]
        c_mask = rng.choice(sets)
        voters = maximal_supporters(profile, bitset(c_mask))
        if not voters:
            return
        chosen = coalition(voters, bitset(c_mask))
        perif = periphery(profile, chosen)
        small = frozenset(rng.sample(range(profile.m), rng.randint(0, profile.m)))
        grown = small | frozenset(rng.sample(range(profile.m), rng.randint(0, profile.m)))
        assert underrep(grown, chosen, perif).value <= underrep(small, chosen, perif).value

    @given(st.integers(0, 3000))
    def test_support_monotone_when_peripheries_coincide(self, seed):
        rng = random.Random(seed)
        profile = random_profile(rng, "weak", 5, 5)
        c_mask = rng.randint(1, profile.full_mask)
        voters = sorted(maximal_supporters(profile, bitset(c_mask)))
        if len(voters) < 2:
            return
        big = coalition(voters, bitset(c_mask))
        small = coalition(rng.sample(voters, rng.randint(1, len(voters) - 1)), big.support)
        perif_small = periphery(profile, small)
        perif_big = periphery(profile, big)
        w = frozenset(rng.sample(range(profile.m), rng.randint(0, profile.m)))
        if perif_small == perif_big:
            assert underrep(w, small, perif_small).value <= underrep(w, big, perif_big).value


class TestWitnessStructure:
    def test_prefix_sets_are_genuine_coalitions(self):
        for profile in seeded_profiles(23, 60, "truncated", 6, 6):
            for chosen in strict_prefix_sets(profile):
                assert is_gsc(profile, chosen.voters, chosen.support)
                assert periphery(profile, chosen) == chosen.support
                assert maximal_supporters(profile, chosen.support) == chosen.voters
