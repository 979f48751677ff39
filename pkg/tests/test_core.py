from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrvote.core import (
    PreferenceProfile,
    WeakOrder,
    quota,
    rank_of,
    remove_voters,
    restrict_profile,
    unranked_set,
)
from scrvote.errors import EmptyRestrictionError, ProfileError, UnrankedCandidateError

from fixtures import COMPROMISE_FOUR
from oracles import brute_rank_of


def weak_orders(max_m=5):
    @st.composite
    def build(draw):
        m = draw(st.integers(1, max_m))
        perm = draw(st.permutations(list(range(m))))
        splits = draw(st.lists(st.booleans(), min_size=m - 1, max_size=m - 1))
        classes = [[perm[0]]]
        for candidate, new_class in zip(perm[1:], splits):
            if new_class:
                classes.append([candidate])
            else:
                classes[-1].append(candidate)
        return WeakOrder.from_classes(classes), m

    return build()


class TestRankOf:
    def test_top_of_strict_order(self):
        order = WeakOrder.from_sequence([0, 1, 2])
        assert rank_of(order, 0) == 1

    def test_rank_after_tied_class(self):
        order = WeakOrder.from_classes([[0, 1], [2]])
        assert rank_of(order, 2) == 3

    def test_tied_class_members_share_top_rank(self):
        order = WeakOrder.from_classes([[0, 1], [2]])
        assert rank_of(order, 1) == 1

    def test_unranked_candidate_rejected(self):
        order = WeakOrder.from_sequence([0, 1])
        with pytest.raises(UnrankedCandidateError):
            rank_of(order, 2)

    @given(weak_orders())
    def test_matches_brute_force(self, built):
        order, _ = built
        for candidate in order.ranked_universe:
            assert rank_of(order, candidate) == brute_rank_of(order, candidate)


class TestRestrictProfile:
    def test_drops_deleted_candidate(self):
        restricted = restrict_profile(COMPROMISE_FOUR, {0, 1, 2})
        seqs = [o.sequence for o in restricted.profile.orders]
        assert seqs == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
        assert restricted.kept == (0, 1, 2)

    def test_identity_restriction(self):
        restricted = restrict_profile(COMPROMISE_FOUR, range(4))
        assert restricted.profile == COMPROMISE_FOUR

    def test_single_candidate(self):
        restricted = restrict_profile(COMPROMISE_FOUR, {3})
        assert all(o.sequence == (0,) for o in restricted.profile.orders)
        assert restricted.to_parent({0}) == {3}

    def test_empty_restriction_rejected(self):
        with pytest.raises(EmptyRestrictionError):
            restrict_profile(COMPROMISE_FOUR, ())

    @given(st.integers(0, 10_000))
    def test_idempotent_through_composition(self, seed):
        import random

        from scrvote.generate import random_profile

        rng = random.Random(seed)
        profile = random_profile(rng, "weak", 4, 5)
        keep = sorted(rng.sample(range(profile.m), rng.randint(1, profile.m)))
        first = restrict_profile(profile, keep)
        inner = sorted(rng.sample(range(first.profile.m), rng.randint(1, first.profile.m)))
        second = restrict_profile(first.profile, inner)
        direct = restrict_profile(profile, first.to_parent(inner))
        assert second.profile == direct.profile
        assert tuple(sorted(second.to_parent(range(second.profile.m)))) == tuple(
            sorted(first.to_parent(second.kept))
        )


class TestRemoveVoters:
    def test_removes_listed_voters(self):
        reduced = remove_voters(COMPROMISE_FOUR, {2})
        assert reduced.profile.orders == COMPROMISE_FOUR.orders[:2]
        assert reduced.kept == (0, 1)

    def test_empty_deletion_is_identity(self):
        assert remove_voters(COMPROMISE_FOUR, ()).profile == COMPROMISE_FOUR

    def test_cannot_delete_everyone(self):
        with pytest.raises(ProfileError):
            remove_voters(COMPROMISE_FOUR, range(3))


class TestQuota:
    def test_hare_example(self):
        assert quota(8, 2, "hare").value == 4

    def test_droop_example(self):
        assert quota(8, 2, "droop").value == Fraction(8, 3)

    def test_droop_integer_value(self):
        assert quota(5, 4, "droop").value == 1

    @given(st.integers(1, 400), st.integers(1, 50))
    def test_droop_below_hare(self, n, k):
        assert quota(n, k, "droop").value < quota(n, k, "hare").value


class TestUnrankedSet:
    def test_truncated(self):
        assert unranked_set(WeakOrder.from_sequence([0, 1]), 4) == {2, 3}

    def test_complete(self):
        assert unranked_set(WeakOrder.from_sequence([2, 0, 1]), 3) == set()

    def test_single(self):
        assert unranked_set(WeakOrder.from_sequence([1]), 2) == {0}


class TestValidation:
    def test_strict_profile_rejects_ties(self):
        with pytest.raises(ProfileError):
            PreferenceProfile(2, (WeakOrder.from_classes([[0, 1]]),), "strict")

    def test_complete_kinds_reject_truncation(self):
        with pytest.raises(ProfileError):
            PreferenceProfile(3, (WeakOrder.from_sequence([0, 1]),), "strict")

    def test_out_of_range_candidate(self):
        with pytest.raises(ProfileError):
            PreferenceProfile(2, (WeakOrder.from_sequence([0, 3]),), "truncated")

    def test_overlapping_classes(self):
        with pytest.raises(ProfileError):
            WeakOrder.from_classes([[0, 1], [1]])
