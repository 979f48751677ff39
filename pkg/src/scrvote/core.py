"""Foundational types: orders, profiles, committees, rankings, and quotas.

Candidates and voters are dense zero-based indices everywhere; display
names live in the file-format layer only.  All fractional quantities are
exact rationals so that strict quota inequalities behave correctly at
boundary cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import EmptyRestrictionError, ProfileError, UnrankedCandidateError

STRICT = "strict"
WEAK = "weak"
TRUNCATED = "truncated"
KINDS = (STRICT, WEAK, TRUNCATED)

QUOTA_SCHEMES = ("droop", "hare")


def mask_of(candidates: Iterable[int]) -> int:
    """Pack a collection of indices into a bitmask."""
    mask = 0
    for c in candidates:
        mask |= 1 << c
    return mask


def bits(mask: int) -> Iterator[int]:
    """Iterate the indices set in a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bitset(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


@dataclass(frozen=True)
class WeakOrder:
    """A transitive preference relation given as indifference classes.

    ``classes`` lists the indifference classes from most preferred to
    least preferred; each class is a sorted tuple of candidate indices.
    A strict order has singleton classes; a truncated order has singleton
    classes whose union may omit candidates.
    """

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise ProfileError("indifference classes must be nonempty")
            if tuple(sorted(cls)) != cls:
                raise ProfileError("indifference classes must be sorted tuples")
            if seen.intersection(cls):
                raise ProfileError("indifference classes must be disjoint")
            seen.update(cls)

    @staticmethod
    def from_classes(classes: Iterable[Iterable[int]]) -> "WeakOrder":
        return WeakOrder(tuple(tuple(sorted(cls)) for cls in classes))

    @staticmethod
    def from_sequence(sequence: Iterable[int]) -> "WeakOrder":
        """Build a strict (possibly truncated) order from a ranking."""
        return WeakOrder(tuple((c,) for c in sequence))

    @cached_property
    def ranked_universe(self) -> frozenset[int]:
        return frozenset(c for cls in self.classes for c in cls)

    @cached_property
    def ranked_mask(self) -> int:
        return mask_of(self.ranked_universe)

    @cached_property
    def is_strict(self) -> bool:
        return all(len(cls) == 1 for cls in self.classes)

    @cached_property
    def sequence(self) -> tuple[int, ...]:
        """The ranking as a flat candidate sequence (strict orders only)."""
        if not self.is_strict:
            raise ProfileError("order with ties has no strict sequence")
        return tuple(cls[0] for cls in self.classes)

    @cached_property
    def class_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(cls) for cls in self.classes)

    @cached_property
    def cumulative_masks(self) -> tuple[int, ...]:
        """Unions of the first j classes for j = 1..#classes."""
        out = []
        acc = 0
        for cm in self.class_masks:
            acc |= cm
            out.append(acc)
        return tuple(out)

    @cached_property
    def _rank_table(self) -> dict[int, int]:
        table: dict[int, int] = {}
        above = 0
        for cls in self.classes:
            for c in cls:
                table[c] = above + 1
            above += len(cls)
        return table

    def rank_of(self, candidate: int) -> int:
        """Number of candidates strictly preferred to ``candidate``, plus one."""
        try:
            return self._rank_table[candidate]
        except KeyError:
            raise UnrankedCandidateError(f"candidate {candidate} is not ranked") from None

    def restricted(self, keep_mask: int, relabel: dict[int, int]) -> "WeakOrder":
        """Keep only candidates in ``keep_mask``, relabelled; drop empty classes."""
        new_classes = []
        for cls in self.classes:
            kept = tuple(sorted(relabel[c] for c in cls if keep_mask >> c & 1))
            if kept:
                new_classes.append(kept)
        return WeakOrder(tuple(new_classes))


def rank_of(order: WeakOrder, candidate: int) -> int:
    return order.rank_of(candidate)


def unranked_set(order: WeakOrder, m: int) -> frozenset[int]:
    """Candidates a (truncated) order leaves unranked."""
    return frozenset(range(m)) - order.ranked_universe


@dataclass(frozen=True)
class PreferenceProfile:
    """A collection of voter orders over candidates ``0..m-1``."""

    m: int
    orders: tuple[WeakOrder, ...]
    kind: str

    def __post_init__(self):
        if self.m < 1:
            raise ProfileError("need at least one candidate")
        if not self.orders:
            raise ProfileError("need at least one voter")
        if self.kind not in KINDS:
            raise ProfileError(f"unknown profile kind {self.kind!r}")
        full = frozenset(range(self.m))
        for order in self.orders:
            if not order.ranked_universe <= full:
                raise ProfileError("order references candidates outside the profile")
            if self.kind in (STRICT, TRUNCATED) and not order.is_strict:
                raise ProfileError(f"{self.kind} profiles allow no indifferences")
            if self.kind in (STRICT, WEAK) and order.ranked_universe != full:
                raise ProfileError(f"{self.kind} profiles require complete orders")

    @staticmethod
    def strict(rows: Sequence[Sequence[int]], m: int | None = None) -> "PreferenceProfile":
        m = max(max(row) for row in rows) + 1 if m is None else m
        return PreferenceProfile(m, tuple(WeakOrder.from_sequence(r) for r in rows), STRICT)

    @staticmethod
    def weak(rows: Sequence[Sequence[Sequence[int]]], m: int | None = None) -> "PreferenceProfile":
        orders = tuple(WeakOrder.from_classes(r) for r in rows)
        m = max(max(o.ranked_universe) for o in orders) + 1 if m is None else m
        return PreferenceProfile(m, orders, WEAK)

    @staticmethod
    def truncated(rows: Sequence[Sequence[int]], m: int) -> "PreferenceProfile":
        return PreferenceProfile(m, tuple(WeakOrder.from_sequence(r) for r in rows), TRUNCATED)

    @property
    def n(self) -> int:
        return len(self.orders)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    @cached_property
    def ranked_masks(self) -> tuple[int, ...]:
        return tuple(order.ranked_mask for order in self.orders)


@dataclass(frozen=True)
class Committee:
    """An unordered winner set of a target size."""

    members: frozenset[int]
    k: int

    def __post_init__(self):
        if len(self.members) != self.k:
            raise ProfileError("committee size does not match k")

    @staticmethod
    def of(members: Iterable[int]) -> "Committee":
        ms = frozenset(members)
        return Committee(ms, len(ms))


@dataclass(frozen=True)
class Ranking:
    """A permutation of all candidates, best first."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise ProfileError("ranking must be a permutation of 0..m-1")

    @property
    def m(self) -> int:
        return len(self.order)

    def top(self, k: int) -> frozenset[int]:
        return frozenset(self.order[:k])

    def position(self, candidate: int) -> int:
        return self.order.index(candidate) + 1


@dataclass(frozen=True)
class Quota:
    """An exact voters-per-seat threshold."""

    value: Fraction
    scheme: str

    def __post_init__(self):
        if self.scheme not in QUOTA_SCHEMES:
            raise ProfileError(f"unknown quota scheme {self.scheme!r}")
        if self.value <= 0:
            raise ProfileError("quota must be positive")


def quota(n: int, k: int, scheme: str) -> Quota:
    """The Droop quota n/(k+1) or the Hare quota n/k, exactly."""
    if n < 1 or k < 1:
        raise ProfileError("need n >= 1 and k >= 1")
    if scheme == "droop":
        return Quota(Fraction(n, k + 1), scheme)
    if scheme == "hare":
        return Quota(Fraction(n, k), scheme)
    raise ProfileError(f"unknown quota scheme {scheme!r}")


@dataclass(frozen=True)
class RestrictedProfile:
    """A candidate restriction together with its relabelling map.

    ``kept[new_index] == old_index``; ``to_parent``/``from_parent`` convert
    candidate indices between the restricted and the parent profile.
    """

    profile: PreferenceProfile
    kept: tuple[int, ...]

    def to_parent(self, candidates: Iterable[int]) -> frozenset[int]:
        return frozenset(self.kept[c] for c in candidates)

    @cached_property
    def from_parent(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.kept)}


def restrict_profile(profile: PreferenceProfile, keep: Iterable[int]) -> RestrictedProfile:
    """Delete all candidates outside ``keep``, preserving class order."""
    kept = tuple(sorted(set(keep)))
    if not kept:
        raise EmptyRestrictionError("cannot restrict to the empty candidate set")
    if kept[-1] >= profile.m or kept[0] < 0:
        raise ProfileError("restriction set references unknown candidates")
    keep_mask = mask_of(kept)
    relabel = {old: new for new, old in enumerate(kept)}
    orders = tuple(order.restricted(keep_mask, relabel) for order in profile.orders)
    restricted = PreferenceProfile(len(kept), orders, profile.kind)
    return RestrictedProfile(restricted, kept)


@dataclass(frozen=True)
class ReducedProfile:
    """A voter deletion together with its relabelling map.

    ``kept[new_index] == old_index`` for voters.
    """

    profile: PreferenceProfile
    kept: tuple[int, ...]


def remove_voters(profile: PreferenceProfile, voters: Iterable[int]) -> ReducedProfile:
    """Delete the given voters; candidate indices are unchanged."""
    drop = set(voters)
    if not drop <= set(range(profile.n)):
        raise ProfileError("voter deletion references unknown voters")
    kept = tuple(i for i in range(profile.n) if i not in drop)
    if not kept:
        raise ProfileError("cannot delete all voters")
    orders = tuple(profile.orders[i] for i in kept)
    return ReducedProfile(PreferenceProfile(profile.m, orders, profile.kind), kept)
