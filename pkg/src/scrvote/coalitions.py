"""Solid coalitions, peripheries, and underrepresentation maximization.

A voter group supports a candidate set when every member weakly prefers
all of the set to everything outside it; under strict or truncated orders
this means the set is a prefix of each member's ranking.  The periphery
of a coalition extends the supported set with every candidate some member
weakly prefers to a supported candidate; for strict and truncated orders
the periphery equals the supported set itself.

Strict and truncated profiles admit a fast path: only the ``n * m`` voter
prefix sets can carry a coalition.  Weak profiles require enumeration over
candidate subsets and supporter subsets (verifying proportionality there
is coNP-complete, so honest brute force is the only general option); the
enumeration refuses to run above ``GUARD_LIMIT`` voters or candidates
unless explicitly overridden.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .core import (
    STRICT,
    TRUNCATED,
    WEAK,
    PreferenceProfile,
    WeakOrder,
    bitset,
    bits,
    mask_of,
)
from .errors import ModeError, ScrvoteError, SizeGuardError

GUARD_LIMIT = 12


@dataclass(frozen=True)
class Coalition:
    """A voter group together with the candidate set it solidly supports."""

    voters: frozenset[int]
    support: frozenset[int]


@dataclass(frozen=True)
class PeripheryView:
    coalition: Coalition
    periphery: frozenset[int]


@dataclass(frozen=True)
class UnderrepScore:
    """``|N'| / (seats_held + 1)`` where seats are counted in the periphery."""

    value: Fraction
    seats_held: int


def _order_supports(order: WeakOrder, c_mask: int) -> bool:
    cums = order.cumulative_masks
    if not cums or c_mask & ~cums[-1]:
        return False
    for j, cum in enumerate(cums):
        if c_mask & ~cum == 0:
            prev = cums[j - 1] if j else 0
            return prev & ~c_mask == 0
    return False


def _voter_periphery(order: WeakOrder, c_mask: int) -> int:
    """Union of classes up to the last one meeting ``c_mask``."""
    cums = order.cumulative_masks
    classes = order.class_masks
    last = 0
    for j, cls in enumerate(classes):
        if cls & c_mask:
            last = j
    return cums[last]


def is_gsc(profile: PreferenceProfile, voters: Iterable[int], support: Iterable[int]) -> bool:
    """Does every listed voter solidly support the candidate set?"""
    c_mask = mask_of(support)
    vs = list(voters)
    if not vs or not c_mask or c_mask & ~profile.full_mask:
        return False
    return all(_order_supports(profile.orders[i], c_mask) for i in vs)


def maximal_supporters(profile: PreferenceProfile, support: Iterable[int]) -> frozenset[int]:
    """All voters that solidly support the given candidate set."""
    c_mask = mask_of(support)
    return frozenset(
        i for i, order in enumerate(profile.orders) if _order_supports(order, c_mask)
    )


def periphery(profile: PreferenceProfile, coalition: Coalition) -> frozenset[int]:
    """Supported candidates plus those weakly preferred to one of them."""
    c_mask = mask_of(coalition.support)
    out = c_mask
    for i in coalition.voters:
        out |= _voter_periphery(profile.orders[i], c_mask)
    return bitset(out)


def underrep(
    committee: Iterable[int], coalition: Coalition, periphery_set: Iterable[int]
) -> UnderrepScore:
    """D'Hondt-style claim strength of a coalition against a partial committee."""
    seats = len(frozenset(committee) & frozenset(periphery_set))
    return UnderrepScore(Fraction(len(coalition.voters), seats + 1), seats)


@lru_cache(maxsize=4096)
def _prefix_pairs(profile: PreferenceProfile) -> tuple[tuple[int, int], ...]:
    """Deduplicated voter prefix sets with merged maximal supporters.

    Pairs ``(support_mask, voters_mask)`` in first-appearance order over
    voters and prefix lengths; at most n*m entries.
    """
    # supporters of a prefix set are exactly the voters having it as a
    # prefix, so one scan over all prefixes yields the maximal groups
    index: dict[int, int] = {}
    supporters: list[int] = []
    for voter, order in enumerate(profile.orders):
        for cum in order.cumulative_masks:
            pos = index.setdefault(cum, len(supporters))
            if pos == len(supporters):
                supporters.append(0)
            supporters[pos] |= 1 << voter
    return tuple((c_mask, supporters[pos]) for c_mask, pos in index.items())


def strict_prefix_sets(profile: PreferenceProfile) -> list[Coalition]:
    """Every candidate set supportable under strict/truncated orders."""
    if profile.kind == WEAK:
        raise ModeError("prefix sets are defined for strict or truncated profiles")
    return [
        Coalition(bitset(v_mask), bitset(c_mask))
        for c_mask, v_mask in _prefix_pairs(profile)
    ]


def check_weak_guard(profile: PreferenceProfile, allow_large: bool = False) -> None:
    if allow_large:
        return
    if profile.m > GUARD_LIMIT or profile.n > GUARD_LIMIT:
        raise SizeGuardError(
            f"weak-order enumeration refused for n={profile.n}, m={profile.m} "
            f"(limit {GUARD_LIMIT}); pass allow_large to override"
        )


@lru_cache(maxsize=512)
def _weak_support_table(
    profile: PreferenceProfile,
) -> dict[int, tuple[tuple[int, ...], tuple[int, ...]]]:
    """For every nonempty candidate mask: (supporter voters, their peripheries)."""
    table: dict[int, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    orders = profile.orders
    for c_mask in range(1, profile.full_mask + 1):
        supporters = []
        perifs = []
        for i, order in enumerate(orders):
            if _order_supports(order, c_mask):
                supporters.append(i)
                perifs.append(_voter_periphery(order, c_mask))
        if supporters:
            table[c_mask] = (tuple(supporters), tuple(perifs))
    return table


def _set_key(mask: int) -> tuple[int, tuple[int, ...]]:
    # the fixed tie-break ranking over candidate sets: fewer candidates
    # first, then lexicographically smaller index tuples
    return (mask.bit_count(), tuple(bits(mask)))


class _Best:
    """Running argmax of rho with the deterministic tie-break."""

    __slots__ = ("num", "den", "c_key", "v_key", "entry")

    def __init__(self):
        self.num = -1
        self.den = 1
        self.c_key = None
        self.v_key = None
        self.entry = None

    def offer(self, num, den, c_mask, voters, entry):
        cmp = num * self.den - self.num * den
        if cmp < 0:
            return
        if cmp > 0:
            self.num, self.den = num, den
            self.c_key = _set_key(c_mask)
            self.v_key = (-len(voters), voters)
            self.entry = entry
            return
        c_key = _set_key(c_mask)
        if c_key > self.c_key:
            return
        v_key = (-len(voters), voters)
        if c_key < self.c_key or v_key < self.v_key:
            self.num, self.den = num, den
            self.c_key, self.v_key = c_key, v_key
            self.entry = entry


def _phi_argmax_strict(profile, w_mask, d_mask):
    best = _Best()
    for c_mask, v_mask in _prefix_pairs(profile):
        if c_mask & ~d_mask or c_mask == d_mask or not c_mask & ~w_mask:
            continue
        num = v_mask.bit_count()
        den = (c_mask & w_mask).bit_count() + 1
        if best.entry is None or num * best.den >= best.num * den:
            best.offer(num, den, c_mask, tuple(bits(v_mask)), (v_mask, c_mask, c_mask))
    return best.entry


def _proper_submasks(mask: int):
    sub = (mask - 1) & mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _phi_argmax_weak(profile, w_mask, d_mask):
    table = _weak_support_table(profile)
    best = _Best()
    for c_mask in _proper_submasks(d_mask):
        if not c_mask & ~w_mask:
            continue
        found = table.get(c_mask)
        if found is None:
            continue
        supporters, perifs = found
        sigs = [p & w_mask for p in perifs]
        universe = 0
        for s in sigs:
            universe |= s
        # Restricting the committee overlap to a budget T and taking every
        # supporter whose periphery fits inside it dominates all other
        # supporter subsets with that overlap, so scanning the T lattice
        # covers the full 2^|supporters| search, tie-break included.
        t_mask = universe
        while True:
            group = []
            overlap = 0
            perif = c_mask
            for i, s, p in zip(supporters, sigs, perifs):
                if s & ~t_mask == 0:
                    group.append(i)
                    overlap |= s
                    perif |= p
            if group:
                best.offer(
                    len(group),
                    overlap.bit_count() + 1,
                    c_mask,
                    tuple(group),
                    (mask_of(group), c_mask, perif),
                )
            if t_mask == 0:
                break
            t_mask = (t_mask - 1) & universe
    return best.entry


def _phi_argmax_weak_literal(profile, w_mask, d_mask):
    """Spec-shaped search over every supporter subset; test oracle only."""
    table = _weak_support_table(profile)
    best = _Best()
    for c_mask in _proper_submasks(d_mask):
        if not c_mask & ~w_mask:
            continue
        found = table.get(c_mask)
        if found is None:
            continue
        supporters, perifs = found
        for pick in range(1, 1 << len(supporters)):
            group = tuple(s for j, s in enumerate(supporters) if pick >> j & 1)
            perif = c_mask
            for j, p in enumerate(perifs):
                if pick >> j & 1:
                    perif |= p
            best.offer(
                len(group),
                (perif & w_mask).bit_count() + 1,
                c_mask,
                group,
                (mask_of(group), c_mask, perif),
            )
    return best.entry


def _phi_argmax_masks(profile, w_mask, d_mask, allow_large=False):
    """Maximize rho over coalitions refining D and not contained in W.

    Returns ``(voters_mask, support_mask, periphery_mask)`` or ``None``
    when no such coalition exists (possible only under truncation).
    """
    if profile.kind == WEAK:
        check_weak_guard(profile, allow_large)
        return _phi_argmax_weak(profile, w_mask, d_mask)
    return _phi_argmax_strict(profile, w_mask, d_mask)


def phi_argmax(
    profile: PreferenceProfile,
    committee: Iterable[int],
    domain: Iterable[int],
    allow_large: bool = False,
) -> tuple[Coalition, frozenset[int], UnderrepScore]:
    """The most underrepresented coalition refining ``domain``."""
    w_mask = mask_of(committee)
    d_mask = mask_of(domain)
    entry = _phi_argmax_masks(profile, w_mask, d_mask, allow_large)
    if entry is None:
        raise ScrvoteError("no coalition refines the given set")
    v_mask, c_mask, p_mask = entry
    coalition = Coalition(bitset(v_mask), bitset(c_mask))
    perif = bitset(p_mask)
    return coalition, perif, underrep(bitset(w_mask), coalition, perif)
