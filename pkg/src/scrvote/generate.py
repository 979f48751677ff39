"""Seeded profile generation, canonical corpora, and counterexample search.

Everything here is deterministic given its seed, so fuzz failures can be
replayed exactly.  The exhaustive corpora walk (n, m) cells in order of
cell size; a cell larger than its even share of the remaining budget is
stride-sampled by index instead of truncated, which keeps coverage
spread over the whole space.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Iterator, Sequence

from .core import STRICT, TRUNCATED, WEAK, PreferenceProfile, WeakOrder
from .errors import ProfileError


def random_order(rng: random.Random, m: int, kind: str) -> WeakOrder:
    perm = list(range(m))
    rng.shuffle(perm)
    if kind == STRICT:
        return WeakOrder.from_sequence(perm)
    if kind == TRUNCATED:
        return WeakOrder.from_sequence(perm[: rng.randint(1, m)])
    classes: list[list[int]] = [[perm[0]]]
    for c in perm[1:]:
        if rng.random() < 0.5:
            classes.append([c])
        else:
            classes[-1].append(c)
    return WeakOrder.from_classes(classes)


def random_profile(
    rng: random.Random,
    kind: str,
    n_max: int,
    m_max: int,
    n: int | None = None,
    m: int | None = None,
) -> PreferenceProfile:
    n = rng.randint(1, n_max) if n is None else n
    m = rng.randint(1, m_max) if m is None else m
    return PreferenceProfile(m, tuple(random_order(rng, m, kind) for _ in range(n)), kind)


def seeded_profiles(
    seed: int,
    count: int,
    kind: str,
    n_max: int,
    m_max: int,
    n: int | None = None,
    m: int | None = None,
) -> Iterator[PreferenceProfile]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_profile(rng, kind, n_max, m_max, n, m)


@lru_cache(maxsize=None)
def all_weak_orders(m: int) -> tuple[WeakOrder, ...]:
    """Every weak order on m candidates, in a fixed recursive order."""

    def build(remaining: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
        if not remaining:
            return [()]
        out = []
        # nonempty first classes in subset-mask order
        for pick in range(1, 1 << len(remaining)):
            cls = tuple(c for i, c in enumerate(remaining) if pick >> i & 1)
            rest = tuple(c for i, c in enumerate(remaining) if not pick >> i & 1)
            for tail in build(rest):
                out.append((cls, *tail))
        return out

    return tuple(WeakOrder(classes) for classes in build(tuple(range(m))))


@lru_cache(maxsize=None)
def all_strict_orders(m: int) -> tuple[WeakOrder, ...]:
    import itertools

    return tuple(WeakOrder.from_sequence(p) for p in itertools.permutations(range(m)))


def _stride_indices(size: int, take: int) -> list[int]:
    if take >= size:
        return list(range(size))
    stride = size // take
    return [i * stride for i in range(take)]


def exhaustive_weak_corpus(n_max: int, m_max: int, budget: int) -> list[PreferenceProfile]:
    """Weak profiles over every (n, m) cell, whole space when it fits."""
    cells = []
    for m in range(1, m_max + 1):
        orders = all_weak_orders(m)
        for n in range(1, n_max + 1):
            cells.append((len(orders) ** n, m, n))
    cells.sort()
    out: list[PreferenceProfile] = []
    remaining = budget
    for idx, (size, m, n) in enumerate(cells):
        share = remaining // (len(cells) - idx)
        take = min(size, share)
        orders = all_weak_orders(m)
        base = len(orders)
        for index in _stride_indices(size, take):
            digits = []
            value = index
            for _ in range(n):
                digits.append(value % base)
                value //= base
            out.append(PreferenceProfile(m, tuple(orders[d] for d in digits), WEAK))
        remaining -= take
    return out


def exhaustive_strict_corpus(n_max: int, m_max: int, budget: int) -> list[PreferenceProfile]:
    """Strict profiles canonicalized as voter-order multisets."""
    from math import comb

    cells = []
    for m in range(1, m_max + 1):
        base = len(all_strict_orders(m))
        for n in range(1, n_max + 1):
            cells.append((comb(base + n - 1, n), m, n))
    cells.sort()
    out: list[PreferenceProfile] = []
    remaining = budget
    for idx, (size, m, n) in enumerate(cells):
        share = remaining // (len(cells) - idx)
        take = min(size, share)
        wanted = set(_stride_indices(size, take))
        orders = all_strict_orders(m)
        for index, combo in enumerate(combinations_with_replacement(range(len(orders)), n)):
            if index in wanted:
                out.append(PreferenceProfile(m, tuple(orders[d] for d in combo), STRICT))
        remaining -= take
    return out


def search_profiles(
    predicate: Callable[[PreferenceProfile], object],
    seed: int,
    max_tries: int,
    kind: str,
    n_max: int,
    m_max: int,
) -> tuple[PreferenceProfile, object] | None:
    """First seeded random profile on which ``predicate`` returns truthy."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        profile = random_profile(rng, kind, n_max, m_max)
        found = predicate(profile)
        if found:
            return profile, found
    return None


def find_committee_non_monotone(
    rule: Callable[[PreferenceProfile, int], frozenset[int]],
    seed: int,
    max_tries: int,
    kind: str = STRICT,
    n_max: int = 8,
    m_max: int = 6,
) -> tuple[PreferenceProfile, int] | None:
    """A profile and size k where the rule drops a winner going to k + 1."""

    def probe(profile: PreferenceProfile):
        previous: frozenset[int] = frozenset()
        for k in range(1, profile.m + 1):
            current = frozenset(rule(profile, k))
            if not previous <= current:
                return k - 1
            previous = current
        return None

    found = search_profiles(probe, seed, max_tries, kind, n_max, m_max)
    if found is None:
        return None
    profile, k = found
    return profile, int(k)  # type: ignore[arg-type]


def find_ilvb_violation(
    rule: Callable[[PreferenceProfile, int], frozenset[int]],
    seed: int,
    max_tries: int,
    n_max: int = 7,
    m_max: int = 6,
) -> tuple[PreferenceProfile, int, object] | None:
    """A truncated profile and size where a losing bloc changes the outcome."""
    from .axioms import check_ilvb

    rng = random.Random(seed)
    for _ in range(max_tries):
        profile = random_profile(rng, TRUNCATED, n_max, m_max)
        k = rng.randint(1, profile.m)
        try:
            report = check_ilvb(rule, profile, k)
        except ProfileError:
            continue
        if not report.satisfied:
            return profile, k, report
    return None
