"""Checkers for proportionality and monotonicity axioms.

Every check returns an :class:`AxiomReport`; a violated report carries a
witness with enough fields to re-verify the defining inequality directly.
Quota comparisons are exact (integer cross-multiplication), so boundary
cases like a coalition of size exactly ell * n / (k+1) resolve correctly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .coalitions import _prefix_pairs, _weak_support_table, check_weak_guard
from .core import (
    STRICT,
    WEAK,
    PreferenceProfile,
    WeakOrder,
    bits,
    mask_of,
    remove_voters,
)
from .errors import BudgetExceededError, ModeError, ProfileError

SATISFIED = "satisfied"
VIOLATED = "violated"

RuleFn = Callable[[PreferenceProfile, int], frozenset[int]]


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.verdict == SATISFIED

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "witness": self.witness,
            "details": self.details,
        }


def _committee_mask(profile: PreferenceProfile, k: int, committee: Iterable[int]) -> int:
    w_mask = mask_of(committee)
    if w_mask.bit_count() != k or w_mask & ~profile.full_mask:
        raise ProfileError("committee must contain exactly k distinct candidates")
    return w_mask


def _droop_ell(size: int, n: int, k: int) -> int:
    """Largest ell with size > ell * n / (k+1)."""
    return -(-size * (k + 1) // n) - 1


def _hare_ell(size: int, n: int, k: int) -> int:
    """Largest ell with size >= ell * n / k."""
    return size * k // n


def check_psc(
    profile: PreferenceProfile, k: int, committee: Iterable[int], scheme: str = "droop"
) -> AxiomReport:
    """Proportionality for solid coalitions under the Droop or Hare quota."""
    if profile.kind == WEAK:
        raise ModeError("use check_ipsc for profiles with indifferences")
    if scheme not in ("droop", "hare"):
        raise ProfileError(f"unknown quota scheme {scheme!r}")
    w_mask = _committee_mask(profile, k, committee)
    axiom = f"psc-{scheme}"
    details = {"k": k, "scheme": scheme}
    ell_of = _droop_ell if scheme == "droop" else _hare_ell
    n = profile.n
    for c_mask, v_mask in _prefix_pairs(profile):
        ell = ell_of(v_mask.bit_count(), n, k)
        demand = min(c_mask.bit_count(), ell)
        if (c_mask & w_mask).bit_count() < demand:
            witness = {
                "voters": sorted(bits(v_mask)),
                "support": sorted(bits(c_mask)),
                "ell": ell,
            }
            return AxiomReport(axiom, VIOLATED, witness, details)
    return AxiomReport(axiom, SATISFIED, None, details)


def check_weak_psc(
    profile: PreferenceProfile, k: int, committee: Iterable[int], scheme: str = "droop"
) -> AxiomReport:
    """As PSC, but a coalition only binds when its set size equals its ell."""
    if profile.kind == WEAK:
        raise ModeError("weak PSC is defined for strict or truncated profiles")
    if scheme not in ("droop", "hare"):
        raise ProfileError(f"unknown quota scheme {scheme!r}")
    w_mask = _committee_mask(profile, k, committee)
    axiom = f"weak-psc-{scheme}"
    details = {"k": k, "scheme": scheme}
    n = profile.n
    for c_mask, v_mask in _prefix_pairs(profile):
        size = v_mask.bit_count()
        ell = c_mask.bit_count()
        if scheme == "droop":
            entitled = size * (k + 1) > ell * n
        else:
            entitled = size * k >= ell * n
        if entitled and c_mask & ~w_mask:
            witness = {
                "voters": sorted(bits(v_mask)),
                "support": sorted(bits(c_mask)),
                "ell": ell,
            }
            return AxiomReport(axiom, VIOLATED, witness, details)
    return AxiomReport(axiom, SATISFIED, None, details)


def check_ipsc(
    profile: PreferenceProfile,
    k: int,
    committee: Iterable[int],
    allow_large: bool = False,
) -> AxiomReport:
    """Inclusion PSC: seats are counted against coalition peripheries.

    A committee fails exactly when some generalized solid coalition with
    unelected supported candidates has underrepresentation value above
    n / (k+1).  Strict and truncated profiles use the polynomial prefix
    scan (periphery equals the supported set there); weak profiles use
    the guarded enumeration.
    """
    w_mask = _committee_mask(profile, k, committee)
    details = {"k": k}
    n = profile.n
    if profile.kind != WEAK:
        for c_mask, v_mask in _prefix_pairs(profile):
            if not c_mask & ~w_mask:
                continue
            held = (c_mask & w_mask).bit_count()
            if v_mask.bit_count() * (k + 1) > n * (held + 1):
                witness = {
                    "voters": sorted(bits(v_mask)),
                    "support": sorted(bits(c_mask)),
                    "periphery": sorted(bits(c_mask)),
                    "ell": _droop_ell(v_mask.bit_count(), n, k),
                }
                return AxiomReport("ipsc", VIOLATED, witness, details)
        return AxiomReport("ipsc", SATISFIED, None, details)

    check_weak_guard(profile, allow_large)
    table = _weak_support_table(profile)
    for c_mask in range(1, profile.full_mask + 1):
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
        t_mask = universe
        while True:
            group = []
            perif = c_mask
            for i, s, p in zip(supporters, sigs, perifs):
                if s & ~t_mask == 0:
                    group.append(i)
                    perif |= p
            held = (perif & w_mask).bit_count()
            if group and len(group) * (k + 1) > n * (held + 1):
                witness = {
                    "voters": group,
                    "support": sorted(bits(c_mask)),
                    "periphery": sorted(bits(perif)),
                    "ell": _droop_ell(len(group), n, k),
                }
                return AxiomReport("ipsc", VIOLATED, witness, details)
            if t_mask == 0:
                break
            t_mask = (t_mask - 1) & universe
    return AxiomReport("ipsc", SATISFIED, None, details)


def _approval_masks(order: WeakOrder, m: int) -> list[int]:
    """``masks[r-1]`` holds the candidates ranked at most r, for r = 1..m."""
    masks = []
    cum = 0
    start_rank = 1
    for cls, cum_mask in zip(order.classes, order.cumulative_masks):
        while len(masks) < start_rank - 1:
            masks.append(cum)
        cum = cum_mask
        start_rank += len(cls)
    while len(masks) < m:
        masks.append(cum)
    return masks


def check_rank_jr(profile: PreferenceProfile, k: int, committee: Iterable[int]) -> AxiomReport:
    """Justified representation over every rank-threshold approval profile.

    At threshold r, voters approving no winner form the unserved pool; a
    violation is a candidate approved by at least n/k pool voters.
    """
    w_mask = _committee_mask(profile, k, committee)
    details = {"k": k}
    n, m = profile.n, profile.m
    approvals = [_approval_masks(order, m) for order in profile.orders]
    for r in range(1, m + 1):
        pool = [v for v in range(n) if approvals[v][r - 1] & w_mask == 0]
        if not pool:
            continue
        for x in range(m):
            backers = [v for v in pool if approvals[v][r - 1] >> x & 1]
            if len(backers) * k >= n:
                witness = {"rank": r, "voters": backers, "candidate": x}
                return AxiomReport("rank-jr", VIOLATED, witness, details)
    return AxiomReport("rank-jr", SATISFIED, None, details)


def check_committee_monotone(rule: RuleFn, profile: PreferenceProfile) -> AxiomReport:
    """Does enlarging the committee ever drop a previously elected candidate?"""
    previous: frozenset[int] | None = None
    for k in range(1, profile.m + 1):
        current = frozenset(rule(profile, k))
        if previous is not None and not previous <= current:
            dropped = min(previous - current)
            witness = {"k": k - 1, "k_next": k, "dropped": dropped}
            return AxiomReport("committee-monotone", VIOLATED, witness, {})
        previous = current
    return AxiomReport("committee-monotone", SATISFIED, None, {})


def _single_moves(profile: PreferenceProfile, candidate: int):
    """Profiles obtained by moving one candidate up one slot in one order."""
    for voter, order in enumerate(profile.orders):
        seq = order.sequence
        if candidate not in seq:
            continue
        pos = seq.index(candidate)
        if pos == 0:
            continue
        moved = list(seq)
        moved[pos - 1], moved[pos] = moved[pos], moved[pos - 1]
        orders = list(profile.orders)
        orders[voter] = WeakOrder.from_sequence(moved)
        yield voter, pos, PreferenceProfile(profile.m, tuple(orders), profile.kind)


def check_candidate_monotone(rule: RuleFn, profile: PreferenceProfile, k: int) -> AxiomReport:
    """Can a single upward move of a winner expel it from the committee?"""
    if profile.kind == WEAK:
        raise ModeError("candidate monotonicity checks need strict rankings")
    winners = sorted(rule(profile, k))
    for candidate in winners:
        for voter, pos, moved in _single_moves(profile, candidate):
            if candidate not in rule(moved, k):
                witness = {
                    "candidate": candidate,
                    "voter": voter,
                    "from_position": pos + 1,
                    "to_position": pos,
                }
                return AxiomReport("candidate-monotone", VIOLATED, witness, {"k": k})
    return AxiomReport("candidate-monotone", SATISFIED, None, {"k": k})


MAX_FULL_BLOC = 10


def check_ilvb(rule: RuleFn, profile: PreferenceProfile, k: int) -> AxiomReport:
    """Independence of losing voter blocs on a truncated profile.

    Removing any voters who rank no winner must leave the outcome
    unchanged.  Blocs of more than ``MAX_FULL_BLOC`` voters are probed
    by singletons and the full bloc only; the report records which
    policy ran.
    """
    if profile.kind != "truncated":
        raise ModeError("losing-bloc independence is defined on truncated profiles")
    winners = frozenset(rule(profile, k))
    w_mask = mask_of(winners)
    bloc = [v for v in range(profile.n) if profile.ranked_masks[v] & w_mask == 0]
    full_policy = len(bloc) <= MAX_FULL_BLOC
    details = {"k": k, "bloc": bloc, "policy": "full" if full_policy else "restricted"}
    if full_policy:
        subsets: Iterable[tuple[int, ...]] = (
            combo for size in range(1, len(bloc) + 1) for combo in combinations(bloc, size)
        )
    else:
        singles = [(v,) for v in bloc]
        subsets = singles + [tuple(bloc)]
    for removed in subsets:
        if len(removed) == profile.n:
            continue
        reduced = remove_voters(profile, removed)
        outcome = frozenset(rule(reduced.profile, k))
        if outcome != winners:
            witness = {
                "removed_voters": list(removed),
                "expected": sorted(winners),
                "got": sorted(outcome),
            }
            return AxiomReport("ilvb", VIOLATED, witness, details)
    return AxiomReport("ilvb", SATISFIED, None, details)


_FEASIBLE_CHECKERS = {
    "psc-droop": lambda profile, k, w: check_psc(profile, k, w, "droop"),
    "psc-hare": lambda profile, k, w: check_psc(profile, k, w, "hare"),
    "weak-psc-droop": lambda profile, k, w: check_weak_psc(profile, k, w, "droop"),
    "weak-psc-hare": lambda profile, k, w: check_weak_psc(profile, k, w, "hare"),
    "ipsc": check_ipsc,
    "rank-jr": check_rank_jr,
}


def brute_force_feasible(
    axiom: str, profile: PreferenceProfile, k: int, budget: int = 200_000
) -> list[frozenset[int]]:
    """All size-k committees passing the named checker, in lexicographic order."""
    checker = _FEASIBLE_CHECKERS.get(axiom)
    if checker is None:
        raise ProfileError(f"no feasibility checker for axiom {axiom!r}")
    if math.comb(profile.m, k) > budget:
        raise BudgetExceededError(f"{math.comb(profile.m, k)} committees exceed budget {budget}")
    return [
        frozenset(members)
        for members in combinations(range(profile.m), k)
        if checker(profile, k, frozenset(members)).satisfied
    ]


@dataclass(frozen=True)
class RankJrIncompatibility:
    """Exhaustive evidence that no nested committee pair can satisfy rank-JR."""

    profile: PreferenceProfile
    bridge: int
    group_size: int
    k_small: int
    k_large: int
    small_feasible: tuple[frozenset[int], ...]
    large_feasible: tuple[frozenset[int], ...]
    bridge_in_every_small: bool
    nested_pair_exists: bool

    @property
    def incompatible(self) -> bool:
        return not self.nested_pair_exists


def rank_jr_incompatibility_witness(n: int, q: int, m: int) -> RankJrIncompatibility:
    """Build the block profile where rank-JR forces non-nested committees.

    ``n`` voters split into groups of ``q``; group j puts its own
    candidate first and the shared bridge candidate second.  With
    ``ell = n/q`` groups, every feasible committee of size 2 contains
    the bridge while the unique feasible committee of size ell is the
    group candidates, so no committee-monotone rule can satisfy rank-JR.
    """
    if q < 1 or n % q:
        raise ProfileError("group size q must divide n")
    ell = n // q
    if ell < 4:
        raise ProfileError("need at least four groups (n/q >= 4)")
    if m < ell + 1:
        raise ProfileError("need m >= n/q + 1 candidates")
    bridge = ell
    rows = []
    for group in range(ell):
        rest = [c for c in range(m) if c != group and c != bridge]
        rows.extend([[group, bridge, *rest]] * q)
    profile = PreferenceProfile.strict(rows, m)
    small = tuple(brute_force_feasible("rank-jr", profile, 2))
    large = tuple(brute_force_feasible("rank-jr", profile, ell))
    nested = any(ws <= wl for ws in small for wl in large)
    return RankJrIncompatibility(
        profile=profile,
        bridge=bridge,
        group_size=q,
        k_small=2,
        k_large=ell,
        small_feasible=small,
        large_feasible=large,
        bridge_in_every_small=all(bridge in w for w in small),
        nested_pair_exists=nested,
    )
