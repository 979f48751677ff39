"""Baseline committee rules and the reverse-sequential transform.

The STV variant is fractional-transfer (Gregory) with an exact Droop
quota: a candidate is seated when its tally strictly exceeds n/(k+1),
its supporting ballots keep weight * surplus/tally, and when nobody is
over quota the lowest tally is eliminated (ties eliminate the highest
index).  Ordered Phragmen is simulated event-by-event with exact
rational times.  The quota-based scoring rule partitions voters by
identical top-r sets and seats candidates from entitled parts by
positional score.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .core import STRICT, WEAK, PreferenceProfile, restrict_profile
from .errors import ModeError, ProfileError, ScrvoteError, StallError
from .scr import scr

RuleFn = Callable[[PreferenceProfile, int], frozenset[int]]


@dataclass(frozen=True)
class RuleId:
    """A named rule plus the parameters that pin its behaviour down."""

    name: str
    scoring: tuple[int, ...] | None = None
    tiebreak: str = "low"

    def __post_init__(self):
        if self.scoring is not None:
            s = self.scoring
            if any(a < b for a, b in zip(s, s[1:])) or s[-1] < 0 or s[0] <= s[-1]:
                raise ProfileError(
                    "scoring vector must be nonincreasing, nonnegative, and non-constant"
                )
        if self.tiebreak not in ("low", "high"):
            raise ProfileError("tiebreak must be 'low' or 'high'")


@dataclass(frozen=True)
class ApportionmentResult:
    seats: tuple[int, ...]
    order: tuple[int, ...]


def dhondt(votes: Sequence[int], house: int) -> ApportionmentResult:
    """Sequential highest-averages apportionment, ties to the lowest index."""
    if house < 0:
        raise ProfileError("house size must be nonnegative")
    if any(v < 0 for v in votes):
        raise ProfileError("vote counts must be nonnegative")
    if house > 0 and not any(votes):
        raise ScrvoteError("cannot apportion seats with no votes")
    seats = [0] * len(votes)
    order = []
    for _ in range(house):
        best = 0
        for i in range(1, len(votes)):
            # compare votes[i]/(seats[i]+1) > votes[best]/(seats[best]+1)
            if votes[i] * (seats[best] + 1) > votes[best] * (seats[i] + 1):
                best = i
        seats[best] += 1
        order.append(best)
    return ApportionmentResult(tuple(seats), tuple(order))


def _check_ranked_profile(profile: PreferenceProfile, k: int) -> None:
    if profile.kind == WEAK:
        raise ModeError("this rule needs strict or truncated orders")
    if not 1 <= k <= profile.m:
        raise ProfileError(f"need 1 <= k <= m, got k={k}, m={profile.m}")


def stv(profile: PreferenceProfile, k: int) -> frozenset[int]:
    """Single transferable vote with fractional Gregory transfers."""
    _check_ranked_profile(profile, k)
    n, m = profile.n, profile.m
    threshold = Fraction(n, k + 1)
    seqs = [order.sequence for order in profile.orders]
    ptr = [0] * n
    weight = [Fraction(1)] * n
    hopeful = set(range(m))
    elected: list[int] = []

    def assignments() -> tuple[list[int | None], list[Fraction]]:
        assigned: list[int | None] = [None] * n
        tallies = [Fraction(0)] * m
        for v in range(n):
            seq = seqs[v]
            i = ptr[v]
            while i < len(seq) and seq[i] not in hopeful:
                i += 1
            ptr[v] = i
            if i < len(seq):
                assigned[v] = seq[i]
                tallies[seq[i]] += weight[v]
        return assigned, tallies

    while len(elected) < k:
        if len(hopeful) <= k - len(elected):
            _, tallies = assignments()
            elected.extend(sorted(hopeful, key=lambda c: (-tallies[c], c)))
            break
        assigned, tallies = assignments()
        over = [c for c in hopeful if tallies[c] > threshold]
        if over:
            winner = min(over, key=lambda c: (-tallies[c], c))
            elected.append(winner)
            hopeful.discard(winner)
            if len(elected) == k:
                break
            factor = (tallies[winner] - threshold) / tallies[winner]
            for v in range(n):
                if assigned[v] == winner:
                    weight[v] *= factor
        else:
            loser = min(hopeful, key=lambda c: (tallies[c], -c))
            hopeful.discard(loser)
    return frozenset(elected[:k])


def ordered_phragmen(profile: PreferenceProfile, k: int, tiebreak: str = "low") -> frozenset[int]:
    """Voters eat their favourite unelected candidate at unit speed."""
    _check_ranked_profile(profile, k)
    n, m = profile.n, profile.m
    seqs = [order.sequence for order in profile.orders]
    consumed = [Fraction(0)] * m
    elected: list[int] = []
    elected_set: set[int] = set()
    reverse = tiebreak == "high"
    while len(elected) < k:
        rate = [0] * m
        for v in range(n):
            for c in seqs[v]:
                if c not in elected_set:
                    rate[c] += 1
                    break
        active = [c for c in range(m) if rate[c] > 0]
        if not active:
            raise StallError(f"only {len(elected)} of {k} candidates can be completed")
        delta = min((1 - consumed[c]) / rate[c] for c in active)
        finished = []
        for c in active:
            consumed[c] += rate[c] * delta
            if consumed[c] == 1:
                finished.append(c)
        for c in sorted(finished, reverse=reverse):
            elected.append(c)
            elected_set.add(c)
            if len(elected) == k:
                return frozenset(elected)
    return frozenset(elected)


def borda_scoring(m: int) -> tuple[int, ...]:
    return tuple(range(m - 1, -1, -1))


def qbs_md(
    profile: PreferenceProfile, k: int, scoring: Sequence[int] | None = None
) -> frozenset[int]:
    """Minimal-demand rule with positional-scoring tie-breaking.

    For each rank r, voters with identical top-r sets form a part; parts
    whose size strictly exceeds ell Droop quotas are owed min(|set|, ell)
    seats from their set, filled by global positional score (ties to the
    lowest candidate index).
    """
    if profile.kind != STRICT:
        raise ModeError("quota scoring rule needs complete strict orders")
    if not 1 <= k <= profile.m:
        raise ProfileError(f"need 1 <= k <= m, got k={k}, m={profile.m}")
    n, m = profile.n, profile.m
    rule = RuleId("qbs_md", tuple(scoring) if scoring is not None else borda_scoring(m))
    vector = rule.scoring
    if len(vector) != m:
        raise ProfileError("scoring vector length must equal the candidate count")
    score = [0] * m
    for order in profile.orders:
        for pos, c in enumerate(order.sequence):
            score[c] += vector[pos]

    winners: set[int] = set()
    for r in range(1, m + 1):
        parts: dict[frozenset[int], int] = {}
        for v, order in enumerate(profile.orders):
            key = frozenset(order.sequence[:r])
            parts[key] = parts.get(key, 0) + 1
        for support, size in parts.items():
            # largest ell with size > ell * n/(k+1)
            ell = -(-size * (k + 1) // n) - 1
            owed = min(len(support), ell)
            pool = sorted(support, key=lambda c: (-score[c], c))
            for c in pool:
                if len(winners & support) >= owed or len(winners) >= k:
                    break
                if c not in winners:
                    winners.add(c)
        if len(winners) >= k:
            break
    return frozenset(winners)


class ReverseSequential:
    """Run a base rule top-down, deleting one candidate per size step.

    The committee of size k is the base rule's choice on the profile
    restricted to the size-(k+1) committee, starting from the full
    candidate set; nesting holds by construction.  Chains are memoized
    per profile.
    """

    def __init__(self, base: RuleFn, name: str = "revseq"):
        self.base = base
        self.name = name
        self._chains: dict[PreferenceProfile, tuple[frozenset[int], ...]] = {}

    def chain(self, profile: PreferenceProfile) -> tuple[frozenset[int], ...]:
        """Committees for k = 1..m, as a tuple indexed by k - 1."""
        cached = self._chains.get(profile)
        if cached is not None:
            return cached
        if profile.kind != STRICT:
            raise ModeError("reverse-sequential rules are defined on strict profiles")
        committees: list[frozenset[int]] = [frozenset()] * profile.m
        current = frozenset(range(profile.m))
        committees[profile.m - 1] = current
        for size in range(profile.m - 1, 0, -1):
            restriction = restrict_profile(profile, current)
            chosen = self.base(restriction.profile, size)
            current = restriction.to_parent(chosen)
            committees[size - 1] = current
        result = tuple(committees)
        self._chains[profile] = result
        return result

    def __call__(self, profile: PreferenceProfile, k: int) -> frozenset[int]:
        if not 1 <= k <= profile.m:
            raise ProfileError(f"need 1 <= k <= m, got k={k}, m={profile.m}")
        return self.chain(profile)[k - 1]


def reverse_sequential(base: RuleFn, name: str = "revseq") -> ReverseSequential:
    return ReverseSequential(base, name)


def make_rule(rule: RuleId | str, allow_large: bool = False) -> RuleFn:
    """Resolve a rule id (e.g. ``stv``, ``revseq:ordered_phragmen``) to a callable."""
    if isinstance(rule, str):
        rule = RuleId(rule)
    name = rule.name
    if name.startswith("revseq:"):
        base = make_rule(RuleId(name.split(":", 1)[1], rule.scoring, rule.tiebreak))
        return reverse_sequential(base, name)
    if name == "scr":
        return lambda profile, k: frozenset(scr(profile, k, allow_large).elected)
    if name == "stv":
        return stv
    if name == "ordered_phragmen":
        return lambda profile, k: ordered_phragmen(profile, k, rule.tiebreak)
    if name == "qbs_md":
        return lambda profile, k: qbs_md(profile, k, rule.scoring)
    raise ProfileError(f"unknown rule {name!r}")
