"""Rank aggregation built on committee-monotone rules.

A committee-monotone rule induces a full output ranking (position k+1
holds the candidate added when the committee grows from k to k+1), and
prefix-wise proportionality of that ranking can be checked directly.
The worst-case curve machinery measures how far a proportional output
ranking can stray, in swap distance, from a ranking reported by an
alpha fraction of the voters; only the constraints generated by that
bloc's own nested prefix coalitions are imposed, which reproduces the
published reference data for six candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable

from .axioms import SATISFIED, VIOLATED, AxiomReport, check_psc
from .core import PreferenceProfile, Ranking
from .errors import NonMonotoneRuleError, ProfileError

RuleFn = Callable[[PreferenceProfile, int], frozenset[int]]

CURVE_MAX_M = 8


@dataclass(frozen=True)
class CurvePoint:
    """Curve value on the bloc-fraction interval (alpha_low, alpha_high]."""

    alpha_low: Fraction
    alpha_high: Fraction
    value: Fraction


def swap_distance(first: Ranking, second: Ranking) -> int:
    """Number of candidate pairs the two rankings order oppositely."""
    if first.m != second.m:
        raise ProfileError("rankings must cover the same candidates")
    position = {c: i for i, c in enumerate(second.order)}
    count = 0
    order = first.order
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if position[order[i]] > position[order[j]]:
                count += 1
    return count


def chain_to_ranking(rule: RuleFn, profile: PreferenceProfile) -> Ranking:
    """The output ranking whose top-k prefix is the rule's size-k committee."""
    order: list[int] = []
    previous: frozenset[int] = frozenset()
    for k in range(1, profile.m + 1):
        current = frozenset(rule(profile, k))
        if not previous <= current:
            raise NonMonotoneRuleError(k - 1, min(previous - current))
        added = current - previous
        if len(added) != 1:
            raise ProfileError(f"rule returned {len(current)} candidates for k={k}")
        order.append(next(iter(added)))
        previous = current
    return Ranking(tuple(order))


def ranking_psc(profile: PreferenceProfile, ranking: Ranking, scheme: str = "droop") -> AxiomReport:
    """Check every top-k prefix of a ranking for PSC."""
    if ranking.m != profile.m:
        raise ProfileError("ranking must cover all candidates")
    axiom = f"ranking-psc-{scheme}"
    for k in range(1, profile.m + 1):
        report = check_psc(profile, k, ranking.top(k), scheme)
        if not report.satisfied:
            witness = {"k": k, **(report.witness or {})}
            return AxiomReport(axiom, VIOLATED, witness, {"scheme": scheme})
    return AxiomReport(axiom, SATISFIED, None, {"scheme": scheme})


def hare_bound(alpha: Fraction, m: int, normalized: bool = False) -> Fraction:
    """Swap-distance guarantee for rankings proportional under the Hare quota."""
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1 or m < 2:
        raise ProfileError("need 0 < alpha <= 1 and m >= 2")
    bound = (1 - alpha + Fraction(1 + alpha, m)) * math.comb(m, 2)
    return bound / math.comb(m, 2) if normalized else bound


def droop_bound(alpha: Fraction, m: int, normalized: bool = False) -> Fraction:
    """Swap-distance guarantee for rankings proportional under the Droop quota."""
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1 or m < 2:
        raise ProfileError("need 0 < alpha <= 1 and m >= 2")
    bound = (1 - alpha) * Fraction(m, m - 1) * math.comb(m, 2)
    return bound / math.comb(m, 2) if normalized else bound


def prefix_demand(alpha: Fraction, k: int, scheme: str) -> int:
    """How many leading bloc candidates a size-k proportional committee owes.

    The bloc solidly supports each of its ranking prefixes; the largest
    binding ell collapses all of those demands into one: the top L
    reference candidates must sit inside the top-k of the output.
    """
    if scheme == "hare":
        return (alpha.numerator * k) // alpha.denominator
    num = alpha.numerator * (k + 1)
    return -(-num // alpha.denominator) - 1


def _breakpoints(m: int, scheme: str) -> list[Fraction]:
    points = {Fraction(1)}
    for k in range(1, m):
        den = k if scheme == "hare" else k + 1
        for ell in range(1, k + 1):
            value = Fraction(ell, den)
            if 0 < value < 1:
                points.add(value)
    return sorted(points)


def worst_case_curve(m: int, scheme: str) -> list[CurvePoint]:
    """Max normalized swap distance of a proportional ranking to a bloc ranking.

    Enumerates all m! output rankings; the value is constant between
    consecutive quota breakpoints and is reported on half-open intervals
    (alpha_low, alpha_high].
    """
    if scheme not in ("droop", "hare"):
        raise ProfileError(f"unknown quota scheme {scheme!r}")
    if not 2 <= m <= CURVE_MAX_M:
        raise ProfileError(f"need 2 <= m <= {CURVE_MAX_M} for full enumeration")
    total = math.comb(m, 2)

    ranked: list[tuple[int, tuple[int, ...]]] = []
    for perm in permutations(range(m)):
        inversions = sum(
            1
            for i in range(m)
            for j in range(i + 1, m)
            if perm[i] > perm[j]
        )
        # worst_positions[r] = latest position among reference candidates 0..r-1
        position = [0] * m
        for pos, c in enumerate(perm):
            position[c] = pos + 1
        worst = []
        acc = 0
        for c in range(m):
            acc = max(acc, position[c])
            worst.append(acc)
        ranked.append((inversions, tuple(worst)))
    ranked.sort(key=lambda entry: -entry[0])

    edges = [Fraction(0)] + _breakpoints(m, scheme)
    points: list[CurvePoint] = []
    for low, high in zip(edges, edges[1:]):
        alpha = (low + high) / 2
        demands = [(k, prefix_demand(alpha, k, scheme)) for k in range(1, m)]
        demands = [(k, d) for k, d in demands if d > 0]
        for inversions, worst in ranked:
            if all(worst[d - 1] <= k for k, d in demands):
                value = Fraction(inversions, total)
                break
        else:  # pragma: no cover - the identity ranking is always feasible
            raise ProfileError("no feasible ranking found")
        if points and points[-1].value == value:
            points[-1] = CurvePoint(points[-1].alpha_low, high, value)
        else:
            points.append(CurvePoint(low, high, value))
    return points


# Reference curve for the squared variant of the majority rank-aggregation
# method at m = 6, transcribed from published plot data; shipped for
# comparison plots only, the rule itself is out of scope here.
SQUARED_KEMENY_REFERENCE_M6: tuple[CurvePoint, ...] = tuple(
    CurvePoint(Fraction(low), Fraction(high), Fraction(num, 15))
    for low, high, num in [
        ("0", "0.171", 15),
        ("0.171", "0.196", 14),
        ("0.196", "0.226", 13),
        ("0.226", "0.271", 12),
        ("0.271", "0.323", 11),
        ("0.323", "0.377", 10),
        ("0.377", "0.438", 9),
        ("0.438", "0.5", 8),
        ("0.5", "0.567", 7),
        ("0.567", "0.633", 6),
        ("0.633", "0.7", 5),
        ("0.7", "0.767", 4),
        ("0.767", "0.833", 3),
        ("0.833", "0.9", 2),
        ("0.9", "0.967", 1),
        ("0.967", "1", 0),
    ]
)


def curve_value_at(points: Iterable[CurvePoint], alpha: Fraction) -> Fraction:
    """Value of a step curve at a bloc fraction in (0, 1]."""
    alpha = Fraction(alpha)
    for point in points:
        if point.alpha_low < alpha <= point.alpha_high:
            return point.value
    raise ProfileError(f"alpha {alpha} outside the curve domain")
