"""The solid coalition refinement rule.

Seats are filled one at a time.  For each seat the candidate domain starts
at the full candidate set and is repeatedly refined to the supported set
of a coalition maximizing the underrepresentation value, until exactly one
unelected candidate remains; that candidate is elected.  The procedure
never consults the target committee size beyond the seat count, which is
what makes prefixes of the elected order the committees for smaller sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coalitions import Coalition, _phi_argmax_masks, check_weak_guard
from .core import WEAK, Committee, PreferenceProfile, bitset
from .errors import ProfileError


@dataclass(frozen=True)
class Refinement:
    """One while-loop iteration: the domain and the coalition that shrank it."""

    domain: frozenset[int]
    coalition: Coalition
    rho: Fraction


@dataclass(frozen=True)
class SeatStep:
    """The refinement chain that elected one candidate.

    ``forced`` marks seats filled without any supporting coalition, which
    can happen only under truncated preferences once every coalition's
    candidates are already seated.
    """

    candidate: int
    refinements: tuple[Refinement, ...]
    forced: bool = False


@dataclass(frozen=True)
class SelectionTrace:
    elected: tuple[int, ...]
    steps: tuple[SeatStep, ...] = field(repr=False)

    def committee(self, k: int | None = None) -> frozenset[int]:
        k = len(self.elected) if k is None else k
        return frozenset(self.elected[:k])


def scr(profile: PreferenceProfile, k: int, allow_large: bool = False) -> SelectionTrace:
    """Run the refinement rule for ``k`` seats and return the full trace."""
    if not 1 <= k <= profile.m:
        raise ProfileError(f"need 1 <= k <= m, got k={k}, m={profile.m}")
    if profile.kind == WEAK:
        check_weak_guard(profile, allow_large)

    full = profile.full_mask
    w_mask = 0
    elected: list[int] = []
    steps: list[SeatStep] = []
    for _ in range(k):
        d_mask = full
        refinements: list[Refinement] = []
        forced = False
        while (d_mask & ~w_mask).bit_count() > 1:
            entry = _phi_argmax_masks(profile, w_mask, d_mask, allow_large)
            if entry is None:
                forced = True
                break
            v_mask, c_mask, p_mask = entry
            rho = Fraction(v_mask.bit_count(), (p_mask & w_mask).bit_count() + 1)
            refinements.append(
                Refinement(bitset(d_mask), Coalition(bitset(v_mask), bitset(c_mask)), rho)
            )
            d_mask = c_mask
        if forced:
            winner_bit = ~w_mask & full & -(~w_mask & full)
        else:
            winner_bit = d_mask & ~w_mask
        winner = winner_bit.bit_length() - 1
        w_mask |= winner_bit
        elected.append(winner)
        steps.append(SeatStep(winner, tuple(refinements), forced))
    return SelectionTrace(tuple(elected), tuple(steps))


def scr_committee(profile: PreferenceProfile, k: int, allow_large: bool = False) -> Committee:
    return Committee.of(scr(profile, k, allow_large).elected)
