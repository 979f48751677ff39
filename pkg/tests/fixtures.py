"""Shared worked-example profiles.

Candidate letters map to indices alphabetically (a=0, b=1, ...) unless a
comment says otherwise.
"""

from scrvote.core import PreferenceProfile

A, B, C, D, E, F = range(6)

# Eight voters over five candidates; three-voter blocs on a and e force
# {a, e} under the Droop quota at k=2 while Hare only asks for one of a/b/c.
TWO_BLOC_EIGHT = PreferenceProfile.strict(
    [[A, B, C, D, E]] * 3
    + [[C, B, A, D, E]]
    + [[E, D, A, B, C]] * 3
    + [[D, B, E, C, A]]
)

# Three voters, four candidates; d is everyone's second choice (Condorcet
# and Borda winner) but {a, b, c} is the unique proportional triple.
COMPROMISE_FOUR = PreferenceProfile.strict([[A, D, B, C], [B, D, C, A], [C, D, A, B]])

# Weak orders where {v1,v2,v3} supports {a,b} with periphery {a,b,c,d}.
PERIPHERY_WEAK = PreferenceProfile.weak(
    [
        [[A], [B, D], [C, E]],
        [[B], [A], [C, D, E]],
        [[B], [A, C], [D, E]],
    ],
    m=5,
)

# Two voters split over {a, b}; four voters sweep d, e, f.  Candidates
# are a=0, b=1, d=2, e=3, f=4.  The eating rule elects {d, e, f} at k=3,
# starving the {a, b} pair bloc.
PAIR_VS_BLOC_TRUNCATED = PreferenceProfile.truncated(
    [[0, 1], [1, 0], [2, 3, 4], [2, 3, 4], [2, 3, 4], [2, 3, 4]], m=5
)
# Same profile completed canonically (remaining candidates ascending).
PAIR_VS_BLOC_COMPLETE = PreferenceProfile.strict(
    [[0, 1, 2, 3, 4], [1, 0, 2, 3, 4]] + [[2, 3, 4, 0, 1]] * 4
)

# Weak profile where restricting to a size-3 committee and re-running
# drops the {d}-bloc's representation.
WEAK_RESTRICTION_TRAP = PreferenceProfile.weak(
    [
        [[A, B], [C, D]],
        [[A, B, C], [D]],
        [[C, D], [A, B]],
        [[D], [A, B, C]],
    ],
    m=4,
)

# Five voters, four candidates; the refinement rule's worked instance.
REFINEMENT_FIVE = PreferenceProfile.strict(
    [[A, B, C, D], [A, C, B, D], [C, B, A, D], [D, A, B, C], [D, A, B, C]]
)

# A committee-monotone proportional chain exists here that no top-down
# elimination scheme can produce.
NESTED_CHOICE_FOUR = PreferenceProfile.strict(
    [[A, B, C, D], [A, C, B, D], [B, A, C, D], [D, A, B, C]]
)

# Two voters sharing a strong second choice; candidates c1=0, c2=1,
# c3=2, filler x=3.  Under Borda the shared candidate wins alone at k=1
# but vanishes at k=2.
SCORING_TIE_SMALL = PreferenceProfile.strict([[0, 2, 3, 1], [1, 2, 3, 0]])
# Minimal three-candidate variant; needs a scoring vector with s1 < 2*s2.
SCORING_TIE_SMALL_M3 = PreferenceProfile.strict([[0, 2, 1], [1, 2, 0]])
SCORING_M3 = (3, 2, 0)

# Eleven voters, twelve candidates (c1..c12 = 0..11): two four-voter
# wheels plus a three-voter bloc whose head c9 rides every big coalition.
_WHEEL_ONE = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]]
_WHEEL_TWO = [[4, 5, 6, 7], [5, 6, 7, 4], [6, 7, 4, 5], [7, 4, 5, 6]]
SCORING_TIE_LARGE = PreferenceProfile.strict(
    [row + [8] + sorted(set(range(12)) - set(row) - {8}) for row in _WHEEL_ONE]
    + [row + [8] + sorted(set(range(12)) - set(row) - {8}) for row in _WHEEL_TWO]
    + [[8, 9, 10, 11] + sorted(set(range(12)) - {8, 9, 10, 11})] * 3
)
SCORING_TOP_HEAVY = (2, 1) + (0,) * 10

# Moving b up one slot in voter 3's ranking expels b from the top-down
# eliminated pair committee.
MOVE_UP_BEFORE = PreferenceProfile.strict(
    [[A, B, C, D], [A, B, C, D], [A, D, B, C], [C, A, B, D], [D, C, A, B]]
)
MOVE_UP_AFTER = PreferenceProfile.strict(
    [[A, B, C, D], [A, B, C, D], [B, A, D, C], [C, A, B, D], [D, C, A, B]]
)

UNANIMOUS_THREE = PreferenceProfile.strict([[A, B, C]] * 3)
