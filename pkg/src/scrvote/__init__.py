"""Proportional, committee-monotone committee voting and rank aggregation."""

from .axioms import (
    AxiomReport,
    brute_force_feasible,
    check_candidate_monotone,
    check_committee_monotone,
    check_ilvb,
    check_ipsc,
    check_psc,
    check_rank_jr,
    check_weak_psc,
    rank_jr_incompatibility_witness,
)
from .coalitions import (
    Coalition,
    PeripheryView,
    UnderrepScore,
    is_gsc,
    maximal_supporters,
    periphery,
    phi_argmax,
    strict_prefix_sets,
    underrep,
)
from .core import (
    Committee,
    PreferenceProfile,
    Quota,
    Ranking,
    WeakOrder,
    quota,
    rank_of,
    remove_voters,
    restrict_profile,
    unranked_set,
)
from .errors import (
    BudgetExceededError,
    EmptyRestrictionError,
    ModeError,
    NonMonotoneRuleError,
    ProfileError,
    ProfileParseError,
    ScrvoteError,
    SizeGuardError,
    StallError,
    UnrankedCandidateError,
)
from .profile_io import ProfileDocument, format_profile, load_profile, parse_profile
from .rules import (
    ApportionmentResult,
    RuleId,
    dhondt,
    make_rule,
    ordered_phragmen,
    qbs_md,
    reverse_sequential,
    stv,
)
from .scr import SelectionTrace, scr, scr_committee
from .swf import (
    CurvePoint,
    chain_to_ranking,
    droop_bound,
    hare_bound,
    ranking_psc,
    swap_distance,
    worst_case_curve,
)

__version__ = "0.1.0"
