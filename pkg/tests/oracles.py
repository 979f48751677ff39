"""Definition-level oracles, kept independent of the library's fast paths."""

from scrvote.core import PreferenceProfile, mask_of


def voter_prefix_masks(profile: PreferenceProfile) -> list[set[int]]:
    out: list[set[int]] = []
    for order in profile.orders:
        acc = 0
        prefixes = set()
        for c in order.sequence:
            acc |= 1 << c
            prefixes.add(acc)
        out.append(prefixes)
    return out


def naive_check_psc(profile: PreferenceProfile, k: int, committee, scheme: str) -> bool:
    """Quantify over every voter subset, candidate subset, and ell directly."""
    n, m = profile.n, profile.m
    w_mask = mask_of(committee)
    prefixes = voter_prefix_masks(profile)
    for c_mask in range(1, 1 << m):
        supporters = 0
        for v in range(n):
            if c_mask in prefixes[v]:
                supporters |= 1 << v
        if not supporters:
            continue
        sub = supporters
        while True:
            size = sub.bit_count()
            if size:
                for ell in range(1, k + 1):
                    if scheme == "droop":
                        entitled = size * (k + 1) > ell * n
                    else:
                        entitled = size * k >= ell * n
                    if entitled and c_mask & ~w_mask and (c_mask & w_mask).bit_count() < ell:
                        return False
            if sub == 0:
                break
            sub = (sub - 1) & supporters
    return True


def brute_rank_of(order, candidate) -> int:
    above = 0
    for cls in order.classes:
        if candidate in cls:
            return above + 1
        above += len(cls)
    raise KeyError(candidate)


def swap_distance_by_table(first, second) -> int:
    """Count disagreements via an explicit pair table."""
    disagreements = 0
    for x in range(first.m):
        for y in range(first.m):
            if x == y:
                continue
            first_says = first.order.index(x) < first.order.index(y)
            second_says = second.order.index(x) < second.order.index(y)
            if first_says and not second_says:
                disagreements += 1
    return disagreements
