"""Plain-text profile files.

Format::

    # comment lines start with '#'
    kind: strict
    candidates: alice, bob, carol, dan
    3: alice, bob, carol, dan
    1: {alice, bob}, carol, dan      # braces group indifferent candidates
    2: alice, bob                    # truncation by omission

A ballot line is ``count: order-spec``; the count expands to that many
identical voters, in file order.  Candidates may be written by name or
by zero-based index.  The canonical serialization merges consecutive
identical ballots, so parse -> format -> parse is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PreferenceProfile, WeakOrder
from .errors import ProfileError, ProfileParseError


@dataclass(frozen=True)
class ProfileDocument:
    profile: PreferenceProfile
    names: tuple[str, ...]

    def name_of(self, candidate: int) -> str:
        return self.names[candidate]

    def index_of(self, token: str) -> int:
        token = token.strip()
        try:
            return self.names.index(token)
        except ValueError:
            pass
        try:
            index = int(token)
        except ValueError:
            raise ProfileParseError(f"unknown candidate {token!r}") from None
        if not 0 <= index < len(self.names):
            raise ProfileParseError(f"candidate index {index} out of range")
        return index

    def committee(self, spec: str) -> frozenset[int]:
        return frozenset(self.index_of(token) for token in spec.split(","))


def _split_groups(spec: str) -> list[list[str]]:
    """Split an order spec on top-level commas; braces form tie groups."""
    groups: list[list[str]] = []
    i = 0
    length = len(spec)
    while i < length:
        while i < length and spec[i] in " \t,":
            i += 1
        if i >= length:
            break
        if spec[i] == "{":
            end = spec.find("}", i)
            if end < 0:
                raise ProfileParseError("unclosed brace in ballot")
            tokens = [t.strip() for t in spec[i + 1 : end].split(",")]
            i = end + 1
        else:
            end = i
            while end < length and spec[end] not in ",{":
                end += 1
            if end < length and spec[end] == "{":
                raise ProfileParseError("brace must start a group")
            tokens = [spec[i:end].strip()]
            i = end
        tokens = [t for t in tokens if t]
        if not tokens:
            raise ProfileParseError("empty group in ballot")
        groups.append(tokens)
    return groups


def parse_profile(text: str) -> ProfileDocument:
    kind: str | None = None
    names: tuple[str, ...] | None = None
    declared_n: int | None = None
    ballots: list[tuple[int, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        head = head.strip().lower()
        rest = rest.strip()
        if not _:
            raise ProfileParseError(f"expected 'key: value', got {line!r}")
        if head == "kind":
            kind = rest
        elif head == "candidates":
            names = tuple(t.strip() for t in rest.split(","))
            if not all(names) or len(set(names)) != len(names):
                raise ProfileParseError("candidate names must be unique and nonempty")
        elif head == "voters":
            declared_n = int(rest)
        else:
            try:
                count = int(head)
            except ValueError:
                raise ProfileParseError(f"unknown header {head!r}") from None
            if count < 1:
                raise ProfileParseError("ballot counts must be positive")
            ballots.append((count, rest))
    if kind is None or names is None:
        raise ProfileParseError("profile needs 'kind:' and 'candidates:' lines")
    if not ballots:
        raise ProfileParseError("profile has no ballots")

    document_names = names
    lookup: dict[str, int] = {name: i for i, name in enumerate(document_names)}

    def resolve(token: str) -> int:
        if token in lookup:
            return lookup[token]
        try:
            index = int(token)
        except ValueError:
            raise ProfileParseError(f"unknown candidate {token!r}") from None
        if not 0 <= index < len(document_names):
            raise ProfileParseError(f"candidate index {index} out of range")
        return index

    orders: list[WeakOrder] = []
    for count, spec in ballots:
        groups = _split_groups(spec)
        try:
            order = WeakOrder.from_classes([[resolve(t) for t in g] for g in groups])
        except ProfileError as exc:
            raise ProfileParseError(str(exc)) from None
        orders.extend([order] * count)
    if declared_n is not None and declared_n != len(orders):
        raise ProfileParseError(f"declared {declared_n} voters but found {len(orders)}")
    try:
        profile = PreferenceProfile(len(document_names), tuple(orders), kind)
    except ProfileError as exc:
        raise ProfileParseError(str(exc)) from None
    return ProfileDocument(profile, document_names)


def format_profile(document: ProfileDocument) -> str:
    names = document.names
    lines = [f"kind: {document.profile.kind}", "candidates: " + ", ".join(names)]

    def spec_of(order: WeakOrder) -> str:
        parts = []
        for cls in order.classes:
            if len(cls) == 1:
                parts.append(names[cls[0]])
            else:
                parts.append("{" + ", ".join(names[c] for c in cls) + "}")
        return ", ".join(parts)

    run: WeakOrder | None = None
    count = 0
    for order in document.profile.orders:
        if order == run:
            count += 1
            continue
        if run is not None:
            lines.append(f"{count}: {spec_of(run)}")
        run, count = order, 1
    if run is not None:
        lines.append(f"{count}: {spec_of(run)}")
    return "\n".join(lines) + "\n"


def load_profile(path) -> ProfileDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_profile(handle.read())


def save_profile(path, document: ProfileDocument) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_profile(document))


def default_names(m: int) -> tuple[str, ...]:
    """a, b, ..., z then c26, c27, ... for larger candidate sets."""
    alphabet = "abcdefghijklmnopqrstuvwxyz"
    return tuple(alphabet[i] if i < 26 else f"c{i}" for i in range(m))
