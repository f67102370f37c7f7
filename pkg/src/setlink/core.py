"""Ground sets, bitmask subsets and explicit set families.

Subsets of the ground set are plain ``int`` bitmasks: element ``x`` (1-based)
lives in bit ``x - 1``. Elements are 1-based throughout the public API so that
fixtures read the same way they are usually written down.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Iterator, Optional

from .errors import NotClosureSpace, NotFeasible, ParseError

MAX_GROUND = 16

ElementSet = int


def bit(x: int) -> int:
    return 1 << (x - 1)


def to_mask(elements: Iterable[int]) -> ElementSet:
    mask = 0
    for x in elements:
        if x < 1:
            raise ValueError(f"elements are 1-based, got {x}")
        mask |= 1 << (x - 1)
    return mask


def elements_of(mask: ElementSet) -> tuple[int, ...]:
    """Members of ``mask`` in ascending order, 1-based."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: ElementSet) -> int:
    return bin(mask).count("1")


def is_subset(a: ElementSet, b: ElementSet) -> bool:
    return a & ~b == 0


def format_set(mask: ElementSet, ground: Optional["GroundSet"] = None) -> str:
    if ground is not None and ground.labels is not None:
        return "{" + ",".join(ground.labels[x - 1] for x in elements_of(mask)) + "}"
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if not 1 <= self.size <= MAX_GROUND:
            raise ValueError(f"ground set size must be in 1..{MAX_GROUND}, got {self.size}")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != self.size:
                raise ValueError(f"{len(labels)} labels for a ground set of size {self.size}")
            if len(set(labels)) != len(labels):
                raise ValueError("ground set labels must be distinct")

    @property
    def full(self) -> ElementSet:
        return (1 << self.size) - 1

    def elements(self) -> range:
        return range(1, self.size + 1)

    def subsets(self) -> range:
        """All subsets as masks, in canonical (ascending integer) order."""
        return range(1 << self.size)

    def label(self, x: int) -> str:
        return self.labels[x - 1] if self.labels is not None else str(x)

    def contains(self, mask: ElementSet) -> bool:
        return 0 <= mask and mask >> self.size == 0

    def index_of(self, token) -> int:
        """Resolve a 1-based integer or a label to an element index."""
        if isinstance(token, bool):
            raise ValueError(f"not an element: {token!r}")
        if isinstance(token, int):
            if not 1 <= token <= self.size:
                raise ValueError(f"element {token} out of range 1..{self.size}")
            return token
        if isinstance(token, str):
            if self.labels is not None and token in self.labels:
                return self.labels.index(token) + 1
            if token.isdigit():
                return self.index_of(int(token))
        raise ValueError(f"unknown element {token!r}")

    def subset(self, tokens: Iterable) -> ElementSet:
        return to_mask(self.index_of(t) for t in tokens)


class SetFamily:
    """An explicit, duplicate-free family of subsets of one ground set.

    Members are kept sorted as integers (the canonical order). Construction
    silently drops duplicates; the JSON reader is stricter.
    """

    __slots__ = ("ground", "members", "_index")

    def __init__(self, ground: GroundSet, members: Iterable[ElementSet]):
        index = frozenset(members)
        for m in index:
            if not ground.contains(m):
                raise ValueError(f"member {m:#b} not a subset of a {ground.size}-element ground set")
        self.ground = ground
        self.members: tuple[ElementSet, ...] = tuple(sorted(index))
        self._index = index

    @classmethod
    def from_sets(cls, ground: GroundSet | int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        if isinstance(ground, int):
            ground = GroundSet(ground)
        return cls(ground, (to_mask(s) for s in sets))

    @classmethod
    def powerset(cls, ground: GroundSet | int) -> "SetFamily":
        if isinstance(ground, int):
            ground = GroundSet(ground)
        return cls(ground, ground.subsets())

    def __contains__(self, mask: object) -> bool:
        return mask in self._index

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.ground == other.ground and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.ground, self.members))

    def __repr__(self) -> str:
        body = ", ".join(format_set(m, self.ground) for m in self.members)
        return f"SetFamily(n={self.ground.size}, [{body}])"

    @property
    def nonempty(self) -> tuple[ElementSet, ...]:
        """The non-empty members, in canonical order."""
        if self.members and self.members[0] == 0:
            return self.members[1:]
        return self.members

    def position(self, mask: ElementSet) -> int:
        i = bisect_left(self.members, mask)
        if i < len(self.members) and self.members[i] == mask:
            return i
        raise NotFeasible(f"{format_set(mask, self.ground)} is not a member")


def extreme_points(family: SetFamily, X: ElementSet) -> ElementSet:
    """ex(X): the elements of a member ``X`` whose removal stays in the family."""
    if X not in family:
        raise NotFeasible(f"{format_set(X, family.ground)} is not a member")
    return _ex(family, X)


def _ex(family: SetFamily, X: ElementSet) -> ElementSet:
    out = 0
    rest = X
    while rest:
        low = rest & -rest
        if X ^ low in family:
            out |= low
        rest ^= low
    return out


def covers(family: SetFamily, X: ElementSet) -> list[ElementSet]:
    """Inclusion-minimal members containing ``X``, ascending."""
    if X in family:
        return [X]
    sup = [A for A in family.members if A & X == X]
    # ascending integer order puts every proper subset before its supersets
    minimal: list[ElementSet] = []
    for A in sup:
        if not any(B & A == B for B in minimal):
            minimal.append(A)
    return minimal


def interval(family: SetFamily, x: int, X: ElementSet) -> list[ElementSet]:
    """[x, X]: the members ``A`` with ``x`` in ``A`` and ``A`` inside ``X``."""
    b = bit(x)
    if not X & b:
        return []
    return [A for A in family.members if A & b and A & ~X == 0]


def complement_family(family: SetFamily) -> SetFamily:
    full = family.ground.full
    return SetFamily(family.ground, (full ^ X for X in family.members))


def closure(family: SetFamily, A: ElementSet) -> ElementSet:
    """Intersection of every member containing ``A``.

    Only defined on closure spaces; anything else raises NotClosureSpace
    instead of returning a set that may not be a member.
    """
    from .properties import is_closure_space

    verdict = is_closure_space(family)
    if not verdict:
        raise NotClosureSpace(f"not a closure space: {verdict.describe(family.ground)}")
    full = family.ground.full
    return reduce(lambda acc, X: acc & X, (X for X in family.members if A & X == A), full)


def parse_family(data: dict) -> SetFamily:
    """Read ``{"ground": n | [labels], "family": [[...], ...]}``."""
    if not isinstance(data, dict) or "ground" not in data or "family" not in data:
        raise ParseError('family JSON needs "ground" and "family" keys')
    g = data["ground"]
    try:
        if isinstance(g, list):
            ground = GroundSet(len(g), tuple(str(s) for s in g))
        elif isinstance(g, int) and not isinstance(g, bool):
            ground = GroundSet(g)
        else:
            raise ValueError(f"bad ground {g!r}")
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    seen: dict[ElementSet, int] = {}
    for i, raw in enumerate(data["family"]):
        if not isinstance(raw, list):
            raise ParseError(f"member #{i} is not a list: {raw!r}")
        try:
            tokens = [ground.index_of(t) for t in raw]
        except ValueError as exc:
            raise ParseError(f"member #{i} {raw!r}: {exc}") from None
        if len(set(tokens)) != len(tokens):
            raise ParseError(f"member #{i} {raw!r} repeats an element")
        mask = to_mask(tokens)
        if mask in seen:
            raise ParseError(f"member #{i} {raw!r} duplicates member #{seen[mask]}")
        seen[mask] = i
    return SetFamily(ground, seen)


def set_to_json(mask: ElementSet, ground: GroundSet) -> list:
    if ground.labels is not None:
        return [ground.label(x) for x in elements_of(mask)]
    return list(elements_of(mask))


def family_to_json(family: SetFamily) -> dict:
    g = family.ground
    return {
        "ground": list(g.labels) if g.labels is not None else g.size,
        "family": [set_to_json(m, g) for m in family.members],
    }


def subsets_of(mask: ElementSet) -> Iterator[ElementSet]:
    """All subsets of ``mask`` including ``0`` and ``mask`` (descending)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def pairs(ground: GroundSet) -> Iterator[tuple[int, ElementSet]]:
    """Every (x, X) with x in X, ordered by x then X."""
    for x in ground.elements():
        b = bit(x)
        for X in ground.subsets():
            if X & b:
                yield x, X

