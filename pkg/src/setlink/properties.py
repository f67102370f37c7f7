"""Structural properties of set families, each decided with a witness.

Every checker scans in canonical order (members ascending as integers, then
elements ascending) so the reported witness is the lexicographically smallest
violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .core import (
    ElementSet,
    GroundSet,
    SetFamily,
    _ex,
    bit,
    covers,
    complement_family,
    elements_of,
    format_set,
    set_to_json,
)
from .errors import DomainMismatch, EmptyFamily, InternalError

# witness keys holding an element rather than a set
_ELEMENT_KEYS = frozenset({"x", "y", "element"})


@dataclass(frozen=True)
class Verdict:
    """Outcome of one property check.

    ``witness`` maps role names to masks (sets) or 1-based elements; keys in
    ``_ELEMENT_KEYS`` are elements, other integers are sets, and anything
    else (rationals, notes) is rendered as a string.
    """

    property: str
    holds: bool
    witness: Optional[dict[str, Any]] = None

    def __post_init__(self) -> None:
        if self.holds and self.witness is not None:
            raise InternalError(f"{self.property}: a true verdict carries no witness")
        if not self.holds and not self.witness:
            raise InternalError(f"{self.property}: a false verdict needs a witness")

    def __bool__(self) -> bool:
        return self.holds

    def _render(self, key: str, value, ground: GroundSet, as_json: bool):
        if isinstance(value, bool):
            return value
        if key in _ELEMENT_KEYS:
            return ground.label(value) if ground.labels is not None else value
        if not isinstance(value, int):
            return str(value) if as_json else value
        return set_to_json(value, ground) if as_json else format_set(value, ground)

    def to_json(self, ground: GroundSet) -> dict:
        witness = None
        if self.witness is not None:
            witness = {k: self._render(k, v, ground, True) for k, v in self.witness.items()}
        return {"property": self.property, "holds": self.holds, "witness": witness}

    def describe(self, ground: GroundSet) -> str:
        if self.holds:
            return f"{self.property}: holds"
        parts = ", ".join(f"{k}={self._render(k, v, ground, False)}" for k, v in self.witness.items())
        return f"{self.property}: fails ({parts})"


def _require_nonempty(family: SetFamily) -> None:
    if not family.members:
        raise EmptyFamily("the family has no members")


def is_accessible(family: SetFamily) -> Verdict:
    _require_nonempty(family)
    for X in family.members:
        if X and not _ex(family, X):
            return Verdict("accessible", False, {"X": X})
    return Verdict("accessible", True)


def _up_accessible_direct(family: SetFamily) -> Optional[ElementSet]:
    full = family.ground.full
    for X in family.members:
        if X == full:
            continue
        rest = full & ~X
        while rest:
            low = rest & -rest
            if X | low in family:
                break
            rest ^= low
        else:
            return X
    return None


def is_up_accessible(family: SetFamily) -> Verdict:
    """Every member other than E extends by one element inside the family.

    Also evaluated as accessibility of the complement system; the two routes
    must agree.
    """
    _require_nonempty(family)
    bad = _up_accessible_direct(family)
    dual = is_accessible(complement_family(family))
    if (bad is None) != dual.holds:
        raise InternalError("up-accessibility disagrees with accessibility of the complement")
    if bad is None:
        return Verdict("up_accessible", True)
    return Verdict("up_accessible", False, {"X": bad})


def _chain_down(family: SetFamily) -> Optional[tuple[ElementSet, ElementSet]]:
    members = family.members
    ex = {Y: _ex(family, Y) for Y in members}
    for X in members:
        for Y in members:
            if Y != X and X & Y == X and ex[Y] & ~X == 0:
                return X, Y
    return None


def _chain_up(family: SetFamily) -> Optional[tuple[ElementSet, ElementSet]]:
    members = family.members
    full = family.ground.full
    up = {}
    for X in members:
        ext = 0
        rest = full & ~X
        while rest:
            low = rest & -rest
            if X | low in family:
                ext |= low
            rest ^= low
        up[X] = ext
    for X in members:
        for Y in members:
            if Y != X and X & Y == X and up[X] & Y == 0:
                return X, Y
    return None


def has_chain_property(family: SetFamily) -> Verdict:
    """For members X strictly inside Y, some y in Y - X has Y - y a member.

    The one-step-up form (some X + y a member) is checked too; as universal
    statements the two are equivalent, so a mismatch is a bug.
    """
    _require_nonempty(family)
    down = _chain_down(family)
    up = _chain_up(family)
    if (down is None) != (up is None):
        raise InternalError("down-form and up-form of the chain property disagree")
    if down is None:
        return Verdict("chain", True)
    return Verdict("chain", False, {"X": down[0], "Y": down[1]})


def has_heritage(family: SetFamily) -> Verdict:
    """ex(Y) & X is inside ex(X) for all members X inside Y."""
    _require_nonempty(family)
    members = family.members
    ex = {Y: _ex(family, Y) for Y in members}
    witness = None
    for X in members:
        for Y in members:
            if X & Y != X:
                continue
            stray = ex[Y] & X & ~ex[X]
            if stray:
                witness = {"X": X, "Y": Y, "element": elements_of(stray & -stray)[0]}
                break
        if witness:
            break
    # removal form: Y - x a member implies X - x a member
    removal_ok = all(
        (X ^ bit(x)) in family
        for X in members
        for Y in members
        if X & Y == X
        for x in elements_of(X)
        if (Y ^ bit(x)) in family
    )
    if removal_ok != (witness is None):
        raise InternalError("heritage forms disagree")
    if witness is None:
        return Verdict("heritage", True)
    return Verdict("heritage", False, witness)


def is_closure_space(family: SetFamily) -> Verdict:
    full = family.ground.full
    for needed in (0, full):
        if needed not in family:
            return Verdict("closure_space", False, {"missing": needed})
    members = family.members
    for i, X in enumerate(members):
        for Y in members[i + 1:]:
            if X & Y not in family:
                return Verdict("closure_space", False, {"X": X, "Y": Y})
    return Verdict("closure_space", True)


def is_convex_geometry(family: SetFamily) -> Verdict:
    """Closure space plus up-accessibility, cross-checked against the
    characterization by (0 and E members) + chain + heritage."""
    full = family.ground.full
    closure = is_closure_space(family)
    definitional = closure.holds and is_up_accessible(family).holds
    if family.members:
        characterized = (
            0 in family and full in family
            and has_chain_property(family).holds and has_heritage(family).holds
        )
    else:
        characterized = False
    if definitional != characterized:
        raise InternalError("convex geometry routes disagree")
    if definitional:
        return Verdict("convex_geometry", True)
    if not closure:
        return Verdict("convex_geometry", False, dict(closure.witness))
    return Verdict("convex_geometry", False, dict(is_up_accessible(family).witness))


def is_monotone_linkage(pi, ground: Optional[GroundSet] = None) -> Verdict:
    """pi(x, X) <= pi(x, X + y) for every x in X and y outside X.

    Single-element extensions suffice since inclusion is generated by them.
    """
    ground = ground if ground is not None else pi.ground
    full = ground.full
    for X in ground.subsets():
        if not X:
            continue
        for x in elements_of(X):
            here = pi(x, X)
            for y in elements_of(full & ~X):
                if pi(x, X | bit(y)) < here:
                    return Verdict("monotone", False, {"x": x, "X": X, "y": y})
    return Verdict("monotone", True)


def quasiconcavity_constraints(family: SetFamily) -> list[tuple[ElementSet, ElementSet, tuple[ElementSet, ...]]]:
    """(X, Y, covers(X | Y)) for incomparable non-empty members X < Y.

    Comparable pairs are omitted: their only cover is the larger set, which
    satisfies the inequality trivially. Pairs without any cover impose nothing
    and are omitted as well.
    """
    out = []
    members = family.nonempty
    for i, X in enumerate(members):
        for Y in members[i + 1:]:
            U = X | Y
            if U == X or U == Y:
                continue
            zs = covers(family, U)
            if zs:
                out.append((X, Y, tuple(zs)))
    return out


def is_quasiconcave(F, family: SetFamily, constraints=None) -> Verdict:
    """F(Z) >= min(F(X), F(Y)) for members X, Y and every cover Z of X | Y.

    ``constraints`` may carry a precomputed ``quasiconcavity_constraints``
    list when many functions are tested on the same family.
    """
    values = F.values
    for X in family.nonempty:
        if X not in values:
            raise DomainMismatch(f"no value for member {format_set(X, family.ground)}")
    if constraints is None:
        constraints = quasiconcavity_constraints(family)
    if not values:
        return Verdict("quasiconcave", True)
    floor = min(values[X] for X in family.nonempty) if family.nonempty else None
    for X, Y, zs in constraints:
        need = min(values[X], values[Y])
        if need <= floor:
            continue
        for Z in zs:
            if values[Z] < need:
                return Verdict("quasiconcave", False, {"X": X, "Y": Y, "Z": Z})
    return Verdict("quasiconcave", True)


@dataclass
class PropertyReport:
    accessible: Verdict
    up_accessible: Verdict
    chain: Verdict
    heritage: Verdict
    closure_space: Verdict
    convex_geometry: Verdict
    ground: GroundSet = field(repr=False)

    def verdicts(self) -> list[Verdict]:
        return [
            self.accessible, self.up_accessible, self.chain,
            self.heritage, self.closure_space, self.convex_geometry,
        ]

    def to_json(self) -> dict:
        return {v.property: v.to_json(self.ground) for v in self.verdicts()}

    def to_text(self) -> str:
        return "\n".join(v.describe(self.ground) for v in self.verdicts())


def analyze(family: SetFamily) -> PropertyReport:
    _require_nonempty(family)
    return PropertyReport(
        accessible=is_accessible(family),
        up_accessible=is_up_accessible(family),
        chain=has_chain_property(family),
        heritage=has_heritage(family),
        closure_space=is_closure_space(family),
        convex_geometry=is_convex_geometry(family),
        ground=family.ground,
    )


FILTERS = {
    "accessible": is_accessible,
    "up_accessible": is_up_accessible,
    "chain": has_chain_property,
    "heritage": has_heritage,
    "closure_space": is_closure_space,
    "convex_geometry": is_convex_geometry,
}
