"""The maps between set functions and linkages, and per-instance theorem checks.

``derive_pi_F``  F  -> pi_F(x, X) = max of F over [x, X], or min F when empty
``derive_G_F``   F  -> G_F(X) = min over ex(X) of pi_F(x, X)
``derive_F_pi``  pi -> F_pi(X) = min over ex(X) of pi(x, X)

The ``check_*`` functions refuse (raise a HypothesisFailure) when the
instance does not meet the hypotheses of the claim they test, so a vacuous
pass can never hide a broken harness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import ElementSet, GroundSet, SetFamily, _ex, bit, covers, complement_family, elements_of, pairs
from .errors import (
    ChainHolds,
    EmptyDomain,
    HeritageHolds,
    HypothesisFailure,
    LinkagesDisagree,
    NoHeritage,
    NotAccessible,
    NotMonotone,
    NotQuasiConcave,
)
from .functions import LinkageFunction, SetFunction, meet_linkage
from .properties import (
    Verdict,
    has_chain_property,
    has_heritage,
    is_accessible,
    is_monotone_linkage,
    is_quasiconcave,
)


def _require_accessible(family: SetFamily) -> None:
    if not family.members:
        raise NotAccessible("the family is empty")
    verdict = is_accessible(family)
    if not verdict:
        raise NotAccessible(verdict.describe(family.ground))


def _require_monotone(pi: LinkageFunction) -> None:
    verdict = is_monotone_linkage(pi)
    if not verdict:
        raise NotMonotone(verdict.describe(pi.ground))


def derive_pi_F(F: SetFunction, family: SetFamily) -> LinkageFunction:
    """The linkage induced by F, tabulated over every (x, X) with x in X."""
    values = F.values
    nonempty = family.nonempty
    if not nonempty:
        raise EmptyDomain("F has no non-empty member to take a minimum over")
    for X in nonempty:
        if X not in values:
            raise HypothesisFailure(f"F has no value on member {X:#b}")
    fallback = min(values[X] for X in nonempty)
    ground = family.ground
    n = ground.size
    table = {}
    for x in ground.elements():
        b = bit(x)
        # best[X] = max F over members A with x in A inside X, None if no such A
        best: dict[ElementSet, Optional[Fraction]] = {}
        for X in ground.subsets():
            if not X & b:
                continue
            top = values.get(X) if X in family else None
            rest = X ^ b
            while rest:
                low = rest & -rest
                sub = best[X ^ low]
                if sub is not None and (top is None or sub > top):
                    top = sub
                rest ^= low
            best[X] = top
            table[(x, X)] = fallback if top is None else top
    assert len(table) == n << (n - 1)
    return LinkageFunction.from_table(ground, table)


def derive_G_F(F: SetFunction, family: SetFamily) -> SetFunction:
    _require_accessible(family)
    if not family.nonempty:
        return SetFunction(family, {})
    pi_F = derive_pi_F(F, family)
    return SetFunction(
        family,
        {X: min(pi_F(x, X) for x in elements_of(_ex(family, X))) for X in family.nonempty},
    )


def derive_F_pi(pi: LinkageFunction, family: SetFamily) -> SetFunction:
    """F_pi on the non-empty members; its ``empty_value`` is the global minimum of pi."""
    _require_accessible(family)
    values = {X: min(pi(x, X) for x in elements_of(_ex(family, X))) for X in family.nonempty}
    floor = min(pi(x, X) for x, X in pairs(pi.ground))
    return SetFunction(family, values, empty_value=floor)


def _first_difference(F: SetFunction, G: SetFunction, family: SetFamily):
    for X in family.nonempty:
        if F.values[X] != G.values[X]:
            return X
    return None


def check_proposition3(F: SetFunction, family: SetFamily) -> Verdict:
    """pi_F is a monotone linkage."""
    verdict = is_monotone_linkage(derive_pi_F(F, family))
    return Verdict("prop3", verdict.holds, verdict.witness)


def check_proposition4(F: SetFunction, family: SetFamily) -> Verdict:
    """G_F >= F on every non-empty member of an accessible family."""
    G = derive_G_F(F, family)
    for X in family.nonempty:
        if G.values[X] < F.values[X]:
            return Verdict("prop4", False, {"X": X, "F_value": F.values[X], "G_F_value": G.values[X]})
    return Verdict("prop4", True)


def check_theorem1(family: SetFamily, F: SetFunction) -> Verdict:
    """Whether G_F reproduces F. Compare the outcome with the chain property."""
    _require_accessible(family)
    qc = is_quasiconcave(F, family)
    if not qc:
        raise NotQuasiConcave(qc.describe(family.ground))
    G = derive_G_F(F, family)
    X = _first_difference(F, G, family)
    if X is None:
        return Verdict("G_F_equals_F", True)
    return Verdict("G_F_equals_F", False, {"X": X, "F_value": F.values[X], "G_F_value": G.values[X]})


def chain_gap(family: SetFamily) -> tuple[ElementSet, ElementSet]:
    """Members A strictly inside B with ex(B) inside A (A non-empty on accessible families)."""
    _require_accessible(family)
    verdict = has_chain_property(family)
    if verdict:
        raise ChainHolds("the family satisfies the chain property")
    return verdict.witness["X"], verdict.witness["Y"]


def thm1_counterexample(family: SetFamily) -> SetFunction:
    """A quasi-concave F with G_F != F on an accessible family lacking the chain property.

    F is the indicator of A for the canonical pair A < B with ex(B) inside A;
    then every extreme point of B sees A in its interval, so G_F(B) = 1 while
    F(B) = 0.
    """
    A, _ = chain_gap(family)
    return SetFunction.indicator(family, A)


def check_theorem2(family: SetFamily, pi: LinkageFunction) -> Verdict:
    """Quasi-concavity of F_pi. Compare the outcome with the heritage property."""
    _require_accessible(family)
    _require_monotone(pi)
    return is_quasiconcave(derive_F_pi(pi, family), family)


def heritage_gap(family: SetFamily) -> tuple[ElementSet, ElementSet, int]:
    _require_accessible(family)
    verdict = has_heritage(family)
    if verdict:
        raise HeritageHolds("the extreme point operator has the heritage property")
    w = verdict.witness
    return w["X"], w["Y"], w["element"]


def thm2_counterexample(family: SetFamily) -> LinkageFunction:
    """A monotone two-valued linkage whose F_pi is not quasi-concave.

    Keyed on the canonical heritage violation (A, B, a): pi is 1 at x == a and
    2 elsewhere, so F_pi(B) = 1 while F_pi(A) = F_pi(B - a) = 2.
    """
    _, _, a = heritage_gap(family)
    return LinkageFunction.keyed(family.ground, a, 1, 2)


def check_theorem3(family: SetFamily, pi: LinkageFunction) -> Verdict:
    """pi_F <= pi on (x, X) with X a member and x in ex(X), where F = F_pi."""
    _require_accessible(family)
    heritage = has_heritage(family)
    if not heritage:
        raise NoHeritage(heritage.describe(family.ground))
    _require_monotone(pi)
    F = derive_F_pi(pi, family)
    if not family.nonempty:
        return Verdict("thm3", True)
    pi_F = derive_pi_F(F, family)
    for X in family.members:
        for x in elements_of(_ex(family, X)):
            lhs, rhs = pi_F(x, X), pi(x, X)
            if lhs > rhs:
                return Verdict("thm3", False, {"x": x, "X": X, "pi_F_value": lhs, "pi_value": rhs})
    return Verdict("thm3", True)


def check_theorem4(family: SetFamily, pi1: LinkageFunction, pi2: LinkageFunction) -> Verdict:
    """min(pi1, pi2) determines the same F as pi1 and pi2 do."""
    _require_accessible(family)
    _require_monotone(pi1)
    _require_monotone(pi2)
    F1 = derive_F_pi(pi1, family)
    F2 = derive_F_pi(pi2, family)
    X = _first_difference(F1, F2, family)
    if X is not None:
        raise LinkagesDisagree(f"the two linkages define different functions (first at {X:#b})")
    meet = meet_linkage(pi1, pi2)
    if not is_monotone_linkage(meet):
        w = is_monotone_linkage(meet).witness
        return Verdict("thm4", False, {"reason": "meet not monotone", **w})
    G = derive_F_pi(meet, family)
    X = _first_difference(F1, G, family)
    if X is None:
        return Verdict("thm4", True)
    return Verdict("thm4", False, {"X": X, "F_value": F1.values[X], "meet_value": G.values[X]})


def check_proposition1(family: SetFamily) -> Verdict:
    """The chain property is invariant under complementation."""
    mine = has_chain_property(family)
    theirs = has_chain_property(complement_family(family))
    if mine.holds == theirs.holds:
        return Verdict("prop1", True)
    failing = mine if not mine else theirs
    side = "original" if not mine else "complement"
    return Verdict("prop1", False, {"system": side, **failing.witness})


def check_cover_identity(
    family: SetFamily, trials: int = 100, rng: Optional[random.Random] = None
) -> Verdict:
    """X is a cover of the union of any picks B^x in [x, X], x in ex(X).

    Holds on accessible chain systems. ``trials`` random selections per member.
    """
    _require_accessible(family)
    chain = has_chain_property(family)
    if not chain:
        raise HypothesisFailure(f"needs the chain property: {chain.describe(family.ground)}")
    rng = rng or random.Random(0)
    members = family.members
    checked: dict[tuple[ElementSet, ElementSet], bool] = {}
    for X in members:
        ex = elements_of(_ex(family, X))
        choices = []
        for x in ex:
            b = bit(x)
            choices.append([A for A in members if A & b and A & ~X == 0])
        for _ in range(trials):
            union = 0
            for options in choices:
                union |= rng.choice(options)
            key = (X, union)
            if key not in checked:
                checked[key] = X in covers(family, union)
            if not checked[key]:
                return Verdict("eq9", False, {"X": X, "union": union})
    return Verdict("eq9", True)


@dataclass
class DualityReport:
    instance: str
    ground: GroundSet
    checks: list[Verdict] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    details: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.checks)

    def add(self, claim: str, verdict: Verdict) -> None:
        self.checks.append(Verdict(claim, verdict.holds, verdict.witness))

    def skip(self, claim: str, reason: str) -> None:
        self.skipped.append((claim, reason))

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "holds": self.holds,
            "checks": [
                {"claim": v.property, "holds": v.holds, "witness": v.to_json(self.ground)["witness"]}
                for v in self.checks
            ],
            "skipped": [{"claim": c, "reason": r} for c, r in self.skipped],
            "details": self.details,
        }

    def to_text(self) -> str:
        lines = [f"instance: {self.instance}"]
        lines += [v.describe(self.ground) for v in self.checks]
        lines += [f"{c}: skipped ({r})" for c, r in self.skipped]
        lines += [f"  {d}" for d in self.details]
        lines.append("all checks hold" if self.holds else "SOME CHECKS FAIL")
        return "\n".join(lines)
