"""Exhaustive per-family claim checks over enumerated small set systems."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import SetFamily, family_to_json
from .duality import (
    check_cover_identity,
    check_proposition1,
    check_proposition3,
    check_proposition4,
    check_theorem2,
    check_theorem3,
    check_theorem4,
    derive_F_pi,
    derive_G_F,
    derive_pi_F,
    thm1_counterexample,
    thm2_counterexample,
)
from .errors import CapacityExceeded, InternalError
from .functions import LinkageFunction
from .generators import (
    enumerate_families,
    enumerate_monotone_linkages,
    enumerate_set_functions,
    random_monotone_linkage,
)
from .properties import (
    Verdict,
    has_chain_property,
    has_heritage,
    is_accessible,
    is_convex_geometry,
    is_quasiconcave,
)


def theorem1_on_family(family: SetFamily, values: Sequence = (0, 1, 2)) -> Verdict:
    """Chain property <=> G_F == F for every quasi-concave F with the given values."""
    chain = has_chain_property(family).holds
    diff = None
    for F in enumerate_set_functions(family, values, quasiconcave_only=True):
        G = derive_G_F(F, family)
        if G != F:
            diff = F
            break
    if chain == (diff is None):
        return Verdict("thm1", True)
    if diff is not None:
        return Verdict("thm1", False, {"chain": chain, "F": repr(diff)})
    return Verdict("thm1", False, {"chain": chain, "note": "no quasi-concave F separates G_F from F"})


def theorem2_on_family(family: SetFamily, linkages: Sequence[LinkageFunction]) -> Verdict:
    """Heritage <=> F_pi quasi-concave for every linkage in ``linkages``."""
    heritage = has_heritage(family).holds
    bad = None
    for pi in linkages:
        if not check_theorem2(family, pi):
            bad = pi
            break
    if heritage == (bad is None):
        return Verdict("thm2", True)
    if bad is not None:
        return Verdict("thm2", False, {"heritage": heritage, "pi": repr(sorted(bad.table.items()))})
    return Verdict("thm2", False, {"heritage": heritage, "note": "no linkage breaks quasi-concavity"})


def theorem1_converse(family: SetFamily) -> Verdict:
    F = thm1_counterexample(family)
    qc = is_quasiconcave(F, family)
    G = derive_G_F(F, family)
    if qc and G != F:
        return Verdict("thm1_converse", True)
    return Verdict("thm1_converse", False, {"F": repr(F), "quasiconcave": qc.holds})


def theorem2_converse(family: SetFamily) -> Verdict:
    pi = thm2_counterexample(family)
    qc = is_quasiconcave(derive_F_pi(pi, family), family)
    if not qc:
        return Verdict("thm2_converse", True)
    return Verdict("thm2_converse", False, {"pi": repr(pi), "note": "F_pi is quasi-concave"})


def semilattice_null(family: SetFamily, pi: LinkageFunction) -> Verdict:
    """Meeting pi with pi_F, where F = F_pi, must leave F_pi unchanged."""
    F = derive_F_pi(pi, family)
    if not family.nonempty:
        return Verdict("thm4", True)
    pi_F = derive_pi_F(F, family)
    return check_theorem4(family, pi, pi_F)


def linkage_universe(
    n: int, values: Sequence, samples: Optional[int], rng: random.Random
) -> list[LinkageFunction]:
    """All monotone tables with these values, or ``samples`` of them.

    Falls back to random monotone tables when exhaustive enumeration is over
    capacity.
    """
    try:
        universe = list(enumerate_monotone_linkages(n, values))
    except CapacityExceeded:
        if samples is None:
            raise
        return [random_monotone_linkage(n, values, rng) for _ in range(samples)]
    if samples is not None and samples < len(universe):
        return rng.sample(universe, samples)
    return universe


@dataclass
class SweepSummary:
    n: int
    filters: list[str]
    claim: str
    families: int = 0
    checked: int = 0
    skipped: int = 0
    failed: int = 0
    first_counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "filters": self.filters,
            "claim": self.claim,
            "families": self.families,
            "checked": self.checked,
            "skipped": self.skipped,
            "passed": self.checked - self.failed,
            "failed": self.failed,
            "first_counterexample": self.first_counterexample,
        }


CLAIMS = (
    "prop1", "prop2", "prop3", "prop4", "thm1", "thm1_converse",
    "thm2", "thm2_converse", "thm3", "thm4", "eq9",
)


def _family_checker(claim: str, n: int, samples: Optional[int], seed: int):
    """Return ``check(family) -> Verdict | None``; None means not applicable."""
    rng = random.Random(seed)

    def accessible(f):
        return bool(f.members) and is_accessible(f).holds

    def over_functions(check: Callable, values) -> Callable:
        def run(f):
            if not f.nonempty:
                return None
            for F in enumerate_set_functions(f, values):
                v = check(F, f)
                if not v:
                    return Verdict(claim, False, {**v.witness, "F": repr(F)})
            return Verdict(claim, True)
        return run

    if claim == "prop1":
        return lambda f: check_proposition1(f) if f.members else None
    if claim == "prop2":
        def prop2(f):
            try:
                is_convex_geometry(f)
            except InternalError as exc:
                return Verdict("prop2", False, {"error": str(exc)})
            return Verdict("prop2", True)
        return prop2
    if claim == "prop3":
        inner = over_functions(check_proposition3, (0, 1))
        return lambda f: inner(f) if accessible(f) else None
    if claim == "prop4":
        inner = over_functions(check_proposition4, (0, 1))
        return lambda f: inner(f) if accessible(f) else None
    if claim == "thm1":
        return lambda f: theorem1_on_family(f) if accessible(f) else None
    if claim == "thm1_converse":
        return lambda f: theorem1_converse(f) if accessible(f) and not has_chain_property(f) else None
    if claim == "thm2":
        universe = linkage_universe(n, (1, 2), samples, rng)
        return lambda f: theorem2_on_family(f, universe) if accessible(f) else None
    if claim == "thm2_converse":
        return lambda f: theorem2_converse(f) if accessible(f) and not has_heritage(f) else None
    if claim in ("thm3", "thm4"):
        universe = linkage_universe(n, (1, 2, 3), samples, rng)
        single = check_theorem3 if claim == "thm3" else semilattice_null

        def run(f):
            if not (accessible(f) and has_heritage(f)):
                return None
            for pi in universe:
                v = single(f, pi)
                if not v:
                    return Verdict(claim, False, {**v.witness, "pi": repr(sorted(pi.table.items()))})
            return Verdict(claim, True)
        return run
    if claim == "eq9":
        return lambda f: (
            check_cover_identity(f, 100, rng) if accessible(f) and has_chain_property(f) else None
        )
    raise ValueError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")


def sweep(
    n: int,
    filters: Sequence[str] = (),
    claim: Optional[str] = None,
    samples: Optional[int] = None,
    seed: int = 0,
) -> SweepSummary:
    """Enumerate families and tally the claim over those it applies to."""
    summary = SweepSummary(n=n, filters=list(filters), claim=claim or "none")
    check = _family_checker(claim, n, samples, seed) if claim else None
    for family in enumerate_families(n, filters):
        summary.families += 1
        if check is None:
            continue
        verdict = check(family)
        if verdict is None:
            summary.skipped += 1
            continue
        summary.checked += 1
        if not verdict:
            summary.failed += 1
            if summary.first_counterexample is None:
                summary.first_counterexample = {
                    "family": family_to_json(family),
                    "verdict": verdict.to_json(family.ground),
                }
    return summary
