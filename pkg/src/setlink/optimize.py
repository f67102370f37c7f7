"""Maximizing linkage-defined functions: exhaustive oracle and greedy peeling."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import ElementSet, GroundSet, SetFamily, elements_of, set_to_json
from .errors import EmptyDomain, NotMonotone
from .functions import LinkageFunction, SetFunction, boolean_min_function
from .properties import is_monotone_linkage


def brute_force_max(F: SetFunction, family: SetFamily) -> tuple[ElementSet, Fraction]:
    """Maximum of F over the non-empty members; ties go to the smallest member."""
    best = None
    best_value = None
    for X in family.nonempty:
        v = F[X]
        if best_value is None or v > best_value:
            best, best_value = X, v
    if best is None:
        raise EmptyDomain("no non-empty member to maximize over")
    return best, best_value


@dataclass(frozen=True)
class PeelingTrace:
    chain: tuple[ElementSet, ...]
    removed: tuple[int, ...]
    values: tuple[Fraction, ...]
    best_index: int
    ground: GroundSet

    @property
    def best(self) -> tuple[ElementSet, Fraction]:
        return self.chain[self.best_index], self.values[self.best_index]

    def to_json(self) -> dict:
        g = self.ground
        best, value = self.best
        return {
            "chain": [set_to_json(X, g) for X in self.chain],
            "removed": [g.label(x) if g.labels else x for x in self.removed],
            "values": [str(v) for v in self.values],
            "best_index": self.best_index,
            "best_set": set_to_json(best, g),
            "best_value": str(value),
        }


def peel(pi: LinkageFunction, check: bool = True) -> PeelingTrace:
    """Strip the weakest element (least pi(x, X), smallest index on ties)
    from the ground set one at a time, recording min pi along the way."""
    if check:
        verdict = is_monotone_linkage(pi)
        if not verdict:
            raise NotMonotone(verdict.describe(pi.ground))
    X = pi.ground.full
    chain, removed, values = [], [], []
    while X:
        weakest, low = None, None
        for x in elements_of(X):
            v = pi(x, X)
            if low is None or v < low:
                weakest, low = x, v
        chain.append(X)
        values.append(low)
        removed.append(weakest)
        X ^= 1 << (weakest - 1)
    top = max(values)
    return PeelingTrace(
        chain=tuple(chain),
        removed=tuple(removed),
        values=tuple(values),
        best_index=values.index(top),
        ground=pi.ground,
    )


def maximize_boolean(pi: LinkageFunction, check: bool = True) -> tuple[ElementSet, Fraction]:
    return peel(pi, check=check).best


def brute_force_boolean(pi: LinkageFunction) -> tuple[ElementSet, Fraction]:
    F = boolean_min_function(pi)
    return brute_force_max(F, F.family)
