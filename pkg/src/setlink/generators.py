"""Named fixtures, graph-derived families and exhaustive small-instance streams."""

from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from .core import ElementSet, GroundSet, SetFamily, bit, elements_of, popcount
from .errors import CapacityExceeded, EmptyFamily, UnknownFixture
from .functions import LinkageFunction, SetFunction, WeightedGraph, rational
from .properties import FILTERS, is_monotone_linkage, is_quasiconcave, quasiconcavity_constraints

FAMILY_CAP = 4
LINKAGE_CAP = 3
BUDGET = 10**7


def max_n(default: int) -> int:
    """Capacity cap on n, overridable through SETLINK_MAX_N."""
    raw = os.environ.get("SETLINK_MAX_N")
    return int(raw) if raw else default


def _fam(n: int, sets) -> SetFamily:
    return SetFamily.from_sets(n, sets)


def diamond_graph() -> WeightedGraph:
    # the 4-cycle 1-2-3-4-1
    return WeightedGraph.build(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def _pi_neq_piF() -> LinkageFunction:
    return LinkageFunction.from_table(2, {(2, 0b11): 2}, default=1)


def _bool2_nonqc() -> SetFunction:
    family = SetFamily.powerset(2)
    return SetFunction(family, {0b01: 1, 0b10: 1, 0b11: 0})


_FIXTURES: dict[str, Callable[[], object]] = {
    "acc_not_chain": lambda: _fam(3, [[], [1], [2], [2, 3], [1, 2, 3]]),
    "chain_not_acc": lambda: _fam(3, [[1], [3], [1, 2], [2, 3], [1, 2, 3]]),
    "fig2a": lambda: _fam(4, [[], [1], [2], [3], [1, 2], [2, 4], [3, 4], [1, 2, 3], [1, 2, 3, 4]]),
    "fig2b": lambda: _fam(4, [[], [1], [4], [1, 3], [3, 4], [1, 2, 3], [2, 3, 4], [1, 2, 3, 4]]),
    "diamond_graph": diamond_graph,
    "diamond_connected": lambda: connected_subgraph_family(diamond_graph()),
    "bool2_nonqc": _bool2_nonqc,
    "pi_neq_piF": _pi_neq_piF,
}

FIXTURE_NAMES = tuple(_FIXTURES)


def fixture(name: str):
    try:
        return _FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None


def is_connected(mask: ElementSet, adj: dict[int, ElementSet]) -> bool:
    if not mask:
        return False
    seen = mask & -mask
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        fresh = adj[low.bit_length()] & mask & ~seen
        seen |= fresh
        frontier |= fresh
    return seen == mask


def connected_subgraph_family(graph: WeightedGraph) -> SetFamily:
    """Vertex sets inducing connected subgraphs, plus the empty set."""
    adj = graph.adjacency()
    ground = graph.vertices
    return SetFamily(ground, [0] + [X for X in ground.subsets() if is_connected(X, adj)])


def _passes(family: SetFamily, checks) -> bool:
    for check in checks:
        try:
            if not check(family):
                return False
        except EmptyFamily:
            return False
    return True


def enumerate_families(
    n: int, filters: Sequence[Union[str, Callable]] = (), shard: tuple[int, int] = (0, 1)
) -> Iterator[SetFamily]:
    """Every family over an n-element ground set passing all ``filters``.

    Families are indexed by the integer whose bit S marks subset S as a member
    and yielded in ascending index order. ``shard=(i, k)`` keeps only indices
    congruent to i mod k.
    """
    if n < 1 or n > max_n(FAMILY_CAP):
        raise CapacityExceeded(f"family enumeration supports 1 <= n <= {max_n(FAMILY_CAP)}, got {n}")
    checks = [FILTERS[f] if isinstance(f, str) else f for f in filters]
    # accessibility and closure-type filters all need the empty set present
    needs_empty = any(f in ("accessible", "closure_space", "convex_geometry") for f in filters)
    ground = GroundSet(n)
    subsets = list(ground.subsets())
    i, k = shard
    for code in range(i, 1 << (1 << n), k):
        if needs_empty and not code & 1:
            continue
        family = SetFamily(ground, [S for S in subsets if code >> S & 1])
        if _passes(family, checks):
            yield family


def enumerate_set_functions(
    family: SetFamily, values: Iterable, quasiconcave_only: bool = False
) -> Iterator[SetFunction]:
    """Every assignment of ``values`` to the non-empty members, in product order."""
    vals = [rational(v) for v in values]
    domain = family.nonempty
    if len(vals) ** len(domain) > BUDGET:
        raise CapacityExceeded(
            f"{len(vals)}^{len(domain)} set functions exceeds the budget of {BUDGET}"
        )
    constraints = quasiconcavity_constraints(family) if quasiconcave_only else None
    for combo in itertools.product(vals, repeat=len(domain)):
        F = SetFunction(family, dict(zip(domain, combo)))
        if quasiconcave_only and not is_quasiconcave(F, family, constraints):
            continue
        yield F


def _monotone_rows(n: int, x: int, vals: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Monotone value rows for one element x over the sets containing x."""
    b = bit(x)
    keys = [X for X in range(1 << n) if X & b]
    pos = {X: i for i, X in enumerate(keys)}
    steps = [
        (pos[X], pos[X | bit(y)])
        for X in keys
        for y in range(1, n + 1)
        if not X & bit(y)
    ]
    rows = []
    for row in itertools.product(vals, repeat=len(keys)):
        if all(row[a] <= row[c] for a, c in steps):
            rows.append(row)
    return rows


def enumerate_monotone_linkages(ground: GroundSet | int, values: Iterable) -> Iterator[LinkageFunction]:
    """Every monotone table linkage with entries from ``values``.

    Yields the same linkages, in the same order, as filtering the full product
    of tables (keys ordered by x then X); monotonicity only couples entries
    sharing x, so the product is taken one row per element.
    """
    if isinstance(ground, int):
        ground = GroundSet(ground)
    n = ground.size
    vals = [rational(v) for v in values]
    if n > max_n(LINKAGE_CAP):
        raise CapacityExceeded(f"linkage enumeration supports n <= {max_n(LINKAGE_CAP)}, got {n}")
    if len(vals) ** (n << (n - 1)) > BUDGET and "SETLINK_MAX_N" not in os.environ:
        raise CapacityExceeded(f"{len(vals)}^{n << (n - 1)} candidate tables exceeds the budget")
    keys_per_x = [[X for X in range(1 << n) if X & bit(x)] for x in ground.elements()]
    rows_per_x = [_monotone_rows(n, x, vals) for x in ground.elements()]
    for combo in itertools.product(*rows_per_x):
        table = {}
        for x, keys, row in zip(ground.elements(), keys_per_x, combo):
            for X, v in zip(keys, row):
                table[(x, X)] = v
        yield LinkageFunction.from_table(ground, table)


def random_monotone_linkage(ground: GroundSet | int, values: Sequence, rng: random.Random) -> LinkageFunction:
    """A random monotone table: draw each entry, then lift it to the max over
    its one-smaller subsets so monotonicity holds by construction."""
    if isinstance(ground, int):
        ground = GroundSet(ground)
    vals = [rational(v) for v in values]
    table = {}
    order = sorted(ground.subsets(), key=popcount)
    for x in ground.elements():
        b = bit(x)
        for X in order:
            if not X & b:
                continue
            v = rng.choice(vals)
            for y in elements_of(X ^ b):
                below = table[(x, X ^ bit(y))]
                if below > v:
                    v = below
            table[(x, X)] = v
    pi = LinkageFunction.from_table(ground, table)
    assert is_monotone_linkage(pi)
    return pi


def random_graph(n: int, p: float, rng: random.Random) -> WeightedGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return WeightedGraph.build(n, edges)


def complete_graph(n: int) -> WeightedGraph:
    return WeightedGraph.build(n, itertools.combinations(range(1, n + 1), 2))


def path_graph(n: int) -> WeightedGraph:
    return WeightedGraph.build(n, [(i, i + 1) for i in range(1, n)])

