"""Exact-valued set functions and linkage functions.

All values are :class:`fractions.Fraction`. Linkages are evaluated on demand;
only the table kind stores values, and only the entries it was given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Union

from .core import (
    ElementSet,
    GroundSet,
    SetFamily,
    bit,
    elements_of,
    format_set,
    pairs,
    popcount,
    set_to_json,
)
from .errors import DomainMismatch, ElementNotInSet, GroundMismatch, MissingTableEntry, ParseError

Rational = Union[int, Fraction, str]


def rational(value: Rational) -> Fraction:
    """Parse ``3``, ``"3"``, ``"-3/4"`` or a Fraction; floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use 'p/q' strings")
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    return Fraction(value)


class SetFunction:
    """A total map from the non-empty members of a family to rationals.

    ``empty_value`` optionally assigns a value to the empty set.
    """

    __slots__ = ("family", "values", "empty_value")

    def __init__(
        self,
        family: SetFamily,
        values: Mapping[ElementSet, Rational],
        empty_value: Optional[Rational] = None,
    ):
        vals = {}
        for X, v in values.items():
            if X == 0:
                raise DomainMismatch("the empty set is valued through empty_value")
            if X not in family:
                raise DomainMismatch(f"{format_set(X, family.ground)} is not a member")
            vals[X] = v if type(v) is Fraction else rational(v)
        for X in family.nonempty:
            if X not in vals:
                raise DomainMismatch(f"no value for member {format_set(X, family.ground)}")
        self.family = family
        self.values = vals
        self.empty_value = None if empty_value is None else rational(empty_value)

    def __call__(self, X: ElementSet) -> Fraction:
        return self[X]

    def __getitem__(self, X: ElementSet) -> Fraction:
        try:
            return self.values[X]
        except KeyError:
            if X == 0 and self.empty_value is not None:
                return self.empty_value
            raise DomainMismatch(
                f"{format_set(X, self.family.ground)} is outside the domain"
            ) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.family == other.family and self.values == other.values

    def __repr__(self) -> str:
        g = self.family.ground
        body = ", ".join(f"{format_set(X, g)}: {v}" for X, v in sorted(self.values.items()))
        return f"SetFunction({{{body}}})"

    @classmethod
    def constant(cls, family: SetFamily, c: Rational) -> "SetFunction":
        c = rational(c)
        return cls(family, {X: c for X in family.nonempty})

    @classmethod
    def indicator(cls, family: SetFamily, A: ElementSet) -> "SetFunction":
        """1 on ``A``, 0 on every other non-empty member."""
        one, zero = Fraction(1), Fraction(0)
        return cls(family, {X: one if X == A else zero for X in family.nonempty})


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on vertices 1..n with rational edge weights."""

    vertices: GroundSet
    edges: tuple[tuple[int, int], ...]
    weights: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= self.vertices.size:
                    raise ValueError(f"vertex {w} out of range")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        weights = {}
        for (u, v), w in dict(self.weights).items():
            e = (min(u, v), max(u, v))
            if e not in seen:
                raise ValueError(f"weight given for non-edge {e}")
            weights[e] = rational(w)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "weights", weights)

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[int, int]], weights=None) -> "WeightedGraph":
        return cls(GroundSet(n), tuple(edges), dict(weights or {}))

    def weight(self, u: int, v: int) -> Fraction:
        e = (min(u, v), max(u, v))
        if e in self.weights:
            return self.weights[e]
        return Fraction(1) if e in self.edges else Fraction(0)

    def adjacency(self) -> dict[int, ElementSet]:
        adj = {v: 0 for v in self.vertices.elements()}
        for u, v in self.edges:
            adj[u] |= bit(v)
            adj[v] |= bit(u)
        return adj


class LinkageFunction:
    """pi(x, X) for x in X, one of three kinds.

    ``table``: explicit entries keyed by ``(x, X)`` plus an optional default.
    ``degree``: number of neighbours of x inside X.
    ``proximity``: sum of w(x, j) over j in X, with w(x, x) = 0.
    """

    KINDS = ("table", "degree", "proximity")

    def __init__(
        self,
        ground: GroundSet,
        kind: str,
        table: Optional[Mapping[tuple[int, ElementSet], Rational]] = None,
        default: Optional[Rational] = None,
        graph: Optional[WeightedGraph] = None,
    ):
        if kind not in self.KINDS:
            raise ValueError(f"unknown linkage kind {kind!r}")
        self.ground = ground
        self.kind = kind
        self.table: dict[tuple[int, ElementSet], Fraction] = {}
        self.default = None if default is None else rational(default)
        self.graph = graph
        self._eval: Callable[[int, ElementSet], Fraction]
        if kind == "table":
            for (x, X), v in (table or {}).items():
                if not ground.contains(X) or not X & bit(x):
                    raise ElementNotInSet(f"table entry ({x}, {format_set(X, ground)}) has x outside X")
                self.table[(x, X)] = v if type(v) is Fraction else rational(v)
            self._eval = self._eval_table
        else:
            if graph is None:
                raise ValueError(f"{kind} linkage needs a graph")
            if graph.vertices.size != ground.size:
                raise GroundMismatch("graph vertex count differs from the ground set")
            if kind == "degree":
                adj = graph.adjacency()
                self._eval = lambda x, X: Fraction(popcount(adj[x] & X))
            else:
                for w in graph.weights.values():
                    if w < 0:
                        raise ValueError("proximity linkage needs non-negative weights")
                near = {}
                for u, v in graph.edges:
                    near[(u, v)] = near[(v, u)] = graph.weight(u, v)
                self._eval = lambda x, X: sum(
                    (near.get((x, j), 0) for j in elements_of(X)), Fraction(0)
                )

    def _eval_table(self, x: int, X: ElementSet) -> Fraction:
        try:
            return self.table[(x, X)]
        except KeyError:
            if self.default is None:
                raise MissingTableEntry(
                    f"no table entry for ({x}, {format_set(X, self.ground)})"
                ) from None
            return self.default

    def __call__(self, x: int, X: ElementSet) -> Fraction:
        return self._eval(x, X)

    def __repr__(self) -> str:
        if self.kind == "table":
            return f"LinkageFunction(table, {len(self.table)} entries, default={self.default})"
        return f"LinkageFunction({self.kind}, n={self.ground.size})"

    def materialize(self) -> dict[tuple[int, ElementSet], Fraction]:
        """Every (x, X) -> value; n * 2^(n-1) entries."""
        return {(x, X): self._eval(x, X) for x, X in pairs(self.ground)}

    def equals(self, other: "LinkageFunction") -> bool:
        """Pointwise equality over every pair (x, X) with x in X."""
        if self.ground.size != other.ground.size:
            return False
        return all(self(x, X) == other(x, X) for x, X in pairs(self.ground))

    @classmethod
    def from_table(cls, ground: GroundSet | int, table, default=None) -> "LinkageFunction":
        if isinstance(ground, int):
            ground = GroundSet(ground)
        return cls(ground, "table", table=table, default=default)

    @classmethod
    def constant(cls, ground: GroundSet | int, c: Rational) -> "LinkageFunction":
        return cls.from_table(ground, {}, default=c)

    @classmethod
    def degree(cls, graph: WeightedGraph) -> "LinkageFunction":
        return cls(graph.vertices, "degree", graph=graph)

    @classmethod
    def proximity(cls, graph: WeightedGraph) -> "LinkageFunction":
        return cls(graph.vertices, "proximity", graph=graph)

    @classmethod
    def keyed(cls, ground: GroundSet | int, a: int, low: Rational = 1, high: Rational = 2) -> "LinkageFunction":
        """``low`` whenever x == a, ``high`` otherwise."""
        if isinstance(ground, int):
            ground = GroundSet(ground)
        b = bit(a)
        low = rational(low)
        table = {(a, X): low for X in ground.subsets() if X & b}
        return cls.from_table(ground, table, default=high)


def eval_linkage(pi: LinkageFunction, x: int, X: ElementSet) -> Fraction:
    if not X & bit(x):
        raise ElementNotInSet(f"{x} is not in {format_set(X, pi.ground)}")
    return pi(x, X)


def boolean_min_function(pi: LinkageFunction) -> SetFunction:
    """F(X) = min over x in X of pi(x, X), on every non-empty subset."""
    family = SetFamily.powerset(pi.ground)
    return SetFunction(
        family, {X: min(pi(x, X) for x in elements_of(X)) for X in family.nonempty}
    )


def meet_linkage(pi1: LinkageFunction, pi2: LinkageFunction) -> LinkageFunction:
    """Pointwise minimum, as a table."""
    if pi1.ground.size != pi2.ground.size:
        raise GroundMismatch("linkages live on different ground sets")
    table = {(x, X): min(pi1(x, X), pi2(x, X)) for x, X in pairs(pi1.ground)}
    return LinkageFunction.from_table(pi1.ground, table)


# JSON formats --------------------------------------------------------------


def _value(raw, where: str) -> Fraction:
    try:
        return rational(raw)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: bad rational {raw!r} (use an integer or 'p/q' string)") from None


def _members(tokens, ground: GroundSet, where: str) -> ElementSet:
    if not isinstance(tokens, list):
        raise ParseError(f"{where}: expected a list of elements, got {tokens!r}")
    try:
        idx = [ground.index_of(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"{where}: {exc}") from None
    if len(set(idx)) != len(idx):
        raise ParseError(f"{where}: repeated element in {tokens!r}")
    mask = 0
    for x in idx:
        mask |= bit(x)
    return mask


def parse_set_function(data: dict, family: SetFamily) -> SetFunction:
    """Read ``{"values": [{"set": [...], "value": "p/q"}, ...], "empty": "0"}``."""
    if not isinstance(data, dict) or not isinstance(data.get("values"), list):
        raise ParseError('set-function JSON needs a "values" list')
    values = {}
    for i, entry in enumerate(data["values"]):
        where = f"values[{i}]"
        if not isinstance(entry, dict) or "set" not in entry or "value" not in entry:
            raise ParseError(f'{where}: needs "set" and "value"')
        X = _members(entry["set"], family.ground, where)
        if X in values:
            raise ParseError(f"{where}: duplicate set {entry['set']!r}")
        values[X] = _value(entry["value"], where)
    empty = data.get("empty")
    try:
        return SetFunction(family, values, None if empty is None else _value(empty, "empty"))
    except DomainMismatch as exc:
        raise ParseError(str(exc)) from None


def set_function_to_json(F: SetFunction) -> dict:
    g = F.family.ground
    out = {
        "values": [
            {"set": set_to_json(X, g), "value": str(F.values[X])} for X in F.family.nonempty
        ]
    }
    if F.empty_value is not None:
        out["empty"] = str(F.empty_value)
    return out


def parse_graph(data: dict) -> WeightedGraph:
    """Read ``{"vertices": n | [labels], "edges": [[u, v], ...], "weights": {"u-v": "w"}}``."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise ParseError('graph JSON needs "vertices"')
    v = data["vertices"]
    try:
        ground = GroundSet(len(v), tuple(map(str, v))) if isinstance(v, list) else GroundSet(int(v))
        edges = []
        for i, e in enumerate(data.get("edges", [])):
            if not isinstance(e, list) or len(e) != 2:
                raise ValueError(f"edges[{i}] must be a pair")
            edges.append((ground.index_of(e[0]), ground.index_of(e[1])))
        weights = {}
        for key, w in (data.get("weights") or {}).items():
            u, _, t = str(key).partition("-")
            weights[(ground.index_of(u), ground.index_of(t))] = _value(w, f"weights[{key}]")
        return WeightedGraph(ground, tuple(edges), weights)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"graph: {exc}") from None


def graph_to_json(graph: WeightedGraph) -> dict:
    g = graph.vertices
    out = {
        "vertices": list(g.labels) if g.labels else g.size,
        "edges": [[u, v] for u, v in graph.edges],
    }
    if graph.weights:
        out["weights"] = {f"{u}-{v}": str(w) for (u, v), w in graph.weights.items()}
    return out


def parse_linkage(data: dict, ground: Optional[GroundSet] = None) -> LinkageFunction:
    """Read a table, degree or proximity linkage.

    Tables may carry their own ``"ground"``; otherwise ``ground`` must be given.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError('linkage JSON needs a "kind"')
    kind = data["kind"]
    if kind in ("degree", "proximity"):
        graph = parse_graph(data.get("graph"))
        if ground is not None and ground.size != graph.vertices.size:
            raise ParseError("linkage graph size differs from the ground set")
        try:
            return LinkageFunction(graph.vertices, kind, graph=graph)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if kind != "table":
        raise ParseError(f"unknown linkage kind {kind!r}")
    if "ground" in data:
        g = data["ground"]
        try:
            own = GroundSet(len(g), tuple(map(str, g))) if isinstance(g, list) else GroundSet(int(g))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"ground: {exc}") from None
        if ground is not None and own.size != ground.size:
            raise ParseError("linkage ground differs from the family's ground set")
        ground = own
    if ground is None:
        raise ParseError('table linkage needs a "ground" when no family is given')
    table = {}
    for i, entry in enumerate(data.get("entries", [])):
        where = f"entries[{i}]"
        if not isinstance(entry, dict) or not {"x", "set", "value"} <= entry.keys():
            raise ParseError(f'{where}: needs "x", "set" and "value"')
        try:
            x = ground.index_of(entry["x"])
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None
        X = _members(entry["set"], ground, where)
        if not X & bit(x):
            raise ParseError(f"{where}: x={entry['x']!r} is not in its set")
        if (x, X) in table:
            raise ParseError(f"{where}: duplicate entry")
        table[(x, X)] = _value(entry["value"], where)
    default = data.get("default")
    return LinkageFunction.from_table(ground, table, None if default is None else _value(default, "default"))


def linkage_to_json(pi: LinkageFunction) -> dict:
    g = pi.ground
    if pi.kind != "table":
        return {"kind": pi.kind, "graph": graph_to_json(pi.graph)}
    out = {"kind": "table", "ground": list(g.labels) if g.labels else g.size}
    if pi.default is not None:
        out["default"] = str(pi.default)
    out["entries"] = [
        {"x": g.label(x) if g.labels else x, "set": set_to_json(X, g), "value": str(v)}
        for (x, X), v in sorted(pi.table.items())
    ]
    return out
