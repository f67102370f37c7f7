from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from setlink.core import GroundSet, SetFamily, pairs, to_mask
from setlink.errors import (
    DomainMismatch,
    ElementNotInSet,
    GroundMismatch,
    MissingTableEntry,
    ParseError,
)
from setlink.functions import (
    LinkageFunction,
    SetFunction,
    WeightedGraph,
    boolean_min_function,
    eval_linkage,
    linkage_to_json,
    meet_linkage,
    parse_graph,
    parse_linkage,
    parse_set_function,
    rational,
    set_function_to_json,
)
from setlink.generators import diamond_graph, fixture, random_monotone_linkage
from setlink.properties import is_monotone_linkage

S = to_mask


@st.composite
def graphs(draw, max_n=5, weighted=False):
    n = draw(st.integers(1, max_n))
    possible = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(possible), unique=True)) if possible else []
    weights = {}
    if weighted:
        weights = {e: draw(st.fractions(min_value=0, max_value=10, max_denominator=7)) for e in edges}
    return WeightedGraph.build(n, edges, weights)


def test_rational_refuses_floats():
    assert rational("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


class TestSetFunction:
    def test_total_on_nonempty_members(self):
        fam = fixture("acc_not_chain")
        with pytest.raises(DomainMismatch):
            SetFunction(fam, {S([1]): 1})

    def test_rejects_non_member(self):
        fam = fixture("acc_not_chain")
        values = {X: 0 for X in fam.nonempty}
        values[S([1, 3])] = 1
        with pytest.raises(DomainMismatch):
            SetFunction(fam, values)

    def test_empty_value(self):
        fam = SetFamily.powerset(1)
        F = SetFunction(fam, {1: 3}, empty_value=-1)
        assert F[0] == -1 and F(1) == 3

    def test_json_round_trip(self):
        F = fixture("bool2_nonqc")
        assert parse_set_function(set_function_to_json(F), F.family) == F

    def test_json_rejects_missing_value(self):
        fam = SetFamily.powerset(1)
        with pytest.raises(ParseError):
            parse_set_function({"values": []}, fam)


class TestLinkageEvaluation:
    def test_degree_on_diamond(self):
        pi = LinkageFunction.degree(diamond_graph())
        assert pi(1, S([1, 2, 3])) == 1
        assert pi(3, S([3])) == 0

    def test_proximity_sum(self):
        g = WeightedGraph.build(3, [(1, 2), (1, 3)], {(1, 2): 3, (1, 3): 2})
        assert LinkageFunction.proximity(g)(1, S([1, 2, 3])) == 5

    def test_proximity_refuses_negative_weight(self):
        g = WeightedGraph.build(2, [(1, 2)], {(1, 2): -1})
        with pytest.raises(ValueError):
            LinkageFunction.proximity(g)

    def test_element_must_be_in_set(self):
        pi = LinkageFunction.constant(3, 1)
        with pytest.raises(ElementNotInSet):
            eval_linkage(pi, 1, S([2, 3]))

    def test_missing_table_entry(self):
        pi = LinkageFunction.from_table(2, {(1, 1): 1})
        with pytest.raises(MissingTableEntry):
            pi(2, S([2]))

    def test_keyed(self):
        pi = LinkageFunction.keyed(3, 2, 1, 5)
        assert pi(2, 0b111) == 1 and pi(1, 0b111) == 5

    def test_graph_validation(self):
        with pytest.raises(ValueError):
            WeightedGraph.build(2, [(1, 1)])
        with pytest.raises(ValueError):
            WeightedGraph.build(2, [(1, 2), (2, 1)])

    @given(graphs())
    def test_degree_is_monotone(self, g):
        assert is_monotone_linkage(LinkageFunction.degree(g))

    @given(graphs(weighted=True))
    def test_proximity_is_monotone(self, g):
        assert is_monotone_linkage(LinkageFunction.proximity(g))


class TestBooleanMin:
    def test_diamond(self):
        F = boolean_min_function(LinkageFunction.degree(diamond_graph()))
        assert F[0b1111] == 2
        assert F[S([1, 2, 3])] == 1

    def test_singleton(self):
        pi = fixture("pi_neq_piF")
        F = boolean_min_function(pi)
        assert F[S([2])] == pi(2, S([2]))


class TestMeet:
    def test_idempotent(self):
        pi = LinkageFunction.degree(diamond_graph())
        assert meet_linkage(pi, pi).equals(pi)

    def test_constants(self):
        m = meet_linkage(LinkageFunction.constant(3, 1), LinkageFunction.constant(3, 2))
        assert m.equals(LinkageFunction.constant(3, 1))

    def test_ground_mismatch(self):
        with pytest.raises(GroundMismatch):
            meet_linkage(LinkageFunction.constant(3, 1), LinkageFunction.constant(2, 1))

    @given(st.integers(1, 4), st.randoms(use_true_random=False))
    def test_semilattice_laws(self, n, rnd):
        a, b, c = (random_monotone_linkage(n, range(4), rnd) for _ in range(3))
        assert meet_linkage(a, b).equals(meet_linkage(b, a))
        assert meet_linkage(meet_linkage(a, b), c).equals(meet_linkage(a, meet_linkage(b, c)))
        assert is_monotone_linkage(meet_linkage(a, b))
        for x, X in pairs(GroundSet(n)):
            assert meet_linkage(a, b)(x, X) <= a(x, X)


class TestLinkageJson:
    def test_table_round_trip(self):
        pi = fixture("pi_neq_piF")
        assert parse_linkage(linkage_to_json(pi)).equals(pi)

    def test_degree_round_trip(self):
        pi = LinkageFunction.degree(diamond_graph())
        back = parse_linkage(linkage_to_json(pi))
        assert back.kind == "degree" and back.equals(pi)

    def test_weighted_graph(self):
        g = parse_graph({"vertices": 3, "edges": [[1, 2]], "weights": {"1-2": "3/2"}})
        assert g.weight(2, 1) == Fraction(3, 2)

    @pytest.mark.parametrize(
        "data",
        [
            {},
            {"kind": "mystery"},
            {"kind": "table"},
            {"kind": "table", "ground": 2, "entries": [{"x": 1, "set": [2], "value": 1}]},
            {"kind": "table", "ground": 2, "entries": [{"x": 1, "set": [1], "value": 0.5}]},
            {"kind": "degree", "graph": {"vertices": 2, "edges": [[1, 3]]}},
        ],
    )
    def test_rejects(self, data):
        with pytest.raises(ParseError):
            parse_linkage(data)
